#include "twodof/polymat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace twodof {

namespace {

void swap_rows(PolyMat& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// row_i -= q * row_r
void subtract_row_multiple(PolyMat& m, std::size_t i, std::size_t r, const Poly& q) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= q * m(r, j);
}

void scale_row(PolyMat& m, std::size_t r, const Rational& c) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j).scaled(c);
}

}  // namespace

Poly polymat_det(const PolyMat& a) {
    if (!a.is_square()) throw std::invalid_argument("determinant of a non-square " + a.shape() + " matrix");
    const std::size_t n = a.rows();
    if (n == 0) return Poly(1);
    PolyMat m = a;
    bool negate = false;
    Poly prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return Poly{};
            swap_rows(m, p, k);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
            m(i, k) = Poly{};
        }
        prev = m(k, k);
    }
    Poly det = m(n - 1, n - 1);
    return negate ? -det : det;
}

HermiteForm polymat_hermite(const PolyMat& a) {
    PolyMat h = a;
    PolyMat u = PolyMat::identity(a.rows());
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        bool found = false;
        for (;;) {
            // Lowest-degree nonzero entry at or below row r; ties go to the upper row.
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i) {
                if (h(i, c).is_zero()) continue;
                if (best == h.rows() || h(i, c).degree() < h(best, c).degree()) best = i;
            }
            if (best == h.rows()) break;
            found = true;
            swap_rows(h, r, best);
            swap_rows(u, r, best);
            bool cleared = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c).is_zero()) continue;
                const Poly q = poly_divmod(h(i, c), h(r, c)).quotient;
                subtract_row_multiple(h, i, r, q);
                subtract_row_multiple(u, i, r, q);
                if (!h(i, c).is_zero()) cleared = false;
            }
            if (cleared) break;
        }
        if (!found) continue;
        const Rational inv = Rational(1) / h(r, c).lead();
        scale_row(h, r, inv);
        scale_row(u, r, inv);
        for (std::size_t i = 0; i < r; ++i) {
            if (h(i, c).is_zero()) continue;
            const Poly q = poly_divmod(h(i, c), h(r, c)).quotient;
            if (q.is_zero()) continue;
            subtract_row_multiple(h, i, r, q);
            subtract_row_multiple(u, i, r, q);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(h), std::move(u), std::move(pivots)};
}

bool is_unimodular(const PolyMat& a) {
    if (!a.is_square()) return false;
    const Poly d = polymat_det(a);
    return !d.is_zero() && d.degree() == 0;
}

PolyMat unimodular_inverse(const PolyMat& a) {
    if (!a.is_square()) throw std::invalid_argument("unimodular_inverse: non-square matrix");
    HermiteForm hf = polymat_hermite(a);
    if (hf.h != PolyMat::identity(a.rows())) throw std::domain_error("unimodular_inverse: matrix is not unimodular");
    return hf.u;
}

int max_degree(const PolyMat& a) {
    int d = -1;
    for (const auto& p : a.entries())
        if (!p.is_zero()) d = std::max(d, p.degree());
    return d;
}

std::vector<int> column_degrees(const PolyMat& a) {
    std::vector<int> d(a.cols(), -1);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) d[j] = std::max(d[j], a(i, j).degree());
    return d;
}

std::vector<int> row_degrees(const PolyMat& a) { return column_degrees(a.transpose()); }

QMatrix highest_column_coefficients(const PolyMat& a) {
    const auto deg = column_degrees(a);
    QMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (deg[j] >= 0) m(i, j) = a(i, j).coeff(deg[j]);
    return m;
}

QMatrix highest_row_coefficients(const PolyMat& a) { return highest_column_coefficients(a.transpose()).transpose(); }

bool is_column_reduced(const PolyMat& a) {
    if (!a.is_square()) return false;
    return !is_zero(determinant(highest_column_coefficients(a)));
}

bool is_row_reduced(const PolyMat& a) { return is_column_reduced(a.transpose()); }

QMatrix coefficient_matrix(const PolyMat& a, int k) {
    QMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).coeff(k);
    return m;
}

QMatrix polymat_eval(const PolyMat& a, const Rational& s0) {
    QMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).eval(s0);
    return m;
}

ColumnReduction column_reduce(const PolyMat& a) {
    if (!a.is_square()) throw std::invalid_argument("column_reduce: non-square matrix");
    if (polymat_det(a).is_zero()) throw std::domain_error("column_reduce: singular matrix");
    PolyMat d = a;
    PolyMat v = PolyMat::identity(a.cols());
    for (;;) {
        const QMatrix hc = highest_column_coefficients(d);
        const auto kernel = null_space(hc);
        if (kernel.empty()) break;
        const auto& alpha = kernel.front();
        const auto deg = column_degrees(d);
        std::size_t target = d.cols();
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (!is_zero(alpha[j]) && (target == d.cols() || deg[j] > deg[target])) target = j;
        // col_target <- sum_j (alpha_j / alpha_target) s^{deg_target - deg_j} col_j lowers deg_target.
        const Rational base = alpha[target];
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (j == target || is_zero(alpha[j])) continue;
            const Poly mult = Poly::monomial(alpha[j] / base, deg[target] - deg[j]);
            for (std::size_t i = 0; i < d.rows(); ++i) d(i, target) += mult * d(i, j);
            for (std::size_t i = 0; i < v.rows(); ++i) v(i, target) += mult * v(i, j);
        }
    }
    return {std::move(d), std::move(v)};
}

std::size_t polymat_rank(const PolyMat& a) { return polymat_hermite(a).pivot_cols.size(); }

namespace {

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    for (;;) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::vector<Poly> minors(const PolyMat& a, std::size_t order) {
    std::vector<Poly> out;
    if (order == 0) return {Poly(1)};
    std::vector<std::vector<std::size_t>> rsets, csets;
    combinations(a.rows(), order, rsets);
    combinations(a.cols(), order, csets);
    for (const auto& rs : rsets)
        for (const auto& cs : csets) {
            PolyMat sub(order, order);
            for (std::size_t i = 0; i < order; ++i)
                for (std::size_t j = 0; j < order; ++j) sub(i, j) = a(rs[i], cs[j]);
            out.push_back(polymat_det(sub));
        }
    return out;
}

std::string str(const PolyMat& a) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << a(i, j).str();
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace twodof
