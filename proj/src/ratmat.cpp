#include "twodof/ratmat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "twodof/format.hpp"

namespace twodof {

RatMat to_ratmat(const PolyMat& a) {
    return a.map([](const Poly& p) { return RatFn(p); });
}

RatMat to_ratmat(const QMatrix& a) {
    RatMat m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = RatFn(a(i, j));
    return m;
}

PolyMat to_polymat(const RatMat& a) {
    return a.map([](const RatFn& f) {
        if (!f.is_polynomial()) throw std::domain_error("to_polymat: entry " + format(f) + " is not a polynomial");
        return f.num().scaled(Rational(1) / f.den().lead());
    });
}

RatMat ratmat_mul(const RatMat& a, const RatMat& b) { return a * b; }
RatMat ratmat_add(const RatMat& a, const RatMat& b) { return a + b; }
RatMat ratmat_sub(const RatMat& a, const RatMat& b) { return a - b; }

namespace {

// Pivot choice: nonzero entry of smallest total degree keeps intermediate
// fractions small.
std::size_t choose_pivot(const RatMat& m, std::size_t col, std::size_t from) {
    std::size_t best = m.rows();
    int best_size = 0;
    for (std::size_t i = from; i < m.rows(); ++i) {
        const RatFn& f = m(i, col);
        if (f.is_zero()) continue;
        const int size = f.num().degree() + f.den().degree();
        if (best == m.rows() || size < best_size) {
            best = i;
            best_size = size;
        }
    }
    return best;
}

}  // namespace

RatMat ratmat_inv(const RatMat& a) {
    if (!a.is_square()) throw std::invalid_argument("inverse of a non-square " + a.shape() + " rational matrix");
    const std::size_t n = a.rows();
    RatMat m = a;
    RatMat inv = RatMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t p = choose_pivot(m, c, c);
        if (p == n) throw std::domain_error("inverse of a singular rational matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(p, j), m(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const RatFn pinv = m(c, c).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            if (!m(c, j).is_zero()) m(c, j) *= pinv;
            if (!inv(c, j).is_zero()) inv(c, j) *= pinv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c).is_zero()) continue;
            const RatFn f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
                if (!inv(c, j).is_zero()) inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

RatFn ratmat_det(const RatMat& a) {
    if (!a.is_square()) throw std::invalid_argument("determinant of a non-square " + a.shape() + " rational matrix");
    const std::size_t n = a.rows();
    RatMat m = a;
    RatFn det(1);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t p = choose_pivot(m, c, c);
        if (p == n) return RatFn();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        const RatFn pinv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            const RatFn f = m(i, c) * pinv;
            for (std::size_t j = c; j < n; ++j)
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Evaluation ratmat_eval(const RatMat& a, const Rational& s0) {
    Evaluation out;
    QMatrix v(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            auto x = a(i, j).eval(s0);
            if (x)
                v(i, j) = *x;
            else
                out.poles.emplace_back(i, j);
        }
    if (out.poles.empty()) out.value = std::move(v);
    return out;
}

bool ratmat_is_proper(const RatMat& a) {
    return std::all_of(a.entries().begin(), a.entries().end(), [](const RatFn& f) { return f.is_proper(); });
}

bool ratmat_is_strictly_proper(const RatMat& a) {
    return std::all_of(a.entries().begin(), a.entries().end(), [](const RatFn& f) { return f.is_strictly_proper(); });
}

QMatrix ratmat_value_at_infinity(const RatMat& a) {
    QMatrix v(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) v(i, j) = a(i, j).value_at_infinity();
    return v;
}

int min_relative_degree(const RatMat& a) {
    int rd = kInfiniteRelativeDegree;
    for (const auto& f : a.entries()) rd = std::min(rd, f.relative_degree());
    return rd;
}

Poly column_denominator(const RatMat& a, std::size_t j) {
    Poly l(1);
    for (std::size_t i = 0; i < a.rows(); ++i) l = poly_lcm(l, a(i, j).den());
    return l;
}

std::string str(const RatMat& a) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << format(a(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace twodof
