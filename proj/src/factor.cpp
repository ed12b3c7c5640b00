#include "twodof/factor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

#include "twodof/diophantine.hpp"
#include "twodof/errors.hpp"
#include "twodof/format.hpp"
#include "twodof/roots.hpp"

namespace twodof {

namespace {

PolyMat divisor_matrix(const Rational& shift, const std::vector<int>& degrees) {
    const Poly base = Poly::s() + Poly(shift);
    PolyMat lam(degrees.size(), degrees.size());
    for (std::size_t j = 0; j < degrees.size(); ++j) lam(j, j) = base.pow(static_cast<unsigned>(std::max(degrees[j], 0)));
    return lam;
}

RatMat diagonal_inverse(const PolyMat& diag) {
    RatMat inv(diag.rows(), diag.cols());
    for (std::size_t j = 0; j < diag.rows(); ++j) inv(j, j) = RatFn(Poly(1), diag(j, j));
    return inv;
}

// Scale each column so the first nonzero entry of the highest column
// coefficient matrix of d is 1 (monic denominator in the scalar case).
void normalize_columns(PolyMat& n, PolyMat& d) {
    const QMatrix hc = highest_column_coefficients(d);
    for (std::size_t j = 0; j < d.cols(); ++j) {
        Rational c(0);
        for (std::size_t i = 0; i < hc.rows() && is_zero(c); ++i) c = hc(i, j);
        if (is_zero(c) || c == 1) continue;
        const Rational inv = Rational(1) / c;
        for (std::size_t i = 0; i < d.rows(); ++i) d(i, j) = d(i, j).scaled(inv);
        for (std::size_t i = 0; i < n.rows(); ++i) n(i, j) = n(i, j).scaled(inv);
    }
}

bool top_block_unimodular(const PolyMat& stacked, std::size_t size) {
    const HermiteForm hf = polymat_hermite(stacked);
    if (hf.pivot_cols.size() < size) return false;
    return is_unimodular(hf.h.block(0, 0, size, size));
}

std::vector<std::complex<double>> numeric_null_vectors(const Eigen::MatrixXcd& a) {
    // Right null vectors of a from the SVD.
    std::vector<std::complex<double>> flat;
    if (a.cols() == 0) return flat;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
        const double sigma = k < sv.size() ? sv(k) : 0.0;
        if (sigma > 1e-8 * scale) continue;
        for (Eigen::Index i = 0; i < a.cols(); ++i) flat.push_back(svd.matrixV()(i, k));
    }
    return flat;
}

enum class Side { kLeft, kRight };

void fill_directions(ZeroEntry& e, const PolyMat& m, Side side) {
    // Left null vectors of m are right null vectors of m^T.
    const PolyMat a = side == Side::kLeft ? m.transpose() : m;
    if (e.exact) {
        e.exact_directions = null_space(polymat_eval(a, *e.exact));
        for (const auto& v : e.exact_directions) {
            std::vector<std::complex<double>> c;
            for (const auto& x : v) c.emplace_back(x.get_d(), 0.0);
            e.directions.push_back(std::move(c));
        }
        return;
    }
    Eigen::MatrixXcd num(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            num(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j).eval(e.location);
    const auto flat = numeric_null_vectors(num);
    const std::size_t len = a.cols();
    for (std::size_t k = 0; len && k + len <= flat.size(); k += len)
        e.directions.emplace_back(flat.begin() + static_cast<long>(k), flat.begin() + static_cast<long>(k + len));
}

std::vector<ZeroEntry> roots_of(const Poly& p, const PolyMat& m, Side side) {
    std::vector<ZeroEntry> out;
    if (p.is_zero() || p.degree() == 0) return out;
    const RootFactorization rf = factor_rational_roots(p);
    for (const auto& [r, k] : rf.rational_roots) {
        ZeroEntry e;
        e.factor = Poly::linear_root(r);
        e.multiplicity = k;
        e.exact = r;
        e.location = {r.get_d(), 0.0};
        e.unstable = sgn(r) >= 0;
        fill_directions(e, m, side);
        out.push_back(std::move(e));
    }
    for (const auto& [f, k] : rf.residual_factors) {
        for (const auto& z : numeric_roots(f)) {
            ZeroEntry e;
            e.factor = f;
            e.multiplicity = k;
            e.location = z;
            e.unstable = z.real() > -1e-9;
            fill_directions(e, m, side);
            out.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace

std::vector<ZeroEntry> ZeroReport::unstable_zeros() const {
    std::vector<ZeroEntry> out;
    std::copy_if(zeros.begin(), zeros.end(), std::back_inserter(out), [](const auto& z) { return z.unstable; });
    return out;
}

std::vector<ZeroEntry> ZeroReport::unstable_poles() const {
    std::vector<ZeroEntry> out;
    std::copy_if(poles.begin(), poles.end(), std::back_inserter(out), [](const auto& z) { return z.unstable; });
    return out;
}

RightMFD right_coprime_mfd(const RatMat& p) {
    if (!ratmat_is_proper(p)) throw ImproperError("improper plant " + str(p));
    const std::size_t m = p.cols();
    std::vector<Poly> dens;
    for (std::size_t j = 0; j < m; ++j) dens.push_back(column_denominator(p, j));
    const PolyMat d0 = PolyMat::diagonal(dens);
    const PolyMat n0 = to_polymat(p * to_ratmat(d0));
    // [d0; n0] = W [R; 0] with R the greatest common right divisor.
    const HermiteForm hf = polymat_hermite(vstack(d0, n0));
    const RatMat r_inv = ratmat_inv(to_ratmat(hf.h.block(0, 0, m, m)));
    PolyMat d = to_polymat(to_ratmat(d0) * r_inv);
    PolyMat n = to_polymat(to_ratmat(n0) * r_inv);
    const ColumnReduction cr = column_reduce(d);
    d = cr.reduced;
    n = n * cr.v;
    normalize_columns(n, d);
    return {std::move(n), std::move(d)};
}

LeftMFD left_coprime_mfd(const RatMat& p) {
    const RightMFD t = right_coprime_mfd(p.transpose());
    return {t.d.transpose(), t.n.transpose()};
}

bool is_right_coprime(const PolyMat& n, const PolyMat& d) {
    if (!d.is_square() || n.cols() != d.cols())
        throw std::invalid_argument("is_right_coprime: dimension mismatch (" + n.shape() + ", " + d.shape() + ")");
    return top_block_unimodular(vstack(d, n), d.cols());
}

bool is_left_coprime(const PolyMat& dl, const PolyMat& nl) {
    if (!dl.is_square() || nl.rows() != dl.rows())
        throw std::invalid_argument("is_left_coprime: dimension mismatch (" + dl.shape() + ", " + nl.shape() + ")");
    return is_right_coprime(nl.transpose(), dl.transpose());
}

RatMat plant_of(const RightMFD& mfd) { return to_ratmat(mfd.n) * ratmat_inv(to_ratmat(mfd.d)); }

RatMat plant_of(const LeftMFD& mfd) { return ratmat_inv(to_ratmat(mfd.dl)) * to_ratmat(mfd.nl); }

RatMat plant_of(const StableMFD& mfd) { return mfd.nprime * ratmat_inv(mfd.dprime); }

StableMFD stable_mfd(const RightMFD& mfd, const Rational& shift) {
    if (sgn(shift) <= 0) throw std::invalid_argument("stable_mfd: shift must be positive, got " + format(shift));
    if (!is_column_reduced(mfd.d)) throw std::domain_error("stable_mfd: denominator " + str(mfd.d) + " is not column reduced");
    const std::vector<int> deg = column_degrees(mfd.d);
    StableMFD out;
    out.base = mfd;
    out.shift = shift;
    out.divisor = divisor_matrix(shift, deg);
    const RatMat lam_inv = diagonal_inverse(out.divisor);
    out.nprime = to_ratmat(mfd.n) * lam_inv;
    out.dprime = to_ratmat(mfd.d) * lam_inv;

    // Witness: a*d + b*n = (s+shift)^k * divisor with deg a, b <= k, so that
    // v = a/(s+shift)^k and u = b/(s+shift)^k are proper and stable.
    const Poly base = Poly::s() + Poly(shift);
    const Poly det = polymat_det(mfd.d);
    const int limit = det.degree() + *std::max_element(deg.begin(), deg.end()) + 2;
    for (int k = 0; k <= limit; ++k) {
        const Poly scale = base.pow(static_cast<unsigned>(k));
        const auto sol = solve_left_combination({mfd.d, mfd.n}, scale * out.divisor, k);
        if (!sol) continue;
        const RatFn inv_scale(Poly(1), scale);
        out.v = inv_scale * to_ratmat((*sol)[0]);
        out.u = inv_scale * to_ratmat((*sol)[1]);
        return out;
    }
    throw std::domain_error("stable_mfd: no RH-infinity Bezout witness; factors are not right coprime");
}

StableLeftMFD stable_left_mfd(const LeftMFD& mfd, const Rational& shift) {
    if (sgn(shift) <= 0) throw std::invalid_argument("stable_left_mfd: shift must be positive, got " + format(shift));
    if (!is_row_reduced(mfd.dl)) throw std::domain_error("stable_left_mfd: denominator is not row reduced");
    StableLeftMFD out;
    out.base = mfd;
    out.shift = shift;
    out.divisor = divisor_matrix(shift, row_degrees(mfd.dl));
    const RatMat lam_inv = diagonal_inverse(out.divisor);
    out.dlprime = lam_inv * to_ratmat(mfd.dl);
    out.nlprime = lam_inv * to_ratmat(mfd.nl);
    return out;
}

ZeroReport zeros_and_poles(const RightMFD& mfd) {
    ZeroReport rep;
    rep.normal_rank = polymat_rank(mfd.n);
    Poly g;
    if (rep.normal_rank > 0) {
        for (const auto& minor : minors(mfd.n, rep.normal_rank))
            if (!minor.is_zero()) g = g.is_zero() ? minor.monic() : poly_gcd(g, minor);
    }
    rep.zero_polynomial = g.is_zero() ? Poly(1) : g;
    rep.pole_polynomial = polymat_det(mfd.d).monic();
    rep.zeros = roots_of(rep.zero_polynomial, mfd.n, Side::kLeft);
    rep.poles = roots_of(rep.pole_polynomial, mfd.d, Side::kRight);
    return rep;
}

}  // namespace twodof
