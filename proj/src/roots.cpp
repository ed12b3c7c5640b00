#include "twodof/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace twodof {

namespace {

std::complex<double> newton_polish(const Poly& p, const Poly& dp, std::complex<double> z) {
    for (int it = 0; it < 60; ++it) {
        const std::complex<double> f = p.eval(z);
        const std::complex<double> df = dp.eval(z);
        if (std::abs(f) < 1e-12 || std::abs(df) == 0.0) break;
        const std::complex<double> step = f / df;
        z -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

}  // namespace

std::vector<std::complex<double>> numeric_roots(const Poly& p) {
    if (p.is_zero() || p.degree() == 0) return {};
    const Poly m = p.monic();
    const int n = m.degree();
    if (n == 1) return {std::complex<double>(-m.coeff(0).get_d(), 0.0)};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -m.coeff(i).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<std::complex<double>> roots;
    roots.reserve(static_cast<std::size_t>(n));
    const Poly dm = m.derivative();
    for (int i = 0; i < n; ++i) roots.push_back(newton_polish(m, dm, solver.eigenvalues()(i)));
    std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    return roots;
}

RootFactorization factor_rational_roots(const Poly& p) {
    RootFactorization out;
    if (p.is_zero()) return out;
    out.lead = p.lead();
    // A rational root a/b of the primitive integer form has b | leading
    // coefficient L, so L * root is an integer: round it and test exactly.
    for (auto [f, k] : square_free_decomposition(p)) {
        Poly rest = f;
        mpz_class lcm_den = 1;
        for (const auto& c : f.coeffs()) lcm_den = lcm(lcm_den, mpz_class(c.get_den()));
        const Rational lead_int = f.lead() * Rational(lcm_den);
        for (const auto& z : numeric_roots(f)) {
            if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z.real()))) continue;
            const double scaled = z.real() * lead_int.get_d();
            if (!std::isfinite(scaled)) continue;
            Rational candidate{mpz_class(static_cast<long>(std::llround(scaled))), mpz_class(lead_int.get_num())};
            candidate.canonicalize();
            if (rest.is_constant() || !is_zero(rest.eval(candidate))) continue;
            rest = exact_div(rest, Poly::linear_root(candidate));
            out.rational_roots.emplace_back(candidate, k);
        }
        if (!rest.is_constant()) out.residual_factors.emplace_back(rest.monic(), k);
    }
    std::sort(out.rational_roots.begin(), out.rational_roots.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
}

}  // namespace twodof
