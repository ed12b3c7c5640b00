#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "twodof/poly.hpp"

namespace twodof {

/// Numerical roots (with multiplicity) from the companion-matrix eigenvalues,
/// each polished by Newton iteration on the exact coefficients.
std::vector<std::complex<double>> numeric_roots(const Poly& p);

/// Exact partial factorization p = lead * prod (s - r)^k * prod f^k where the
/// r are the rational roots and each remaining f is monic, square-free and
/// free of rational roots.
struct RootFactorization {
    Rational lead;
    std::vector<std::pair<Rational, int>> rational_roots;
    std::vector<std::pair<Poly, int>> residual_factors;
};
RootFactorization factor_rational_roots(const Poly& p);

}  // namespace twodof
