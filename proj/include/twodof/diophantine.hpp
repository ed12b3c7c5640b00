#pragma once

#include <optional>
#include <vector>

#include "twodof/polymat.hpp"

namespace twodof {

/// Solve sum_k A_k * F_k = rhs for polynomial matrices A_k whose entries have
/// degree <= degree_bound, by equating coefficients of every power of s.
/// Each F_k is r_k x c and rhs is q x c; A_k is q x r_k. Returns a particular
/// solution (free coefficients zero) or nullopt when the system is
/// inconsistent at this bound.
std::optional<std::vector<PolyMat>> solve_left_combination(const std::vector<PolyMat>& factors, const PolyMat& rhs,
                                                           int degree_bound);

/// Scalar version: a*f + b*g = rhs with deg a <= bound_a, deg b <= bound_b.
std::optional<std::pair<Poly, Poly>> solve_scalar_combination(const Poly& f, int bound_a, const Poly& g, int bound_b,
                                                             const Poly& rhs);

}  // namespace twodof
