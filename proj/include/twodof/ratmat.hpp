#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twodof/matrix.hpp"
#include "twodof/polymat.hpp"
#include "twodof/qmatrix.hpp"
#include "twodof/ratfn.hpp"

namespace twodof {

using RatMat = Matrix<RatFn>;

RatMat to_ratmat(const PolyMat& a);
RatMat to_ratmat(const QMatrix& a);
/// Throws std::domain_error if some entry is not a polynomial.
PolyMat to_polymat(const RatMat& a);

RatMat ratmat_mul(const RatMat& a, const RatMat& b);
RatMat ratmat_add(const RatMat& a, const RatMat& b);
RatMat ratmat_sub(const RatMat& a, const RatMat& b);
/// Gauss-Jordan over Q(s). Throws std::invalid_argument for non-square
/// input and std::domain_error for a singular matrix.
RatMat ratmat_inv(const RatMat& a);
RatFn ratmat_det(const RatMat& a);

/// Entrywise evaluation. `value` is empty iff some entry has a pole at s0;
/// the offending (row, col) positions are listed in `poles`.
struct Evaluation {
    std::optional<QMatrix> value;
    std::vector<std::pair<std::size_t, std::size_t>> poles;
    bool has_pole() const { return !poles.empty(); }
};
Evaluation ratmat_eval(const RatMat& a, const Rational& s0);

bool ratmat_is_proper(const RatMat& a);
bool ratmat_is_strictly_proper(const RatMat& a);
/// Entrywise limit at infinity; throws std::domain_error if improper.
QMatrix ratmat_value_at_infinity(const RatMat& a);
/// Smallest entry relative degree (kInfiniteRelativeDegree for the zero matrix).
int min_relative_degree(const RatMat& a);

/// Monic least common multiple of the denominators in column j.
Poly column_denominator(const RatMat& a, std::size_t j);

std::string str(const RatMat& a);

}  // namespace twodof
