#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twodof/matrix.hpp"
#include "twodof/poly.hpp"
#include "twodof/qmatrix.hpp"

namespace twodof {

using PolyMat = Matrix<Poly>;

/// Exact determinant by fraction-free (Bareiss) elimination over Q[s].
/// Throws std::invalid_argument for non-square input.
Poly polymat_det(const PolyMat& a);

/// Row Hermite form: u*a = h with u unimodular, h upper echelon with monic
/// pivots and every entry above a pivot of lower degree than the pivot.
struct HermiteForm {
    PolyMat h;
    PolyMat u;
    std::vector<std::size_t> pivot_cols;  // pivot column of each nonzero row of h
};
HermiteForm polymat_hermite(const PolyMat& a);

/// Nonzero constant determinant.
bool is_unimodular(const PolyMat& a);

/// Inverse of a unimodular matrix (polynomial); throws std::domain_error otherwise.
PolyMat unimodular_inverse(const PolyMat& a);

/// Largest entry degree, -1 for an all-zero matrix.
int max_degree(const PolyMat& a);

/// Column degrees; a zero column reports -1.
std::vector<int> column_degrees(const PolyMat& a);
std::vector<int> row_degrees(const PolyMat& a);

/// Matrix of the s^{delta_j} coefficients in each column j.
QMatrix highest_column_coefficients(const PolyMat& a);
QMatrix highest_row_coefficients(const PolyMat& a);
bool is_column_reduced(const PolyMat& a);
bool is_row_reduced(const PolyMat& a);

/// Coefficient matrix of s^k.
QMatrix coefficient_matrix(const PolyMat& a, int k);
QMatrix polymat_eval(const PolyMat& a, const Rational& s0);

/// Unimodular column operations v with a*v column reduced. Throws
/// std::domain_error when a is singular.
struct ColumnReduction {
    PolyMat reduced;
    PolyMat v;
};
ColumnReduction column_reduce(const PolyMat& a);

/// Normal rank over Q(s).
std::size_t polymat_rank(const PolyMat& a);

/// Every r x r minor of a (row-subset major order).
std::vector<Poly> minors(const PolyMat& a, std::size_t order);

std::string str(const PolyMat& a);

}  // namespace twodof
