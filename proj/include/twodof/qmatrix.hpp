#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twodof/rational.hpp"

namespace twodof {

/// Dense matrix of exact rationals. Used for coefficient-matching linear
/// systems, evaluated transfer matrices and constant gains.
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);
    QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major);
    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QMatrix transpose() const;
    bool is_zero() const;

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend bool operator==(const QMatrix& a, const QMatrix& b);
    friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

    std::string str() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    QMatrix reduced;                   // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

RowEchelon rref(QMatrix a);
std::size_t rank(const QMatrix& a);
Rational determinant(QMatrix a);
/// Throws std::domain_error when singular.
QMatrix inverse(const QMatrix& a);
/// A particular solution of A x = b (free variables zero), or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b);
/// Basis of the right null space {x : A x = 0}.
std::vector<std::vector<Rational>> null_space(const QMatrix& a);

}  // namespace twodof
