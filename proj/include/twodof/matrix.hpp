#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twodof {

/// Fixed-shape row-major matrix over a ring-like element type. The shape is
/// set at construction and never changes.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> row_major)
        : rows_(rows), cols_(cols), data_(std::move(row_major)) {
        if (data_.size() != rows * cols) throw std::invalid_argument("matrix: entry count does not match shape");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix scalar(const T& x) { return Matrix(1, 1, {x}); }
    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T>& entries() const { return data_; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
        if (row0 + nrows > rows_ || col0 + ncols > cols_) throw std::out_of_range("matrix block out of range");
        Matrix b(nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
        return b;
    }

    Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

    /// Elementwise map into another element type.
    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        return out;
    }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.data_) x = -x;
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b, "sum");
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b, "difference");
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
        return c;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product: dimension mismatch (" + a.shape() + " * " + b.shape() + ")");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix c = a;
        for (auto& x : c.data_) x = s * x;
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    void require_same_shape(const Matrix& b, const char* what) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument(std::string("matrix ") + what + ": dimension mismatch (" + shape() + " vs " +
                                        b.shape() + ")");
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// [a; b]
template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column count mismatch");
    Matrix<T> c(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

/// [a, b]
template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    return vstack(a.transpose(), b.transpose()).transpose();
}

}  // namespace twodof
