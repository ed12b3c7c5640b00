#include "twodof/qmatrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace twodof {

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("QMatrix: entry count does not match shape");
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_)
        if (!twodof::is_zero(x)) return false;
    return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("QMatrix product: dimension mismatch");
    QMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (twodof::is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("QMatrix sum: dimension mismatch");
    QMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("QMatrix difference: dimension mismatch");
    QMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string QMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

RowEchelon rref(QMatrix a) {
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && is_zero(a(p, c))) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        const Rational inv = Rational(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || is_zero(a(i, c))) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(a);
    return out;
}

std::size_t rank(const QMatrix& a) { return rref(a).pivots.size(); }

Rational determinant(QMatrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a(p, c))) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(a(i, c))) continue;
            const Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

QMatrix inverse(const QMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = rref(std::move(aug));
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("inverse of a singular matrix");
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

std::optional<std::vector<Rational>> solve(const QMatrix& a, const std::vector<Rational>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RowEchelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    std::vector<Rational> x(a.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
    return x;
}

std::vector<std::vector<Rational>> null_space(const QMatrix& a) {
    RowEchelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(a.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace twodof
