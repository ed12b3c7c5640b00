#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "twodof/rational.hpp"

namespace twodof {

/// Univariate polynomial in the Laplace variable s with exact rational
/// coefficients, stored in ascending degree. The zero polynomial has no
/// coefficients and no numeric degree: callers test `is_zero()` before
/// asking for `degree()`.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rational> ascending);
    Poly(std::initializer_list<Rational> ascending);
    Poly(const Rational& constant);  // NOLINT: implicit scalar promotion
    Poly(long constant) : Poly(Rational(constant)) {}  // NOLINT

    static Poly s() { return Poly{Rational(0), Rational(1)}; }
    static Poly monomial(const Rational& c, int degree);
    /// s - root
    static Poly linear_root(const Rational& root);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    /// Throws std::domain_error for the zero polynomial.
    int degree() const;
    const Rational& lead() const;
    /// Coefficient of s^k (zero past the end).
    Rational coeff(int k) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Poly monic() const;
    Poly derivative() const;
    /// p(-s)
    Poly reflect() const;
    Poly pow(unsigned exponent) const;
    Poly scaled(const Rational& c) const;

    Rational eval(const Rational& x) const;
    std::complex<double> eval(std::complex<double> x) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Expanded form, e.g. "s^2-4*s+4"; re-parseable.
    std::string str() const;

  private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct PolyDivision {
    Poly quotient;
    Poly remainder;
};

/// a = b*quotient + remainder with deg(remainder) < deg(b).
/// Throws std::domain_error when b is the zero polynomial.
PolyDivision poly_divmod(const Poly& a, const Poly& b);

/// Exact division; throws std::domain_error if b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);

bool divides(const Poly& b, const Poly& a);

/// Monic gcd; throws std::domain_error when both inputs are zero.
Poly poly_gcd(const Poly& a, const Poly& b);

Poly poly_lcm(const Poly& a, const Poly& b);

/// Square-free decomposition p = c * prod f_k^k, returned as (f_k, k) with
/// every f_k monic, square-free and non-constant.
std::vector<std::pair<Poly, int>> square_free_decomposition(const Poly& p);

}  // namespace twodof
