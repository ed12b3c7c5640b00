#pragma once

#include <limits>
#include <optional>
#include <string>

#include "twodof/poly.hpp"

namespace twodof {

/// Relative degree reported for the zero rational function.
inline constexpr int kInfiniteRelativeDegree = std::numeric_limits<int>::max();

/// Reduced rational function num/den: gcd(num, den) = 1 and den monic, so
/// two RatFn values are equal iff their representations are identical.
class RatFn {
  public:
    RatFn() : den_(1) {}
    RatFn(const Poly& num);  // NOLINT: polynomials embed in rational functions
    RatFn(const Rational& c) : RatFn(Poly(c)) {}  // NOLINT
    RatFn(long c) : RatFn(Poly(c)) {}            // NOLINT
    /// Throws std::domain_error when den is zero.
    RatFn(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Value of a constant rational function; throws std::domain_error otherwise.
    Rational constant_value() const;

    /// deg(den) - deg(num), or kInfiniteRelativeDegree for zero.
    int relative_degree() const;
    bool is_proper() const { return relative_degree() >= 0; }
    bool is_strictly_proper() const { return relative_degree() > 0; }
    /// Limit as s -> infinity; only meaningful for proper functions.
    Rational value_at_infinity() const;

    /// Throws std::domain_error for the zero function.
    RatFn inverse() const;

    /// nullopt when s0 is a pole.
    std::optional<Rational> eval(const Rational& s0) const;

    RatFn operator-() const;
    RatFn& operator+=(const RatFn& rhs);
    RatFn& operator-=(const RatFn& rhs);
    RatFn& operator*=(const RatFn& rhs);
    RatFn& operator/=(const RatFn& rhs);
    friend RatFn operator+(RatFn a, const RatFn& b) { return a += b; }
    friend RatFn operator-(RatFn a, const RatFn& b) { return a -= b; }
    friend RatFn operator*(RatFn a, const RatFn& b) { return a *= b; }
    friend RatFn operator/(RatFn a, const RatFn& b) { return a /= b; }
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

  private:
    struct Canonical {};
    RatFn(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    Poly num_;
    Poly den_;
};

/// Relative degree of a; kInfiniteRelativeDegree for zero.
inline int relative_degree(const RatFn& a) { return a.relative_degree(); }

}  // namespace twodof
