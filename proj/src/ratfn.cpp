#include "twodof/ratfn.hpp"

#include <stdexcept>

namespace twodof {

RatFn::RatFn(const Poly& num) : num_(num), den_(1) {}

RatFn::RatFn(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Poly(1);
        return;
    }
    const Poly g = poly_gcd(num, den);
    Poly n = exact_div(num, g);
    Poly d = exact_div(den, g);
    const Rational scale = Rational(1) / d.lead();
    num_ = n.scaled(scale);
    den_ = d.scaled(scale);
}

Rational RatFn::constant_value() const {
    if (!is_constant()) throw std::domain_error("rational function is not constant");
    return num_.coeff(0) / den_.coeff(0);
}

int RatFn::relative_degree() const {
    if (is_zero()) return kInfiniteRelativeDegree;
    return den_.degree() - num_.degree();
}

Rational RatFn::value_at_infinity() const {
    const int rd = relative_degree();
    if (rd > 0) return Rational(0);
    if (rd < 0) throw std::domain_error("improper rational function has no finite value at infinity");
    return num_.lead() / den_.lead();
}

RatFn RatFn::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of the zero rational function");
    return RatFn(den_, num_);
}

std::optional<Rational> RatFn::eval(const Rational& s0) const {
    const Rational d = den_.eval(s0);
    if (twodof::is_zero(d)) return std::nullopt;
    return num_.eval(s0) / d;
}

RatFn RatFn::operator-() const { return RatFn(-num_, den_, Canonical{}); }

RatFn& RatFn::operator+=(const RatFn& rhs) {
    if (den_ == rhs.den_) return *this = RatFn(num_ + rhs.num_, den_);
    return *this = RatFn(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RatFn& RatFn::operator-=(const RatFn& rhs) { return *this += -rhs; }

RatFn& RatFn::operator*=(const RatFn& rhs) {
    if (is_zero() || rhs.is_zero()) return *this = RatFn();
    // Cross-cancel first so the products stay small.
    const Poly g1 = poly_gcd(num_, rhs.den_);
    const Poly g2 = poly_gcd(rhs.num_, den_);
    Poly n = exact_div(num_, g1) * exact_div(rhs.num_, g2);
    Poly d = exact_div(den_, g2) * exact_div(rhs.den_, g1);
    const Rational scale = Rational(1) / d.lead();
    return *this = RatFn(n.scaled(scale), d.scaled(scale), Canonical{});
}

RatFn& RatFn::operator/=(const RatFn& rhs) { return *this *= rhs.inverse(); }

}  // namespace twodof
