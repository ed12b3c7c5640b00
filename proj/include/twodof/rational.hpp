#pragma once

#include <gmpxx.h>

#include <string>

namespace twodof {

// Arbitrary-precision rational number. All algebra in this library is exact.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace twodof
