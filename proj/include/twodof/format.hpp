#pragma once

#include <complex>
#include <string>

#include "twodof/poly.hpp"
#include "twodof/qmatrix.hpp"
#include "twodof/ratfn.hpp"

namespace twodof {

// Printers emit text in the rational-expression grammar accepted by
// parse_rational, so every printed value re-parses to itself. Rational
// roots are factored out ("3*(s-1)*(s-14)"); remaining factors are expanded.

std::string format(const Rational& q);
std::string format(const Poly& p);
std::string format(const RatFn& f);
std::string format(std::complex<double> z);

/// Decimal notation with `significant` significant digits, never exponent form.
std::string format_decimal(double x, int significant = 12);

}  // namespace twodof
