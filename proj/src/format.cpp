#include "twodof/format.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "twodof/roots.hpp"

namespace twodof {

namespace {

std::string power_suffix(int k) { return k > 1 ? "^" + std::to_string(k) : ""; }

std::string linear_factor(const Rational& root) {
    if (is_zero(root)) return "s";
    const Rational neg = -root;
    return "(s" + std::string(sgn(neg) > 0 ? "+" : "-") + Rational(abs(neg)).get_str() + ")";
}

struct Factored {
    Rational scale;
    std::vector<std::string> factors;  // each is an atom: "s", "(...)", "(...)^k", "s^k"
};

Factored factored(const Poly& p) {
    const RootFactorization rf = factor_rational_roots(p);
    Factored out{rf.lead, {}};
    for (const auto& [r, k] : rf.rational_roots) out.factors.push_back(linear_factor(r) + power_suffix(k));
    for (const auto& [f, k] : rf.residual_factors) out.factors.push_back("(" + f.str() + ")" + power_suffix(k));
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
    return s;
}

// scale * prod(factors) as a grammar term.
std::string product(const Rational& scale, const std::vector<std::string>& factors) {
    if (factors.empty()) return format(scale);
    const std::string body = join(factors);
    if (scale == 1) return body;
    if (scale == -1) return "-" + body;
    return format(scale) + "*" + body;
}

}  // namespace

std::string format(const Rational& q) { return q.get_str(); }

std::string format(const Poly& p) {
    if (p.is_zero()) return "0";
    if (p.degree() == 0) return format(p.coeff(0));
    const Factored f = factored(p);
    // A single unscaled monic factor reads better without parentheses.
    if (f.scale == 1 && f.factors.size() == 1 && f.factors[0].front() == '(' && f.factors[0].back() == ')')
        return f.factors[0].substr(1, f.factors[0].size() - 2);
    return product(f.scale, f.factors);
}

std::string format(const RatFn& f) {
    if (f.is_polynomial()) return format(f.num());
    const Factored n = factored(f.num());
    const Factored d = factored(f.den());
    std::string num;
    if (f.num().degree() == 0)
        num = format(f.num().coeff(0));
    else
        num = product(n.scale, n.factors);
    const std::string den = d.factors.size() == 1 ? d.factors[0] : "(" + join(d.factors) + ")";
    return num + "/" + den;
}

std::string format(std::complex<double> z) {
    std::ostringstream os;
    os << format_decimal(z.real(), 12);
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << format_decimal(std::abs(z.imag()), 12) << "i";
    return os.str();
}

std::string format_decimal(double x, int significant) {
    if (x == 0.0 || !std::isfinite(x)) {
        if (std::isnan(x)) return "nan";
        if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
        return "0";
    }
    const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(x))));
    const int decimals = std::max(0, significant - 1 - exponent);
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

}  // namespace twodof
