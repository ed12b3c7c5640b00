#include "twodof/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twodof {

Poly::Poly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

Poly::Poly(std::initializer_list<Rational> ascending) : coeffs_(ascending) { trim(); }

Poly::Poly(const Rational& constant) {
    if (!twodof::is_zero(constant)) coeffs_.push_back(constant);
}

Poly Poly::monomial(const Rational& c, int degree) {
    if (degree < 0) throw std::invalid_argument("monomial: negative degree");
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Poly(std::move(v));
}

Poly Poly::linear_root(const Rational& root) { return Poly{Rational(-root), Rational(1)}; }

void Poly::trim() {
    for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && twodof::is_zero(coeffs_.back())) coeffs_.pop_back();
}

int Poly::degree() const {
    if (is_zero()) throw std::domain_error("degree of the zero polynomial");
    return static_cast<int>(coeffs_.size()) - 1;
}

const Rational& Poly::lead() const {
    if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Rational Poly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(k)];
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    return scaled(Rational(1) / lead());
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return Poly(std::move(d));
}

Poly Poly::reflect() const {
    std::vector<Rational> r = coeffs_;
    for (std::size_t k = 1; k < r.size(); k += 2) r[k] = -r[k];
    return Poly(std::move(r));
}

Poly Poly::pow(unsigned exponent) const {
    Poly result(1);
    Poly base = *this;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base *= base;
    }
    return result;
}

Poly Poly::scaled(const Rational& c) const {
    if (twodof::is_zero(c)) return {};
    std::vector<Rational> r = coeffs_;
    for (auto& x : r) x *= c;
    return Poly(std::move(r));
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> Poly::eval(std::complex<double> x) const {
    std::complex<double> acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Poly Poly::operator-() const { return scaled(Rational(-1)); }

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (twodof::is_zero(a.coeffs_[i])) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rational c = coeff(k);
        if (twodof::is_zero(c)) continue;
        const bool negative = sgn(c) < 0;
        Rational mag = abs(c);
        if (negative)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        const bool unit = mag == 1;
        if (k == 0 || !unit) {
            os << mag.get_str();
            if (k > 0) os << '*';
        }
        if (k >= 1) os << 's';
        if (k >= 2) os << '^' << k;
    }
    return os.str();
}

PolyDivision poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const int db = b.degree();
    if (a.is_zero() || a.degree() < db) return {Poly{}, a};
    std::vector<Rational> rem = a.coeffs();
    std::vector<Rational> quo(rem.size() - static_cast<std::size_t>(db));
    const Rational inv_lead = Rational(1) / b.lead();
    for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
        const Rational c = rem[static_cast<std::size_t>(k)] * inv_lead;
        quo[static_cast<std::size_t>(k - db)] = c;
        if (twodof::is_zero(c)) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeff(j);
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("exact_div: " + b.str() + " does not divide " + a.str());
    return q;
}

bool divides(const Poly& b, const Poly& a) { return poly_divmod(a, b).remainder.is_zero(); }

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
    Poly x = a.monic();
    Poly y = b.monic();
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).remainder.monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return exact_div(a * b, poly_gcd(a, b)).monic();
}

std::vector<std::pair<Poly, int>> square_free_decomposition(const Poly& p) {
    // Yun's algorithm over a field of characteristic zero.
    std::vector<std::pair<Poly, int>> out;
    if (p.is_zero() || p.degree() == 0) return out;
    Poly f = p.monic();
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly b = exact_div(f, a);
    Poly c = exact_div(fp, a);
    Poly d = c - b.derivative();
    int k = 1;
    while (!(b.is_constant())) {
        a = poly_gcd(b, d);
        if (!a.is_constant()) out.emplace_back(a, k);
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = c - b.derivative();
        ++k;
    }
    return out;
}

}  // namespace twodof
