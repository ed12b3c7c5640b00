#include "twodof/stability.hpp"

#include <sstream>
#include <stdexcept>

#include "twodof/format.hpp"
#include "twodof/roots.hpp"

namespace twodof {

std::string to_string(InstabilityReason r) {
    switch (r) {
        case InstabilityReason::kRightHalfPlaneRoot:
            return "right-half-plane root";
        case InstabilityReason::kImaginaryAxisRoot:
            return "imaginary-axis root";
        case InstabilityReason::kImproper:
            return "improper (pole at infinity)";
    }
    return "unknown";
}

void StabilityVerdict::add(OffendingFactor f) {
    for (const auto& g : offending)
        if (g.factor == f.factor && g.reason == f.reason && g.context == f.context) return;
    stable = false;
    offending.push_back(std::move(f));
}

void StabilityVerdict::merge(const StabilityVerdict& other, const std::string& context) {
    for (auto f : other.offending) {
        if (!context.empty()) f.context = f.context.empty() ? context : context + ", " + f.context;
        add(std::move(f));
    }
}

std::string StabilityVerdict::describe() const {
    if (stable) return "stable";
    std::ostringstream os;
    os << "unstable:";
    for (const auto& f : offending) {
        os << ' ';
        if (f.reason != InstabilityReason::kImproper) os << "factor " << format(f.factor) << " ";
        os << "(" << to_string(f.reason);
        if (!f.context.empty()) os << " in " << f.context;
        os << ");";
    }
    std::string s = os.str();
    s.pop_back();
    return s;
}

RouthArray routh_array(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("Routh array of the zero polynomial");
    RouthArray out;
    const int n = p.degree();
    const std::size_t width = static_cast<std::size_t>(n / 2 + 1);
    auto make_row = [&](int top) {
        std::vector<Rational> row(width);
        for (std::size_t j = 0; j < width; ++j) row[j] = p.coeff(top - 2 * static_cast<int>(j));
        return row;
    };
    out.rows.push_back(make_row(n));
    if (n == 0) return out;
    out.rows.push_back(make_row(n - 1));
    auto all_zero = [](const std::vector<Rational>& r) {
        for (const auto& x : r)
            if (!is_zero(x)) return false;
        return true;
    };
    for (int k = 1; k <= n; ++k) {
        if (k >= 2) {
            const auto& a = out.rows[static_cast<std::size_t>(k - 2)];
            const auto& b = out.rows[static_cast<std::size_t>(k - 1)];
            std::vector<Rational> row(width);
            for (std::size_t j = 0; j + 1 < width; ++j) row[j] = (b[0] * a[j + 1] - a[0] * b[j + 1]) / b[0];
            out.rows.push_back(std::move(row));
        }
        auto& row = out.rows[static_cast<std::size_t>(k)];
        if (all_zero(row)) {
            // Auxiliary polynomial from the row above, of order n-k+1 in s.
            const auto& above = out.rows[static_cast<std::size_t>(k - 1)];
            const int order = n - k + 1;
            std::vector<Rational> deriv(width);
            for (std::size_t j = 0; j < width; ++j) {
                const int power = order - 2 * static_cast<int>(j);
                if (power <= 0) break;
                deriv[j] = above[j] * power;
            }
            row = std::move(deriv);
            out.zero_row = true;
        }
        if (is_zero(row[0])) {
            out.zero_pivot = true;
            break;
        }
    }
    for (std::size_t k = 1; k < out.rows.size(); ++k) {
        const int a = sgn(out.rows[k - 1][0]);
        const int b = sgn(out.rows[k][0]);
        if (a != 0 && b != 0 && a != b) ++out.sign_changes;
    }
    return out;
}

namespace {

bool routh_stable(const Poly& p) {
    if (p.degree() == 0) return true;
    const RouthArray r = routh_array(p);
    return !r.zero_row && !r.zero_pivot && r.sign_changes == 0 &&
           static_cast<int>(r.rows.size()) == p.degree() + 1;
}

// Factor of f whose roots are exactly the imaginary-axis roots of f.
// f(i w) = R(w) + i I(w); the axis roots are i w for the common real roots w.
Poly imaginary_axis_part(const Poly& f) {
    std::vector<Rational> re, im;
    for (int k = 0; k <= f.degree(); ++k) {
        const Rational c = f.coeff(k);
        // i^k = 1, i, -1, -i
        switch (k % 4) {
            case 0: re.resize(static_cast<std::size_t>(k) + 1); re[static_cast<std::size_t>(k)] = c; break;
            case 1: im.resize(static_cast<std::size_t>(k) + 1); im[static_cast<std::size_t>(k)] = c; break;
            case 2: re.resize(static_cast<std::size_t>(k) + 1); re[static_cast<std::size_t>(k)] = -c; break;
            default: im.resize(static_cast<std::size_t>(k) + 1); im[static_cast<std::size_t>(k)] = -c; break;
        }
    }
    const Poly r(re), i(im);
    if (r.is_zero() && i.is_zero()) return Poly(1);
    const Poly g = poly_gcd(r, i);
    if (g.is_constant()) return Poly(1);
    // Real f puts axis roots in conjugate pairs, so g is even in w; w^2 = -s^2.
    std::vector<Rational> a(static_cast<std::size_t>(g.degree()) + 1);
    for (int k = 0; k <= g.degree(); ++k) {
        if (k % 2 == 1) {
            if (!is_zero(g.coeff(k))) return Poly(1);  // not expected for real f
            continue;
        }
        a[static_cast<std::size_t>(k)] = (k % 4 == 0) ? g.coeff(k) : Rational(-g.coeff(k));
    }
    return Poly(a).monic();
}

}  // namespace

StabilityVerdict is_hurwitz(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("stability test of the zero polynomial");
    StabilityVerdict v;
    if (routh_stable(p)) return v;
    const RootFactorization rf = factor_rational_roots(p);
    for (const auto& [r, k] : rf.rational_roots) {
        if (sgn(r) < 0) continue;
        v.add({Poly::linear_root(r), sgn(r) == 0 ? InstabilityReason::kImaginaryAxisRoot
                                                  : InstabilityReason::kRightHalfPlaneRoot, {}});
    }
    for (const auto& [f, k] : rf.residual_factors) {
        if (routh_stable(f)) continue;
        const Poly axis = imaginary_axis_part(f);
        Poly rest = f;
        if (!axis.is_constant()) {
            v.add({axis, InstabilityReason::kImaginaryAxisRoot, {}});
            rest = exact_div(f, axis);
        }
        if (!rest.is_constant() && !routh_stable(rest)) v.add({rest.monic(), InstabilityReason::kRightHalfPlaneRoot, {}});
    }
    if (v.stable) throw std::logic_error("Routh test rejected " + p.str() + " but no offending factor was isolated");
    return v;
}

StabilityVerdict is_stable(const RatFn& f) {
    if (f.is_zero()) return {};
    return is_hurwitz(f.den());
}

StabilityVerdict is_stable(const RatMat& m) {
    StabilityVerdict v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            StabilityVerdict e = is_stable(m(i, j));
            if (!e.stable)
                v.merge(e, m.rows() * m.cols() > 1
                               ? "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"
                               : std::string());
        }
    return v;
}

bool is_rh_inf(const RatFn& f) { return f.is_proper() && is_stable(f).stable; }

bool is_rh_inf(const RatMat& m) { return ratmat_is_proper(m) && is_stable(m).stable; }

}  // namespace twodof
