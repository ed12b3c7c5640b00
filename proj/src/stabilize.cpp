#include "twodof/stabilize.hpp"

#include <stdexcept>

#include "twodof/diophantine.hpp"
#include "twodof/errors.hpp"
#include "twodof/format.hpp"

namespace twodof {

namespace {

RatMat identity(std::size_t n) { return to_ratmat(PolyMat::identity(n)); }

std::string improper_message(const std::string& what, const RatMat& m) {
    return what + " is improper (relative degree " + std::to_string(min_relative_degree(m)) + "): " + str(m);
}

RatMat cr_from_factors(const RatMat& p, const RatMat& cy, const RatMat& d, const RatMat& x) {
    const RatMat cr = return_difference(p, cy) * d * x;
    if (!ratmat_is_proper(cr))
        throw DesignObstruction({{Obstruction::Kind::kRelativeDegree, improper_message("Cr = (I - Cy*P)*D*X", cr)}});
    return cr;
}

TwoDofController controllers_from_factors(const RatMat& n, const RatMat& d, const RatMat& l, const RatMat& x) {
    const std::size_t m = d.rows();
    if (l.rows() != m || l.cols() != n.rows() || x.rows() != m)
        throw std::invalid_argument("all_controllers_from_LX: dimension mismatch (L " + l.shape() + ", X " + x.shape() +
                                    ", N " + n.shape() + ")");
    using K = Obstruction::Kind;
    std::vector<Obstruction> issues;
    const StabilityVerdict ls = is_stable(l), xs = is_stable(x);
    if (!ls.stable) issues.push_back({K::kUnstableParameter, "L is unstable: " + ls.describe()});
    if (!xs.stable) issues.push_back({K::kUnstableParameter, "X is unstable: " + xs.describe()});
    const RatMat q = d * l, mm = d * x;
    if (!ratmat_is_proper(q)) issues.push_back({K::kRelativeDegree, improper_message("Q = D*L", q)});
    if (!ratmat_is_proper(mm)) issues.push_back({K::kRelativeDegree, improper_message("M = D*X", mm)});

    const RatMat ilnd = identity(m) + l * n;  // I + L*N
    if (ratmat_det(ilnd).is_zero()) {
        issues.push_back({K::kSingular, "I + L*N is singular"});
        throw DesignObstruction(std::move(issues));
    }
    const RatMat dinv = ratmat_inv(d);
    const StabilityVerdict ws = is_stable(ilnd * dinv);
    if (!ws.stable) issues.push_back({K::kStabilityCondition, "(I + L*N)*D^-1 is unstable: " + ws.describe()});
    const RatMat iqp_inv = d * ratmat_inv(ilnd) * dinv;  // (I + Q*P)^{-1}
    if (!ratmat_is_proper(iqp_inv)) issues.push_back({K::kRelativeDegree, improper_message("(I + Q*P)^-1", iqp_inv)});
    if (!issues.empty()) throw DesignObstruction(std::move(issues));

    TwoDofController c;
    const RatMat left = d * ratmat_inv(ilnd);
    c.cy = left * l;
    c.cr = left * x;
    c.certificate = is_internally_stabilizing(n * dinv, c.cy);
    return c;
}

}  // namespace

DoublyCoprime solve_bezout(const RightMFD& mfd, const Rational& shift) {
    DoublyCoprime dc;
    dc.n = mfd.n;
    dc.d = mfd.d;
    const std::size_t m = mfd.d.rows();
    const PolyMat eye = PolyMat::identity(m);
    const Poly det = polymat_det(mfd.d);
    if (det.is_zero()) throw std::domain_error("solve_bezout: singular denominator");
    // Search from degree 0 so the first feasible bound gives a minimal pair.
    const int limit = det.degree() + std::max(max_degree(mfd.d), 0) + 1;
    bool found = false;
    for (int bound = 0; bound <= limit && !found; ++bound) {
        if (const auto sol = solve_left_combination({mfd.d, mfd.n}, eye, bound)) {
            dc.x1 = (*sol)[0];
            dc.x2 = (*sol)[1];
            found = true;
        }
    }
    if (!found) throw std::domain_error("solve_bezout: (N, D) is not right coprime");

    const RatMat p = plant_of(mfd);
    const LeftMFD l = left_coprime_mfd(p);
    dc.nl = l.nl;
    dc.dl = l.dl;
    dc.right = stable_mfd(mfd, shift);
    dc.left = stable_left_mfd(l, shift);
    return dc;
}

RatMat youla_controller(const DoublyCoprime& dc, const RatMat& k) {
    const std::size_t m = dc.d.rows(), p = dc.n.rows();
    if (k.rows() != m || k.cols() != p)
        throw std::invalid_argument("youla_controller: K must be " + std::to_string(m) + "x" + std::to_string(p) +
                                    ", got " + k.shape());
    if (!is_rh_inf(k)) throw std::invalid_argument("youla_controller: K must be proper and stable, got " + str(k));
    const RatMat den = dc.right.v - k * dc.left.nlprime;
    if (ratmat_det(den).is_zero())
        throw DesignObstruction({{Obstruction::Kind::kSingular, "V - K*Nl' is singular for K = " + str(k)}});
    const RatMat den_inv = ratmat_inv(den);
    if (!ratmat_is_proper(den_inv))
        throw DesignObstruction({{Obstruction::Kind::kSingular, "V - K*Nl' has no proper inverse for K = " + str(k)}});
    return -(den_inv * (dc.right.u + k * dc.left.dlprime));
}

RatMat return_difference(const RatMat& p, const RatMat& cy) {
    if (cy.rows() != p.cols() || cy.cols() != p.rows())
        throw std::invalid_argument("controller Cy must be " + std::to_string(p.cols()) + "x" +
                                    std::to_string(p.rows()) + ", got " + cy.shape());
    return identity(p.cols()) - cy * p;
}

StabilityVerdict is_internally_stabilizing(const RatMat& p, const RatMat& cy) {
    const RatMat rd = return_difference(p, cy);
    if (ratmat_det(rd).is_zero()) throw IllPosedLoop("I - Cy*P is singular");
    const RatMat sens = ratmat_inv(rd);
    if (!ratmat_is_proper(sens)) throw IllPosedLoop("(I - Cy*P)^-1 is improper: " + str(sens));

    StabilityVerdict verdict;
    const std::pair<const char*, RatMat> maps[] = {
        {"(I-CyP)^-1", sens},
        {"(I-CyP)^-1*Cy", sens * cy},
        {"P*(I-CyP)^-1", p * sens},
        {"P*(I-CyP)^-1*Cy", p * sens * cy},
    };
    for (const auto& [name, map] : maps) {
        if (!ratmat_is_proper(map)) verdict.add({Poly(1), InstabilityReason::kImproper, name});
        verdict.merge(is_stable(map), name);
    }
    return verdict;
}

RatMat cr_from_x(const RatMat& p, const RatMat& cy, const RightMFD& mfd, const RatMat& x) {
    return cr_from_factors(p, cy, to_ratmat(mfd.d), x);
}

RatMat cr_from_x(const RatMat& p, const RatMat& cy, const StableMFD& mfd, const RatMat& xprime) {
    return cr_from_factors(p, cy, mfd.dprime, xprime);
}

TwoDofController all_controllers_from_LX(const RightMFD& mfd, const RatMat& l, const RatMat& x) {
    return controllers_from_factors(to_ratmat(mfd.n), to_ratmat(mfd.d), l, x);
}

TwoDofController all_controllers_from_LX(const StableMFD& mfd, const RatMat& lprime, const RatMat& xprime) {
    return controllers_from_factors(mfd.nprime, mfd.dprime, lprime, xprime);
}

}  // namespace twodof
