#include "twodof/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "twodof/diophantine.hpp"
#include "twodof/format.hpp"
#include "twodof/verify.hpp"

namespace twodof {

using Kind = Obstruction::Kind;

namespace {

RatMat identity(std::size_t n) { return to_ratmat(PolyMat::identity(n)); }

RatMat diag(const std::vector<RatFn>& entries) { return RatMat::diagonal(entries); }

std::string relative_degree_text(const RatMat& m) {
    const int r = min_relative_degree(m);
    return r == kInfiniteRelativeDegree ? "infinite" : std::to_string(r);
}

/// Product of the closed right-half-plane factors of c, with multiplicity.
Poly unstable_part(const Poly& c) {
    Poly u(1), rest = c;
    for (const auto& f : is_hurwitz(c).offending) {
        while (rest.degree() > 0 && divides(f.factor, rest)) {
            rest = exact_div(rest, f.factor);
            u *= f.factor;
        }
    }
    return u;
}

/// Attribute the unstable poles of a parameter to the plant's unstable zeros
/// where possible; the rest are reported as an unstable parameter.
std::vector<Obstruction> classify_unstable(const StabilityVerdict& v, const RightMFD& mfd, const std::string& param,
                                           const std::function<std::string(const std::string&)>& missing_zero) {
    std::vector<Obstruction> out;
    const auto zeros = zeros_and_poles(mfd).unstable_zeros();
    std::vector<const Poly*> reported;
    for (const auto& f : v.offending) {
        if (f.reason == InstabilityReason::kImproper) continue;
        const ZeroEntry* hit = nullptr;
        for (const auto& z : zeros)
            if (poly_gcd(f.factor, z.factor).degree() > 0) {
                hit = &z;
                break;
            }
        if (!hit) {
            out.push_back({Kind::kUnstableParameter, param + " has unstable factor " + format(f.factor)});
            continue;
        }
        if (std::find_if(reported.begin(), reported.end(), [&](const Poly* p) { return *p == hit->factor; }) !=
            reported.end())
            continue;
        reported.push_back(&hit->factor);
        out.push_back({Kind::kUnstableZero, missing_zero(describe_location(*hit))});
    }
    return out;
}

// Shared tail of every design: closed-loop computation for the chosen
// configuration, certificates, and the internal-stability safety net.
DesignResult finish(const RatMat& p, const RatMat& nfac, const RatMat& dfac, const RatMat& x,
                    const ClosedLoopConfig& config, const std::string& parameter_name,
                    std::vector<Certificate> extra) {
    try {
        config.validate();
    } catch (const ImproperError& e) {
        throw DesignObstruction({{Kind::kRelativeDegree, e.what()}});
    }
    DesignResult r;
    r.parameter_name = parameter_name;
    r.x = x;
    r.achieved_t = nfac * x;
    r.achieved_m = dfac * x;
    r.configuration = config;
    r.controller.cy = config.equivalent_cy();
    r.controller.cr = config.equivalent_cr();

    ClosedLoopReport rep;
    try {
        rep = closed_loop(p, config);
    } catch (const IllPosedLoop& e) {
        throw DesignObstruction({{Kind::kSingular, e.what()}});
    }
    for (const auto& m : rep.internal_maps) r.controller.certificate.merge(m.verdict, m.name);
    if (!rep.internally_stable()) {
        const std::string why =
            rep.well_posed ? r.controller.certificate.describe() : std::string("(I-CyP)^-1 is improper");
        throw DesignObstruction({{Kind::kStabilityCondition,
                                  to_string(config.kind) + " loop is not internally stable: " + why}});
    }
    if (rep.t_yr != r.achieved_t)
        throw std::logic_error("closed loop " + str(rep.t_yr) + " differs from the design target " +
                               str(r.achieved_t));

    r.certificates = std::move(extra);
    r.certificates.push_back(stability_certificate(parameter_name + " stable", is_stable(x)));
    Certificate proper;
    proper.condition = parameter_name + " proper";
    proper.holds = ratmat_is_proper(x);
    r.certificates.push_back(proper);
    const Certification c = certify(rep, r.achieved_t);
    r.certificates.insert(r.certificates.end(), c.checks.begin(), c.checks.end());
    r.certificates.push_back(equality_certificate("u/r equals the achieved M", rep.t_ur, r.achieved_m));
    return r;
}

/// X' = N'^{-1} diag(targets) with obstruction messages phrased by the caller.
RatMat decoupling_parameter(const StableMFD& mfd, const RatMat& target,
                            const std::function<std::string(const std::string&)>& missing_zero,
                            const std::string& relative_degree_message) {
    std::vector<Obstruction> issues;
    if (ratmat_det(mfd.nprime).is_zero())
        throw DesignObstruction({{Kind::kSingular, "N' is singular; the plant has no inverse"}});
    const RatMat xprime = ratmat_inv(mfd.nprime) * target;
    const StabilityVerdict v = is_stable(xprime);
    if (!v.stable) issues = classify_unstable(v, mfd.base, "X'", missing_zero);
    if (!ratmat_is_proper(xprime))
        issues.push_back({Kind::kRelativeDegree,
                          relative_degree_message + " (X' relative degree " + relative_degree_text(xprime) + ")"});
    if (!issues.empty()) throw DesignObstruction(std::move(issues));
    return xprime;
}

void require_square(const StableMFD& mfd, const char* what) {
    if (mfd.base.n.rows() != mfd.base.n.cols())
        throw DesignObstruction({{Kind::kPrecondition, std::string(what) + " needs a square plant, got " +
                                                           mfd.base.n.shape()}});
}

struct AssignmentData {
    RatMat p, n, d, dt, dt_inv;
};

AssignmentData assignment_preconditions(const RightMFD& mfd, const PolyMat& d_t) {
    const std::size_t m = mfd.d.rows();
    if (mfd.n.rows() != m)
        throw DesignObstruction({{Kind::kPrecondition, "denominator assignment needs a square plant, got " +
                                                           mfd.n.shape()}});
    if (d_t.rows() != m || d_t.cols() != m)
        throw std::invalid_argument("D_T must be " + std::to_string(m) + "x" + std::to_string(m) + ", got " +
                                    d_t.shape());
    std::vector<Obstruction> issues;
    if (polymat_det(mfd.n).is_zero()) issues.push_back({Kind::kSingular, "N is singular; P^-1 does not exist"});
    const Poly det_t = polymat_det(d_t);
    if (det_t.is_zero()) {
        issues.push_back({Kind::kSingular, "D_T is singular"});
    } else {
        const StabilityVerdict v = is_hurwitz(det_t);
        if (!v.stable) issues.push_back({Kind::kUnstableTarget, "D_T^-1 is unstable: " + v.describe()});
    }
    if (!issues.empty()) throw DesignObstruction(std::move(issues));
    AssignmentData a;
    a.n = to_ratmat(mfd.n);
    a.d = to_ratmat(mfd.d);
    a.p = a.n * ratmat_inv(a.d);
    a.dt = to_ratmat(d_t);
    a.dt_inv = ratmat_inv(a.dt);
    return a;
}

}  // namespace

void DesignProblem::validate(std::size_t p, std::size_t m) const {
    switch (kind) {
        case Kind::kModelMatching:
            if (t.rows() != p || t.cols() == 0)
                throw std::invalid_argument("target T must have " + std::to_string(p) + " rows, got " + t.shape());
            if (this->m && (this->m->rows() != m || this->m->cols() != t.cols()))
                throw std::invalid_argument("M must be " + std::to_string(m) + "x" + std::to_string(t.cols()) +
                                            ", got " + this->m->shape());
            break;
        case Kind::kDiagonalDecoupling:
            if (targets.size() != p)
                throw std::invalid_argument("expected " + std::to_string(p) + " diagonal targets, got " +
                                            std::to_string(targets.size()));
            break;
        case Kind::kInverse: break;
        case Kind::kStaticDecoupling:
            if (lambda.rows() != p || lambda.cols() != p)
                throw std::invalid_argument("lambda must be " + std::to_string(p) + "x" + std::to_string(p));
            if (rank(lambda) != p) throw std::invalid_argument("lambda must be nonsingular");
            break;
        case Kind::kDenominatorAssignment:
            if (d_t.rows() != m || d_t.cols() != m)
                throw std::invalid_argument("D_T must be " + std::to_string(m) + "x" + std::to_string(m));
            if (polymat_det(d_t).is_zero()) throw std::invalid_argument("D_T must be nonsingular");
            break;
    }
}

std::string to_string(DesignProblem::Kind k) {
    switch (k) {
        case DesignProblem::Kind::kModelMatching: return "match";
        case DesignProblem::Kind::kDiagonalDecoupling: return "decouple";
        case DesignProblem::Kind::kInverse: return "invert";
        case DesignProblem::Kind::kStaticDecoupling: return "static-decouple";
        case DesignProblem::Kind::kDenominatorAssignment: return "assign-denominator";
    }
    return "unknown";
}

bool DesignResult::certified() const {
    return std::all_of(certificates.begin(), certificates.end(),
                       [](const auto& c) { return c.holds || c.informational; });
}

std::string describe_location(const ZeroEntry& z) {
    if (z.exact) {
        if (sgn(*z.exact) > 0) return "+" + format(*z.exact);
        return format(*z.exact);
    }
    return "root of " + format(z.factor) + " near " + format(z.location);
}

Realizability check_realizable(const RightMFD& mfd, const RatMat& t, const std::optional<RatMat>& m) {
    const std::size_t p = mfd.n.rows(), mm = mfd.n.cols();
    if (t.rows() != p) throw std::invalid_argument("check_realizable: T must have " + std::to_string(p) + " rows");
    if (m && (m->rows() != mm || m->cols() != t.cols()))
        throw std::invalid_argument("check_realizable: M must be " + std::to_string(mm) + "x" +
                                    std::to_string(t.cols()));
    Realizability out;
    const StabilityVerdict tv = is_stable(t);
    if (!ratmat_is_proper(t) || !tv.stable)
        out.obstructions.push_back(
            {Kind::kUnstableTarget, "T must be proper and stable" + (tv.stable ? std::string() : ": " + tv.describe())});
    if (m) {
        const StabilityVerdict mv = is_stable(*m);
        if (!ratmat_is_proper(*m) || !mv.stable)
            out.obstructions.push_back({Kind::kUnstableTarget, "M must be proper and stable" +
                                                                   (mv.stable ? std::string() : ": " + mv.describe())});
    }
    if (!out.obstructions.empty()) return out;

    // U [N; D] = [R; 0] (or U N = [R; 0]); the target must map into the range.
    const PolyMat stacked = m ? vstack(mfd.n, mfd.d) : mfd.n;
    const RatMat rhs = m ? vstack(t, *m) : t;
    const HermiteForm hf = polymat_hermite(stacked);
    const std::size_t r = hf.pivot_cols.size();
    const RatMat w = to_ratmat(hf.u) * rhs;
    for (std::size_t i = r; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (!w(i, j).is_zero()) {
                out.obstructions.push_back(
                    {Kind::kRank, m ? "rank [N T; D M] exceeds rank [N; D]: (T, M) is not of the form [N; D] X"
                                    : "rank [N T] exceeds rank N: T is not of the form N X"});
                return out;
            }

    // Back substitution on the pivot columns of R; free rows of X stay zero.
    RatMat x(mm, t.cols());
    RatMat rp(r, r), top(r, t.cols());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) rp(i, k) = RatFn(hf.h(i, hf.pivot_cols[k]));
        for (std::size_t j = 0; j < t.cols(); ++j) top(i, j) = w(i, j);
    }
    const RatMat xp = r ? ratmat_inv(rp) * top : RatMat(0, t.cols());
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < t.cols(); ++j) x(hf.pivot_cols[k], j) = xp(k, j);

    const StabilityVerdict xv = is_stable(x);
    if (!xv.stable) {
        auto issues = classify_unstable(xv, mfd, "X", [](const std::string& loc) {
            return "T is missing unstable zero at " + loc + " of the plant";
        });
        out.obstructions.insert(out.obstructions.end(), issues.begin(), issues.end());
    }
    const RatMat dx = to_ratmat(mfd.d) * x;
    if (!ratmat_is_proper(dx) || !ratmat_is_proper(x))
        out.obstructions.push_back({Kind::kRelativeDegree, "M = D*X is improper (relative degree " +
                                                               relative_degree_text(dx) +
                                                               "): T rolls off slower than the plant allows"});
    if (!out.obstructions.empty()) return out;
    out.x = x;
    out.m = dx;
    return out;
}

Realizability check_realizable(const StableMFD& mfd, const RatMat& t, const std::optional<RatMat>& m) {
    Realizability out = check_realizable(mfd.base, t, m);
    if (out.x) out.x = to_ratmat(mfd.divisor) * *out.x;
    return out;
}

DesignResult realize_parameter(const StableMFD& mfd, const RatMat& xprime, ClosedLoopConfig::Kind kind) {
    const RatMat p = plant_of(mfd.base);
    ClosedLoopConfig config;
    std::vector<Certificate> extra;
    switch (kind) {
        case ClosedLoopConfig::Kind::kTwoDof:
        case ClosedLoopConfig::Kind::kFfFbR: {
            const DoublyCoprime dc = solve_bezout(mfd.base, mfd.shift);
            TwoDofController c;
            c.cy = youla_controller(dc, RatMat(p.cols(), p.rows()));
            c.cr = cr_from_x(p, c.cy, mfd, xprime);
            if (kind == ClosedLoopConfig::Kind::kTwoDof) {
                config = ClosedLoopConfig::two_dof(c.cy, c.cr);
            } else {
                const Fig3Blocks b = fig3_realization(c, mfd.shift);
                config = ClosedLoopConfig::ff_fb_r(b.r, b.cff, b.cfb);
                extra.push_back(stability_certificate("R stable", is_stable(b.r)));
                extra.push_back(stability_certificate("Cfb stable", is_stable(b.cfb)));
                extra.push_back(stability_certificate("Cff^-1 stable", is_stable(b.dc)));
            }
            break;
        }
        case ClosedLoopConfig::Kind::kUnityFeedback: {
            extra.push_back(stability_certificate("(I + X'N')D'^-1 proper and stable",
                                                  unity_feedback_admissible(mfd, xprime)));
            config = ClosedLoopConfig::unity_feedback(unity_feedback_controller(mfd, xprime));
            break;
        }
        case ClosedLoopConfig::Kind::kFeedbackDirectR: {
            const RatMat x = ratmat_inv(to_ratmat(mfd.divisor)) * xprime;
            config = ClosedLoopConfig::feedback_direct_r(fig5_feedback_from_x(mfd.base, x));
            break;
        }
    }
    return finish(p, mfd.nprime, mfd.dprime, xprime, config, "X'", std::move(extra));
}

DesignResult model_matching(const StableMFD& mfd, const RatMat& t, const std::optional<RatMat>& m,
                            ClosedLoopConfig::Kind kind) {
    const Realizability r = check_realizable(mfd, t, m);
    if (!r.realizable()) throw DesignObstruction(r.obstructions);
    return realize_parameter(mfd, *r.x, kind);
}

DesignResult diagonal_decoupling(const StableMFD& mfd, const std::vector<RatFn>& targets,
                                 ClosedLoopConfig::Kind kind) {
    require_square(mfd, "diagonal decoupling");
    if (targets.size() != mfd.base.n.rows())
        throw std::invalid_argument("diagonal_decoupling: expected " + std::to_string(mfd.base.n.rows()) +
                                    " targets, got " + std::to_string(targets.size()));
    std::vector<Obstruction> bad;
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (!is_rh_inf(targets[i]))
            bad.push_back({Kind::kUnstableTarget, "target " + std::to_string(i + 1) + " = " + format(targets[i]) +
                                                      " is not proper and stable"});
    if (!bad.empty()) throw DesignObstruction(std::move(bad));
    const RatMat target = diag(targets);
    const RatMat xprime = decoupling_parameter(
        mfd, target,
        [](const std::string& loc) { return "the diagonal targets must contain the plant's unstable zero at " + loc; },
        "targets roll off slower than the plant allows");
    DesignResult r = realize_parameter(mfd, xprime, kind);
    r.certificates.insert(r.certificates.begin(), equality_certificate("T diagonal and equal to the targets",
                                                                       r.achieved_t, target));
    return r;
}

DesignResult inverse_problem(const StableMFD& mfd, ClosedLoopConfig::Kind kind) {
    require_square(mfd, "the inverse problem");
    const RatMat eye = identity(mfd.base.n.rows());
    const RatMat xprime = decoupling_parameter(
        mfd, eye,
        [](const std::string& loc) { return "exact inversion impossible: plant has unstable zero at " + loc; },
        "exact inversion impossible: plant has positive relative degree");
    DesignResult r = realize_parameter(mfd, xprime, kind);
    r.certificates.insert(r.certificates.begin(), equality_certificate("T = I", r.achieved_t, eye));
    return r;
}

DesignResult static_decoupling(const StableMFD& mfd, const QMatrix& lambda) {
    require_square(mfd, "static decoupling");
    const std::size_t m = mfd.base.n.rows();
    if (lambda.rows() != m || lambda.cols() != m || rank(lambda) != m)
        throw std::invalid_argument("static_decoupling: lambda must be a nonsingular " + std::to_string(m) + "x" +
                                    std::to_string(m) + " matrix");
    if (is_zero(determinant(polymat_eval(mfd.base.n, 0))))
        throw DesignObstruction({{Kind::kUnstableZero, "plant has a zero at the origin (det N'(0) = 0)"}});

    const RatMat p = plant_of(mfd.base);
    const bool stable_plant = is_hurwitz(polymat_det(mfd.base.d)).stable;
    RatMat cy(m, m);
    if (!stable_plant) cy = youla_controller(solve_bezout(mfd.base, mfd.shift), RatMat(m, m));
    const RatMat sens = ratmat_inv(return_difference(p, cy));
    const Evaluation g0 = ratmat_eval(p * sens, 0);
    if (g0.has_pole() || rank(*g0.value) != m)
        throw DesignObstruction({{Kind::kSingular, "closed-loop gain P(I - Cy P)^-1 is singular at s = 0"}});
    const RatMat cr = to_ratmat(inverse(*g0.value) * lambda);
    const RatMat xprime = ratmat_inv(mfd.dprime) * sens * cr;

    std::vector<Certificate> extra;
    Certificate path;
    path.condition = stable_plant ? "stable plant: pure gain Cr = P(0)^-1 Lambda with Cy = 0"
                                  : "unstable plant: Cy stabilizes, Cr = [P(I-CyP)^-1](0)^-1 Lambda";
    path.holds = true;
    extra.push_back(path);
    DesignResult r = finish(p, mfd.nprime, mfd.dprime, xprime, ClosedLoopConfig::two_dof(cy, cr), "X'",
                            std::move(extra));
    r.certificates.push_back(equality_certificate("T(0) = Lambda", to_ratmat(dc_gain(r.achieved_t)),
                                                  to_ratmat(lambda)));
    return r;
}

DesignResult denominator_assignment_unity(const RightMFD& mfd, const PolyMat& d_t) {
    const AssignmentData a = assignment_preconditions(mfd, d_t);
    const RatMat sum = a.dt + a.n;
    const StabilityVerdict cond = is_stable(sum * ratmat_inv(a.d));
    std::vector<Obstruction> issues;
    if (!cond.stable)
        issues.push_back({Kind::kStabilityCondition, "(D_T + N)D^-1 is unstable: " + cond.describe()});
    if (ratmat_det(sum).is_zero()) issues.push_back({Kind::kSingular, "D_T + N is singular"});
    if (!issues.empty()) throw DesignObstruction(std::move(issues));
    const RatMat cff = a.d * ratmat_inv(sum);
    if (!ratmat_is_proper(cff))
        throw DesignObstruction({{Kind::kRelativeDegree, "Cff = D(D_T + N)^-1 is improper (relative degree " +
                                                             relative_degree_text(cff) + ")"}});

    std::vector<Certificate> extra;
    extra.push_back(stability_certificate("(D_T + N)D^-1 stable", cond));
    DesignResult r = finish(a.p, a.n, a.d, a.dt_inv, ClosedLoopConfig::unity_feedback(cff), "X", std::move(extra));
    const RatMat t_inv = ratmat_inv(r.achieved_t), p_inv = ratmat_inv(a.p), cff_inv = ratmat_inv(cff);
    r.certificates.push_back(equality_certificate("y/r = N D_T^-1", r.achieved_t, a.n * a.dt_inv));
    // The relation as commonly stated, and the form implied by y = (I - P Cff)^-1 P Cff r.
    r.certificates.push_back(equality_certificate("T^-1 + P^-1 = Cff^-1 P^-1", t_inv + p_inv, cff_inv * p_inv));
    r.certificates.back().informational = true;
    r.certificates.push_back(
        equality_certificate("T^-1 + I = Cff^-1 P^-1", t_inv + identity(t_inv.rows()), cff_inv * p_inv));
    return r;
}

DesignResult denominator_assignment_fig5(const RightMFD& mfd, const PolyMat& d_t) {
    const AssignmentData a = assignment_preconditions(mfd, d_t);
    const RatMat cfb = (a.d - a.dt) * ratmat_inv(a.n);
    if (!ratmat_is_proper(cfb))
        throw DesignObstruction({{Kind::kRelativeDegree, "Cfb = (D - D_T)N^-1 is improper (relative degree " +
                                                             relative_degree_text(cfb) + ")"}});
    DesignResult r = finish(a.p, a.n, a.d, a.dt_inv, ClosedLoopConfig::feedback_direct_r(cfb), "X", {});
    r.certificates.push_back(equality_certificate("y/r = N D_T^-1", r.achieved_t, a.n * a.dt_inv));
    r.certificates.push_back(
        equality_certificate("T^-1 - P^-1 = -Cfb", ratmat_inv(r.achieved_t) - ratmat_inv(a.p), -cfb));
    return r;
}

UnityDiophantine unity_diophantine(const StableMFD& mfd, const RatFn& xprime) {
    if (mfd.nprime.rows() != 1 || mfd.nprime.cols() != 1)
        throw std::invalid_argument("unity_diophantine: SISO plants only");
    const RatFn& np = mfd.nprime(0, 0);
    const RatFn& dp = mfd.dprime(0, 0);
    UnityDiophantine out;
    out.lhs = np.den() * xprime.den() + np.num() * xprime.num();
    out.unstable_part = unstable_part(dp.num());
    if (out.lhs.is_zero())
        out.p = Poly();
    else if (divides(out.unstable_part, out.lhs))
        out.p = exact_div(out.lhs, out.unstable_part);
    return out;
}

StabilityVerdict unity_feedback_admissible(const StableMFD& mfd, const RatMat& xprime) {
    const std::size_t m = mfd.dprime.rows();
    if (!is_rh_inf(xprime)) throw std::invalid_argument("unity_feedback_admissible: X' must be in RH-inf");
    const RatMat w = (identity(m) + xprime * mfd.nprime) * ratmat_inv(mfd.dprime);
    StabilityVerdict v = is_stable(w);
    if (!ratmat_is_proper(w)) v.add({Poly(1), InstabilityReason::kImproper, "(I + X'N')D'^-1"});
    if (m == 1 && mfd.nprime.rows() == 1) {
        const bool diophantine = unity_diophantine(mfd, xprime(0, 0)).holds();
        if (diophantine != is_stable(w).stable)
            throw std::logic_error("unity feedback: matrix and Diophantine forms of the restriction disagree");
    }
    return v;
}

std::optional<UnityWitness> solve_unity_diophantine(const StableMFD& mfd, const std::optional<Poly>& dx,
                                                    int max_degree) {
    if (mfd.nprime.rows() != 1 || mfd.nprime.cols() != 1)
        throw std::invalid_argument("solve_unity_diophantine: SISO plants only");
    if (dx && (dx->is_zero() || !is_hurwitz(*dx).stable))
        throw std::invalid_argument("solve_unity_diophantine: dx must be Hurwitz");
    const RatFn& np = mfd.nprime(0, 0);
    const Poly a = np.num(), b = np.den();
    const Poly u = unstable_part(mfd.dprime(0, 0).num());
    const Poly base = Poly::s() + Poly(mfd.shift);
    const int first = dx ? dx->degree() : 0, last = dx ? dx->degree() : max_degree;
    for (int k = first; k <= last; ++k) {
        const Poly den = dx ? *dx : base.pow(static_cast<unsigned>(k));
        const Poly bdx = b * den;
        for (int j = 0; j <= k; ++j) {
            // b*dx + a*nx = u*p  <=>  a*nx + u*(-p) = -b*dx
            const int top = std::max({bdx.degree(), a.is_zero() ? 0 : a.degree() + j});
            const int pbound = top - u.degree();
            if (pbound < 0) continue;
            const auto sol = solve_scalar_combination(a, j, u, pbound, -bdx);
            if (!sol || sol->first.is_zero()) continue;
            UnityWitness w{RatFn(sol->first, den), den, sol->first, -sol->second};
            if (!is_rh_inf(w.xprime)) continue;
            const RatMat xp(1, 1, {w.xprime});
            if (!unity_feedback_admissible(mfd, xp).stable) continue;
            try {
                unity_feedback_controller(mfd, xp);
            } catch (const DesignObstruction&) {
                continue;
            }
            // Report in lowest terms when nx and dx share a factor.
            const Poly g = poly_gcd(w.nx, w.dx);
            if (g.degree() > 0) {
                w.nx = exact_div(w.nx, g);
                w.dx = exact_div(w.dx, g);
                w.p = exact_div(w.p, g);
            }
            return w;
        }
    }
    return std::nullopt;
}

RatMat unity_feedback_controller(const StableMFD& mfd, const RatMat& xprime) {
    const StabilityVerdict v = unity_feedback_admissible(mfd, xprime);
    if (!v.stable)
        throw DesignObstruction({{Kind::kStabilityCondition,
                                  "X' = " + str(xprime) + " is not admissible for unity feedback: (I + X'N')D'^-1: " +
                                      v.describe()}});
    const TwoDofController c = all_controllers_from_LX(mfd, xprime, xprime);
    if (!ratmat_is_proper(c.cy))
        throw DesignObstruction({{Kind::kRelativeDegree, "Cff is improper: " + str(c.cy)}});
    if (mfd.nprime * xprime != plant_of(mfd) * ratmat_inv(identity(c.cy.rows()) - c.cy * plant_of(mfd)) * c.cy)
        throw std::logic_error("unity feedback closed loop differs from N'X'");
    return c.cy;
}

Fig3Blocks fig3_realization(const TwoDofController& controller, const Rational& shift) {
    const RatMat c = hstack(controller.cy, controller.cr);
    if (!ratmat_is_proper(c)) throw ImproperError("fig3_realization: controller is improper: " + str(c));
    const std::size_t ny = controller.cy.cols(), nr = controller.cr.cols(), m = c.rows();
    Fig3Blocks b;
    RatMat nprime;
    if (is_rh_inf(c)) {
        b.dc = identity(m);
        nprime = c;
    } else {
        const StableLeftMFD l = stable_left_mfd(left_coprime_mfd(c), shift);
        b.dc = l.dlprime;
        nprime = l.nlprime;
    }
    b.cfb = nprime.block(0, 0, m, ny);
    b.r = nprime.block(0, ny, m, nr);
    b.cff = ratmat_inv(b.dc);
    if (!is_rh_inf(b.r) || !is_rh_inf(b.cfb) || !is_rh_inf(b.dc))
        throw std::logic_error("fig3_realization: left factors are not in RH-inf");
    return b;
}

RatMat fig5_feedback_from_x(const RightMFD& mfd, const RatMat& x) {
    const RatMat n = to_ratmat(mfd.n), d = to_ratmat(mfd.d);
    std::vector<Obstruction> issues;
    if (!n.is_square() || ratmat_det(n).is_zero())
        issues.push_back({Kind::kSingular, "P^-1 does not exist (N singular or non-square)"});
    if (!x.is_square() || x.rows() != d.rows() || ratmat_det(x).is_zero())
        issues.push_back({Kind::kSingular, "X is singular"});
    const StabilityVerdict v = is_stable(x);
    if (!v.stable) issues.push_back({Kind::kUnstableParameter, "X is unstable: " + v.describe()});
    if (!issues.empty()) throw DesignObstruction(std::move(issues));
    return ratmat_inv(x) * (x * d - identity(d.rows())) * ratmat_inv(n);
}

StabilityVerdict siso_conditions(const RatFn& p, const RatFn& t, FeedbackSign sign) {
    const RatFn sens = sign == FeedbackSign::kPositive ? RatFn(1) + t : RatFn(1) - t;
    StabilityVerdict v;
    v.merge(is_stable(sens * RatFn(Poly(1), p.den())), "S/d");
    if (p.is_zero()) {
        v.add({Poly(1), InstabilityReason::kImproper, "T/n undefined for P = 0"});
        return v;
    }
    v.merge(is_stable(t * RatFn(Poly(1), p.num())), "T/n");
    return v;
}

DesignResult solve_design(const RatMat& plant, const DesignProblem& problem, ClosedLoopConfig::Kind kind,
                          const Rational& shift) {
    problem.validate(plant.rows(), plant.cols());
    const StableMFD mfd = stable_mfd(right_coprime_mfd(plant), shift);
    using P = DesignProblem::Kind;
    using C = ClosedLoopConfig::Kind;
    switch (problem.kind) {
        case P::kModelMatching: return model_matching(mfd, problem.t, problem.m, kind);
        case P::kDiagonalDecoupling: return diagonal_decoupling(mfd, problem.targets, kind);
        case P::kInverse: return inverse_problem(mfd, kind);
        case P::kStaticDecoupling: {
            if (kind != C::kTwoDof)
                throw std::invalid_argument("static decoupling is realized with the two-dof configuration");
            return static_decoupling(mfd, problem.lambda);
        }
        case P::kDenominatorAssignment: {
            if (kind == C::kUnityFeedback) return denominator_assignment_unity(mfd.base, problem.d_t);
            if (kind == C::kFeedbackDirectR) return denominator_assignment_fig5(mfd.base, problem.d_t);
            assignment_preconditions(mfd.base, problem.d_t);
            const RatMat xprime = to_ratmat(mfd.divisor) * ratmat_inv(to_ratmat(problem.d_t));
            return realize_parameter(mfd, xprime, kind);
        }
    }
    throw std::logic_error("solve_design: unknown problem kind");
}

}  // namespace twodof
