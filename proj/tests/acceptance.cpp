// Acceptance checks: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes or fails only where a failure
// is known and explained (kKnownFailures below); any other failure, or an
// exception, gives 1. The FAIL lines are printed either way.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "test_support.hpp"
#include "twodof/cli.hpp"
#include "twodof/format.hpp"
#include "twodof/stabilize.hpp"
#include "twodof/synthesis.hpp"
#include "twodof/verify.hpp"

using namespace twodof;
using namespace twodof::testing;

namespace {

// Criterion 3 asserts T^-1 + P^-1 = Cff^-1 P^-1 for unity feedback; the loop
// algebra gives T^-1 + I = Cff^-1 P^-1 instead, so the stated identity is
// false whenever P != I. Criterion 6 asks for 1e-5 after ten time constants,
// but a unit-residue mode still contributes e^-10 = 4.5e-5 there.
const std::set<int> kKnownFailures = {3, 6};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail = what;
        else if (detail.size() < 400) detail += "; " + what;
        pass = false;
    }
};

RatMat scalar(const RatFn& f) { return RatMat(1, 1, {f}); }

const RatFn example_plant(sp(-1) * sp(2), sp(-2).pow(2));

// Random strictly proper stable 2x2 plant with a nonsingular transfer matrix.
RatMat random_stable_plant(Random& rng) {
    for (;;) {
        RatMat p(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                const Poly den = rng.hurwitz(static_cast<int>(rng.integer(1, 2)));
                Poly num = rng.poly(den.degree() - 1, 3);
                p(i, j) = RatFn(num, den);
            }
        if (!ratmat_det(p).is_zero()) return p;
    }
}

Outcome criterion1() {
    Outcome o;
    const StableMFD mfd = stable_mfd(right_coprime_mfd(scalar(example_plant)), 2);
    o.require(mfd.nprime == scalar(RatFn(sp(-1), sp(2))), "N' = " + str(mfd.nprime));
    o.require(mfd.dprime == scalar(RatFn(sp(-2).pow(2), sp(2).pow(2))), "D' = " + str(mfd.dprime));

    const RatMat t = scalar(RatFn(sp(-1), sp(1).pow(2)));
    const DesignResult d = model_matching(mfd, t);
    o.require(d.x == scalar(RatFn(sp(2), sp(1).pow(2))), "X' = " + str(d.x));
    o.require(d.certified(), "match design not certified");

    bool rejected = false;
    try {
        model_matching(mfd, scalar(RatFn(Poly(1), sp(1))));
    } catch (const DesignObstruction& e) {
        for (const auto& item : e.items())
            rejected = rejected || (item.kind == Obstruction::Kind::kUnstableZero &&
                                    item.message.find("+1") != std::string::npos);
    }
    o.require(rejected, "T = 1/(s+1) not rejected for the zero at +1");

    // The same through the command-line driver.
    RunOptions opt;
    opt.shift = 2;
    const ProblemFile pf = parse_problem_text(
        "[plant]\n((s-1)*(s+2))/((s-2)^2)\n[target]\n(s-1)/((s+1)^2)\n[design]\nproblem = match\n");
    const RunResult ok = run("match", pf, opt);
    o.require(ok.exit_code == kExitOk && ok.report.find("X' = (s+2)/(s+1)^2") != std::string::npos,
              "CLI match did not print X' = (s+2)/(s+1)^2");
    ProblemFile bad = pf;
    bad.matrices["target"] = scalar(RatFn(Poly(1), sp(1)));
    const RunResult no = run("match", bad, opt);
    o.require(no.exit_code == kExitObstruction && no.report.find("missing unstable zero at +1") != std::string::npos,
              "CLI match with T = 1/(s+1) did not exit 2 citing the zero at +1");
    return o;
}

Outcome criterion2() {
    Outcome o;
    const StableMFD mfd = stable_mfd(right_coprime_mfd(scalar(example_plant)), 2);
    const RatFn two_dof(sp(2), sp(1).pow(2));
    o.require(!unity_feedback_admissible(mfd, scalar(two_dof)).stable,
              "X' = (s+2)/(s+1)^2 accepted for unity feedback");

    const auto found = solve_unity_diophantine(mfd);
    o.require(found.has_value(), "Diophantine solver found no admissible X'");
    if (found) {
        o.require(sp(2) * found->dx + sp(-1) * found->nx == sp(-2).pow(2) * found->p,
                  "solver witness violates (s+2)dx + (s-1)nx = (s-2)^2 p");
        o.require(unity_feedback_admissible(mfd, scalar(found->xprime)).stable, "solver witness not admissible");
    }

    // The derived witness, expanded by hand-free polynomial arithmetic.
    const Poly dx = sp(1).pow(2), nx = 3 * sp(-14), p = sp(11);
    o.require(sp(2) * dx + sp(-1) * nx == sp(-2).pow(2) * p, "(s+2)(s+1)^2 + (s-1)(3s-42) != (s-2)^2 (s+11)");
    const RatFn xprime(nx, dx);
    const UnityDiophantine ud = unity_diophantine(mfd, xprime);
    o.require(ud.p && *ud.p == p, "unity_diophantine did not return p = s+11");
    const RatMat cff = unity_feedback_controller(mfd, scalar(xprime));
    o.require(cff == scalar(RatFn(nx, sp(11) * sp(2))), "Cff = " + str(cff));
    const ClosedLoopReport rep = closed_loop(scalar(example_plant), ClosedLoopConfig::unity_feedback(cff));
    o.require(rep.internally_stable(), "unity loop not internally stable");
    o.require(rep.t_yr == mfd.nprime * scalar(xprime), "y/r = " + str(rep.t_yr) + " != N'X'");
    return o;
}

struct AssignmentTally {
    int accepted = 0;           // (P, D_T, configuration) triples accepted
    int stated_identity = 0;    // of the unity ones, how many satisfy T^-1 + P^-1 = Cff^-1 P^-1
    int unity = 0;
};

// Each configuration on its own: whichever accepts (P, D_T) must produce
// N D_T^-1 and satisfy its identity. Returns the number of configurations
// that accepted.
int check_assignment(const RatMat& plant, const PolyMat& d_t, Outcome& o, AssignmentTally& tally) {
    const RightMFD mfd = right_coprime_mfd(plant);
    const RatMat expected = to_ratmat(mfd.n) * ratmat_inv(to_ratmat(d_t));
    const RatMat t_inv = ratmat_inv(expected), p_inv = ratmat_inv(plant);
    int accepted = 0;
    try {
        const DesignResult u = denominator_assignment_unity(mfd, d_t);
        const RatMat& cff = u.configuration.cff;
        o.require(cff == to_ratmat(mfd.d) * ratmat_inv(to_ratmat(d_t + mfd.n)), "Cff != D(D_T+N)^-1");
        o.require(closed_loop(plant, ClosedLoopConfig::unity_feedback(cff)).t_yr == expected,
                  "unity closed loop != N D_T^-1 for P = " + str(plant));
        ++tally.unity;
        if (t_inv + p_inv == ratmat_inv(cff) * p_inv) ++tally.stated_identity;
        o.require(t_inv + RatMat::identity(plant.rows()) == ratmat_inv(cff) * p_inv,
                  "T^-1 + I != Cff^-1 P^-1 for P = " + str(plant));
        ++accepted;
    } catch (const DesignObstruction&) {
    }
    try {
        const DesignResult f = denominator_assignment_fig5(mfd, d_t);
        const RatMat& cfb = f.configuration.cfb;
        o.require(cfb == to_ratmat(mfd.d - d_t) * ratmat_inv(to_ratmat(mfd.n)), "Cfb != (D-D_T)N^-1");
        o.require(closed_loop(plant, ClosedLoopConfig::feedback_direct_r(cfb)).t_yr == expected,
                  "feedback-direct-r closed loop != N D_T^-1 for P = " + str(plant));
        o.require(t_inv - p_inv == -cfb, "T^-1 - P^-1 != -Cfb for P = " + str(plant));
        ++accepted;
    } catch (const DesignObstruction&) {
    }
    tally.accepted += accepted;
    return accepted;
}

Outcome criterion3() {
    Outcome o;
    AssignmentTally tally;
    const RatMat p = scalar(RatFn(Poly(1), sp(-2)));

    // D_T = -s/4 - 1/2: unity feedback with Cff = -4 (feedback-direct-r would need an
    // improper Cfb). D_T = s + 2: feedback-direct-r with Cfb = -4 (unity would need the
    // unstable (s+3)/(s-2)).
    const PolyMat slow{{Poly{q(-1, 2), q(-1, 4)}}};
    o.require(check_assignment(p, slow, o, tally) == 1, "D_T = -s/4-1/2 not accepted by exactly one configuration");
    const DesignResult u = denominator_assignment_unity(right_coprime_mfd(p), slow);
    o.require(u.configuration.cff == scalar(RatFn(Poly(-4))), "Cff = " + str(u.configuration.cff));
    o.require(u.achieved_t == scalar(RatFn(Poly(-4), sp(2))), "T = " + str(u.achieved_t));
    o.require(check_assignment(p, PolyMat{{sp(2)}}, o, tally) == 1, "D_T = s+2 not accepted by exactly one configuration");
    const DesignResult f = denominator_assignment_fig5(right_coprime_mfd(p), PolyMat{{sp(2)}});
    o.require(f.configuration.cfb == scalar(RatFn(Poly(-4))), "Cfb = " + str(f.configuration.cfb));

    Random rng(2024);
    int instances = 0, attempts = 0;
    while (instances < 50 && attempts < 2000) {
        ++attempts;
        const RatMat plant = random_stable_plant(rng);
        const RightMFD mfd = right_coprime_mfd(plant);
        // D_T = D - K N with a small constant K keeps Cfb = K proper.
        QMatrix k(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) k(i, j) = rng.rational(2, 2);
        PolyMat kn(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t l = 0; l < 2; ++l) kn(i, j) += Poly(k(i, l)) * mfd.n(l, j);
        const PolyMat dt = mfd.d - kn;
        if (polymat_det(dt).is_zero()) continue;
        if (check_assignment(plant, dt, o, tally) > 0) ++instances;
    }
    o.require(instances == 50, "only " + std::to_string(instances) + " random 2x2 instances accepted");
    o.require(tally.stated_identity == tally.unity,
              "T^-1 + P^-1 = Cff^-1 P^-1 holds on " + std::to_string(tally.stated_identity) + " of " +
                  std::to_string(tally.unity) + " unity designs; the loop gives T^-1 + I = Cff^-1 P^-1, which holds on all");
    if (o.pass) o.detail = std::to_string(tally.accepted) + " accepted designs";
    return o;
}

Outcome criterion4() {
    Outcome o;
    Random rng(99);
    RatMat mimo(2, 2);
    mimo(0, 0) = RatFn(Poly(1), sp(-1));
    mimo(0, 1) = RatFn(Poly(1), sp(2));
    mimo(1, 1) = RatFn(sp(-3), sp(1) * sp(-2));
    const std::vector<std::pair<std::string, RatMat>> plants = {
        {"stable", scalar(RatFn(sp(3), sp(1) * sp(2)))},
        {"unstable SISO", scalar(example_plant)},
        {"2x2", mimo},
    };
    for (const auto& [name, p] : plants) {
        const DoublyCoprime dc = solve_bezout(right_coprime_mfd(p), 1);
        int stabilizing = 0, singular = 0;
        while (stabilizing < 100 && singular < 100) {
            const RatMat k = rng.stable_proper_matrix(p.cols(), p.rows(), 2);
            RatMat cy;
            try {
                cy = youla_controller(dc, k);
            } catch (const DesignObstruction&) {
                ++singular;  // V - K Nl' not properly invertible: no controller for this K
                continue;
            }
            const StabilityVerdict v = is_internally_stabilizing(p, cy);
            o.require(v.stable, name + ": K = " + str(k) + " gives " + v.describe());
            if (!v.stable) break;
            ++stabilizing;
        }
        o.require(stabilizing >= 100, name + ": only " + std::to_string(stabilizing) + " controllers checked");
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    Random rng(5);
    int compared = 0, excluded = 0, disagreements = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int degree = static_cast<int>(rng.integer(1, 8));
        std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
        for (auto& x : c) x = rng.rational(9, 4);
        while (is_zero(c.back())) c.back() = rng.rational(9, 4);
        const Poly p(c);
        double max_re = -1e300;
        for (auto z : companion_eigenvalues(p)) max_re = std::max(max_re, z.real());
        if (std::abs(max_re) < 1e-9) {
            ++excluded;
            continue;
        }
        ++compared;
        if (is_hurwitz(p).stable != (max_re < 0)) ++disagreements;
    }
    o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
    o.detail = o.pass ? std::to_string(compared) + " compared, " + std::to_string(excluded) + " in the 1e-9 band"
                      : o.detail;
    return o;
}

Outcome criterion6() {
    Outcome o;
    RatMat p(2, 2);
    p(0, 0) = RatFn(Poly(1), sp(1));
    p(0, 1) = RatFn(Poly(1), sp(2));
    p(1, 1) = RatFn(Poly(1), sp(3));
    const DesignResult d = static_decoupling(stable_mfd(right_coprime_mfd(p), 1), QMatrix::identity(2));
    const RatMat expected_cr = to_ratmat(QMatrix(2, 2, {Rational(1), q(-3, 2), Rational(0), Rational(3)}));
    o.require(d.controller.cr == expected_cr, "Cr = " + str(d.controller.cr));
    const RatMat pc = p * d.controller.cr;
    o.require(dc_gain(pc) == QMatrix::identity(2), "dc_gain(P Cr) = " + dc_gain(pc).str());

    const double tau = dominant_time_constant(pc).value_or(1.0);
    const double horizon = 10 * tau;
    const auto traces = simulate_step(pc, horizon, 0.01);
    double worst = 0;
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 2; ++i)
            worst = std::max(worst, std::abs(traces[j].outputs[i].back() - (i == j ? 1.0 : 0.0)));
    o.require(worst <= 1e-5, "steady state at t = 10 tau = " + format_decimal(horizon) + " is off by " +
                                 format_decimal(worst, 4) + " (> 1e-5)");
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto tr = simulate_step(scalar(RatFn(Poly(1), sp(1))), 10, 0.01).front();
    double worst = 0;
    for (std::size_t k = 0; k < tr.time.size(); ++k)
        worst = std::max(worst, std::abs(tr.outputs[0][k] - (1 - std::exp(-tr.time[k]))));
    o.require(tr.time.size() == 1001, "expected 1001 samples");
    o.require(worst < 1e-6, "sup error " + format_decimal(worst, 4));
    if (o.pass) o.detail = "sup error " + format_decimal(worst, 3);
    return o;
}

// Random proper plant, possibly unstable, with a nonzero determinant.
RatMat random_proper_plant(Random& rng, std::size_t rows, std::size_t cols) {
    for (;;) {
        RatMat p(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                Poly den = rng.poly(2, 4);
                while (den.is_zero() || den.degree() < 1) den = rng.poly(2, 4);
                p(i, j) = RatFn(rng.poly(den.degree(), 4), den);
            }
        if (rows != cols || !ratmat_det(p).is_zero()) return p;
    }
}

Outcome criterion8() {
    Outcome o;
    Random rng(8);
    int mfd_cases = 0, bezout_cases = 0, hermite_cases = 0, fig3_cases = 0;

    for (int i = 0; i < 100; ++i) {
        const std::size_t n = i % 2 ? 2 : 1;
        const RatMat p = random_proper_plant(rng, n, n);
        const RightMFD r = right_coprime_mfd(p);
        const LeftMFD l = left_coprime_mfd(p);
        o.require(plant_of(r) == p && plant_of(l) == p, "MFD does not reconstruct " + str(p));
        o.require(is_right_coprime(r.n, r.d) && is_left_coprime(l.dl, l.nl), "MFD not coprime for " + str(p));
        o.require(is_column_reduced(r.d), "D not column reduced for " + str(p));
        ++mfd_cases;

        const DoublyCoprime dc = solve_bezout(r, rng.integer(1, 3));
        o.require(dc.x1 * dc.d + dc.x2 * dc.n == PolyMat::identity(n), "X1 D + X2 N != I for " + str(p));
        o.require(dc.right.u * dc.right.nprime + dc.right.v * dc.right.dprime == RatMat::identity(n),
                  "U N' + V D' != I for " + str(p));
        ++bezout_cases;
    }

    for (int i = 0; i < 100; ++i) {
        const PolyMat a = rng.polymat(static_cast<std::size_t>(rng.integer(1, 3)), static_cast<std::size_t>(rng.integer(1, 3)), 2);
        const HermiteForm hf = polymat_hermite(a);
        const Poly det = cofactor_det(hf.u);
        o.require(!det.is_zero() && det.degree() == 0, "Hermite transform not unimodular for " + str(a));
        o.require(hf.u * a == hf.h, "U A != H for " + str(a));
        ++hermite_cases;
    }

    const StableMFD mfd = stable_mfd(right_coprime_mfd(scalar(example_plant)), 2);
    const DoublyCoprime dc = solve_bezout(mfd.base, 2);
    while (fig3_cases < 100) {
        const RatMat k = scalar(rng.stable_proper(2));
        const RatMat xprime = scalar(rng.stable_proper(2));
        RatMat cy;
        try {
            cy = youla_controller(dc, k);
        } catch (const DesignObstruction&) {
            continue;
        }
        const RatMat cr = cr_from_x(scalar(example_plant), cy, mfd, xprime);
        const Fig3Blocks b = fig3_realization({cy, cr, {}}, 2);
        const RatMat two = closed_loop(scalar(example_plant), ClosedLoopConfig::two_dof(cy, cr)).t_yr;
        const RatMat three = closed_loop(scalar(example_plant), ClosedLoopConfig::ff_fb_r(b.r, b.cff, b.cfb)).t_yr;
        o.require(two == three, "two-dof and ff-fb-r differ for K = " + str(k));
        ++fig3_cases;
    }
    if (o.pass)
        o.detail = std::to_string(mfd_cases) + " MFD, " + std::to_string(bezout_cases) + " Bezout, " +
                   std::to_string(hermite_cases) + " Hermite, " + std::to_string(fig3_cases) + " two-dof/ff-fb-r cases";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;  // 0: no limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "example plant pipeline", 1, criterion1},
        {2, "unity-feedback restriction", 1, criterion2},
        {3, "denominator assignment", 10, criterion3},
        {4, "Youla sweep", 30, criterion4},
        {5, "Routh vs companion eigenvalues", 0, criterion5},
        {6, "static decoupling", 0, criterion6},
        {7, "simulation fidelity", 0, criterion7},
        {8, "structural properties", 0, criterion8},
    };

    int unexpected = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && seconds > c.limit_seconds)
            o.require(false, "took " + format_decimal(seconds, 3) + " s (limit " + format_decimal(c.limit_seconds) + " s)");

        std::printf("%s  criterion %d: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                    o.detail.empty() ? "" : " -- ", o.detail.c_str());
        if (!o.pass && !kKnownFailures.count(c.id)) ++unexpected;
    }
    if (unexpected) std::printf("%d unexpected failure(s)\n", unexpected);
    return unexpected ? 1 : 0;
}
