#include "twodof/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twodof/errors.hpp"
#include "twodof/format.hpp"
#include "twodof/verify.hpp"

namespace twodof {

namespace {

// Tolerance for the simulated-vs-exact steady-state comparison.
constexpr double kSteadyStateTolerance = 1e-5;

std::string show(const RatMat& m) { return m.rows() == 1 && m.cols() == 1 ? format(m(0, 0)) : str(m); }
std::string show(const PolyMat& m) { return m.rows() == 1 && m.cols() == 1 ? format(m(0, 0)) : str(m); }

std::string divisor_text(const Rational& shift) { return format(Poly::s() + Poly(shift)); }

std::string vector_text(const std::vector<Rational>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format(v[i]);
    return out + "]";
}

std::string vector_text(const std::vector<std::complex<double>>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format(v[i]);
    return out + "]";
}

void print_certificate(std::ostream& os, const Certificate& c) {
    const char* tag = c.holds ? "[holds]" : (c.informational ? "[does not hold, informational]" : "[FAILS]");
    os << "  " << tag << ' ' << c.condition;
    if (!c.verdict.stable) os << ": " << c.verdict.describe();
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
}

void print_verdict(std::ostream& os, const std::string& what, const StabilityVerdict& v) {
    os << "  " << what << ": " << v.describe() << '\n';
}

struct Settings {
    Rational shift = 1;
    FeedbackSign sign = FeedbackSign::kPositive;
    std::optional<double> horizon;
    std::optional<double> dt;
    std::optional<std::string> out;
    ClosedLoopConfig::Kind config = ClosedLoopConfig::Kind::kTwoDof;
};

Settings resolve(const ProblemFile& pf, const RunOptions& o) {
    Settings s;
    if (pf.shift) s.shift = *pf.shift;
    if (o.shift) s.shift = *o.shift;
    if (pf.sign) s.sign = *pf.sign;
    if (o.sign) s.sign = *o.sign;
    s.horizon = o.horizon ? o.horizon : pf.horizon;
    s.dt = o.dt ? o.dt : pf.dt;
    s.out = o.out;
    if (pf.config) s.config = *pf.config;
    if (sgn(s.shift) <= 0) throw ParseError("shift must be positive, got " + format(s.shift));
    if (s.horizon && !(*s.horizon > 0)) throw ParseError("horizon must be positive");
    if (s.dt && !(*s.dt > 0)) throw ParseError("dt must be positive");
    return s;
}

// Controller blocks in the chosen configuration. Under the negative sign
// convention the feedback blocks are shown negated.
void print_controller(std::ostream& os, const ClosedLoopConfig& c, FeedbackSign sign) {
    using K = ClosedLoopConfig::Kind;
    const bool neg = sign == FeedbackSign::kNegative;
    os << "controller (" << to_string(c.kind) << ", "
       << (neg ? "negative feedback: feedback blocks act on -y" : "positive feedback u = Cy*y + Cr*r") << "):\n";
    switch (c.kind) {
        case K::kTwoDof:
            os << "  Cy = " << show(neg ? -c.cy : c.cy) << '\n';
            os << "  Cr = " << show(c.cr) << '\n';
            break;
        case K::kFfFbR:
            os << "  R   = " << show(c.r) << '\n';
            os << "  Cff = " << show(c.cff) << '\n';
            os << "  Cfb = " << show(neg ? -c.cfb : c.cfb) << '\n';
            break;
        case K::kUnityFeedback:
            os << "  Cff = " << show(c.cff) << "   (u = Cff*(r + y))\n";
            if (neg) os << "  as u = Cr*r - Cy*y: Cy = " << show(-c.cff) << ", Cr = " << show(c.cff) << '\n';
            break;
        case K::kFeedbackDirectR:
            os << "  Cfb = " << show(neg ? -c.cfb : c.cfb) << "   (u = r " << (neg ? "- Cfb*y)" : "+ Cfb*y)") << '\n';
            break;
    }
    if (c.kind != K::kTwoDof) {
        os << "  equivalent two-dof pair: Cy = " << show(neg ? -c.equivalent_cy() : c.equivalent_cy())
           << ", Cr = " << show(c.equivalent_cr()) << '\n';
    }
}

int cmd_factor(std::ostream& os, const ProblemFile& pf, const Settings& st) {
    const RatMat& p = pf.plant;
    os << "plant P = " << show(p) << "  (" << p.shape() << ")\n";
    print_verdict(os, "P", is_stable(p));

    const RightMFD r = right_coprime_mfd(p);
    os << "right coprime MFD, P = N D^-1:\n";
    os << "  N = " << show(r.n) << '\n';
    os << "  D = " << show(r.d) << '\n';
    os << "  right coprime: " << (is_right_coprime(r.n, r.d) ? "yes" : "NO") << '\n';
    os << "  N D^-1 = P: " << (plant_of(r) == p ? "holds" : "FAILS") << '\n';

    const LeftMFD l = left_coprime_mfd(p);
    os << "left coprime MFD, P = Dl^-1 Nl:\n";
    os << "  Dl = " << show(l.dl) << '\n';
    os << "  Nl = " << show(l.nl) << '\n';
    os << "  left coprime: " << (is_left_coprime(l.dl, l.nl) ? "yes" : "NO") << '\n';

    const StableMFD sm = stable_mfd(r, st.shift);
    os << "RH-inf factorization, columns divided by powers of " << divisor_text(st.shift) << ":\n";
    os << "  N' = " << show(sm.nprime) << '\n';
    os << "  D' = " << show(sm.dprime) << '\n';
    os << "  U  = " << show(sm.u) << '\n';
    os << "  V  = " << show(sm.v) << '\n';
    os << "  U N' + V D' = I: " << (sm.u * sm.nprime + sm.v * sm.dprime == RatMat::identity(sm.dprime.rows()) ? "holds" : "FAILS")
       << '\n';
    print_verdict(os, "N'", is_stable(sm.nprime));
    print_verdict(os, "D'", is_stable(sm.dprime));

    const ZeroReport z = zeros_and_poles(r);
    os << "zeros (normal rank " << z.normal_rank << ", zero polynomial " << format(z.zero_polynomial) << "):\n";
    if (z.zeros.empty()) os << "  none\n";
    for (const auto& e : z.zeros) {
        os << "  " << describe_location(e) << "  multiplicity " << e.multiplicity << "  "
           << (e.unstable ? "unstable" : "stable") << "  output direction ";
        os << (e.exact ? vector_text(e.exact_directions.empty() ? std::vector<Rational>{} : e.exact_directions[0])
                       : vector_text(e.directions.empty() ? std::vector<std::complex<double>>{} : e.directions[0]))
           << '\n';
    }
    os << "poles (pole polynomial " << format(z.pole_polynomial) << "):\n";
    if (z.poles.empty()) os << "  none\n";
    for (const auto& e : z.poles) {
        os << "  " << describe_location(e) << "  multiplicity " << e.multiplicity << "  "
           << (e.unstable ? "unstable" : "stable") << "  input direction ";
        os << (e.exact ? vector_text(e.exact_directions.empty() ? std::vector<Rational>{} : e.exact_directions[0])
                       : vector_text(e.directions.empty() ? std::vector<std::complex<double>>{} : e.directions[0]))
           << '\n';
    }
    return kExitOk;
}

int cmd_stabilize(std::ostream& os, const ProblemFile& pf, const Settings& st) {
    const RatMat& p = pf.plant;
    const RightMFD r = right_coprime_mfd(p);
    const DoublyCoprime dc = solve_bezout(r, st.shift);
    const std::size_t m = p.cols(), rows = p.rows();
    os << "plant P = " << show(p) << '\n';
    os << "Bezout identity X1 D + X2 N = I:\n";
    os << "  X1 = " << show(dc.x1) << '\n';
    os << "  X2 = " << show(dc.x2) << '\n';
    os << "  check: " << (dc.x1 * dc.d + dc.x2 * dc.n == PolyMat::identity(m) ? "holds" : "FAILS") << '\n';
    os << "doubly coprime RH-inf data (divisor " << divisor_text(st.shift) << "):\n";
    os << "  N'  = " << show(dc.right.nprime) << '\n';
    os << "  D'  = " << show(dc.right.dprime) << '\n';
    os << "  U   = " << show(dc.right.u) << '\n';
    os << "  V   = " << show(dc.right.v) << '\n';
    os << "  Dl' = " << show(dc.left.dlprime) << '\n';
    os << "  Nl' = " << show(dc.left.nlprime) << '\n';

    // Three sample parameters: zero, a first-order lag and its negative.
    RatMat e(m, rows);
    for (std::size_t i = 0; i < std::min(m, rows); ++i) e(i, i) = RatFn(Poly(1), Poly::s() + Poly(st.shift));
    const std::vector<std::pair<std::string, RatMat>> samples = {
        {"0", RatMat(m, rows)},
        {"E/(" + divisor_text(st.shift) + ")", e},
        {"-E/(" + divisor_text(st.shift) + ")", -e},
    };
    const bool neg = st.sign == FeedbackSign::kNegative;
    os << "Youla controllers Cy = -(V - K Nl')^-1 (U + K Dl')"
       << (neg ? ", shown for u = -Cy*y" : "") << " (E = identity pattern):\n";
    for (const auto& [name, k] : samples) {
        os << "  K = " << name << ":\n";
        try {
            const RatMat cy = youla_controller(dc, k);
            os << "    Cy = " << show(neg ? -cy : cy) << '\n';
            os << "    internally stabilizing: " << is_internally_stabilizing(p, cy).describe() << '\n';
        } catch (const DesignObstruction& ex) {
            os << "    skipped: " << ex.what() << '\n';
        }
    }
    return kExitOk;
}

DesignProblem::Kind command_kind(const std::string& c) { return parse_problem_kind(c); }

DesignResult design(const ProblemFile& pf, const Settings& st, std::optional<DesignProblem::Kind> kind) {
    ProblemFile copy = pf;
    if (kind) copy.problem = kind;
    const DesignProblem problem = copy.design();
    return solve_design(pf.plant, problem, st.config, st.shift);
}

void print_design(std::ostream& os, const ProblemFile& pf, const DesignResult& d, const Settings& st,
                  DesignProblem::Kind kind) {
    os << "plant P = " << show(pf.plant) << '\n';
    os << "problem: " << to_string(kind) << "   configuration: " << to_string(st.config)
       << "   divisor: " << divisor_text(st.shift) << '\n';
    const std::string factors = d.parameter_name == "X'" ? "N'" : "N";
    const std::string dfactors = d.parameter_name == "X'" ? "D'" : "D";
    os << d.parameter_name << " = " << show(d.x) << '\n';
    os << "T = " << factors << ' ' << d.parameter_name << " = " << show(d.achieved_t) << '\n';
    os << "M = " << dfactors << ' ' << d.parameter_name << " = " << show(d.achieved_m) << '\n';
    print_controller(os, d.configuration, st.sign);
    if (kind == DesignProblem::Kind::kStaticDecoupling) {
        // Two readings of "Cr = P^-1 Lambda": evaluated at s = 0 (a real gain, used
        // here) and the literal function of s.
        os << "static gain reading: Cr = P(0)^-1 Lambda (evaluated at s = 0)\n";
        if (pf.plant.rows() == pf.plant.cols()) {
            const DesignProblem problem = [&] {
                ProblemFile copy = pf;
                copy.problem = kind;
                return copy.design();
            }();
            const RatMat literal = ratmat_inv(pf.plant) * to_ratmat(problem.lambda);
            os << "literal reading P(s)^-1 Lambda = " << show(literal)
               << (literal == to_ratmat(*ratmat_eval(literal, 0).value) ? " (constant, both agree)"
                                                                        : " (not a real gain)")
               << '\n';
        }
    }
    os << "certificates:\n";
    for (const auto& c : d.certificates) print_certificate(os, c);
    os << "result: " << (d.certified() ? "certified" : "NOT certified") << '\n';
}

int cmd_design(std::ostream& os, const std::string& command, const ProblemFile& pf, const Settings& st) {
    const DesignProblem::Kind kind = command_kind(command);
    const DesignResult d = design(pf, st, kind);
    print_design(os, pf, d, st, kind);
    return d.certified() ? kExitOk : kExitObstruction;
}

std::optional<ClosedLoopConfig> controller_from_file(const ProblemFile& pf, ClosedLoopConfig::Kind kind) {
    using K = ClosedLoopConfig::Kind;
    const auto get = [&](const char* n) { return pf.matrix(n); };
    switch (kind) {
        case K::kTwoDof:
            if (get("cy") && get("cr")) return ClosedLoopConfig::two_dof(*get("cy"), *get("cr"));
            if (get("cy") || get("cr")) throw ParseError("two-dof verification needs both [cy] and [cr]");
            break;
        case K::kFfFbR:
            if (get("r") && get("cff") && get("cfb"))
                return ClosedLoopConfig::ff_fb_r(*get("r"), *get("cff"), *get("cfb"));
            if (get("r") || get("cff") || get("cfb"))
                throw ParseError("ff-fb-r verification needs [r], [cff] and [cfb]");
            break;
        case K::kUnityFeedback:
            if (get("cff")) return ClosedLoopConfig::unity_feedback(*get("cff"));
            break;
        case K::kFeedbackDirectR:
            if (get("cfb")) return ClosedLoopConfig::feedback_direct_r(*get("cfb"));
            break;
    }
    return std::nullopt;
}

double default_horizon(const RatMat& t) {
    const auto tau = dominant_time_constant(t);
    return tau ? 10 * *tau : 10.0;
}

// Steady-state cross-check: simulated final values against the exact DC gain.
Certificate steady_state_check(const RatMat& t, double horizon, double dt) {
    const QMatrix g = dc_gain(t);
    const auto traces = simulate_step(t, horizon, dt);
    double worst = 0;
    for (std::size_t j = 0; j < traces.size(); ++j)
        for (std::size_t i = 0; i < traces[j].outputs.size(); ++i)
            worst = std::max(worst, std::abs(traces[j].outputs[i].back() - g(i, j).get_d()));
    Certificate c;
    c.condition = "simulated steady state within " + format_decimal(kSteadyStateTolerance) + " of T(0) at t = " +
                  format_decimal(horizon);
    c.holds = worst <= kSteadyStateTolerance;
    c.detail = "max deviation " + format_decimal(worst, 6);
    // Slow modes decay as e^{-t/tau}; after a short horizon this is a numeric
    // sanity check rather than part of the exact certificate.
    c.informational = true;
    return c;
}

int cmd_verify(std::ostream& os, const ProblemFile& pf, const Settings& st) {
    const std::optional<ClosedLoopConfig> given = controller_from_file(pf, st.config);
    ClosedLoopConfig config;
    std::optional<RatMat> desired;
    if (given) {
        config = *given;
        config.validate();
        if (const RatMat* t = pf.matrix("target")) desired = *t;
        os << "verifying the controller given in the problem file\n";
    } else if (pf.problem) {
        const DesignResult d = design(pf, st, std::nullopt);
        config = d.configuration;
        desired = d.achieved_t;
        os << "verifying the " << to_string(*pf.problem) << " design\n";
    } else {
        throw ParseError("verify needs controller sections or a [design] section");
    }
    print_controller(os, config, st.sign);

    const ClosedLoopReport rep = closed_loop(pf.plant, config);
    os << "y/r = " << show(rep.t_yr) << '\n';
    os << "u/r = " << show(rep.t_ur) << '\n';
    std::vector<Certificate> checks;
    if (desired) {
        checks = certify(rep, *desired).checks;
    } else {
        Certificate wp;
        wp.condition = "loop well-posed ((I-CyP)^-1 proper)";
        wp.holds = rep.well_posed;
        checks.push_back(wp);
        for (const auto& m : rep.internal_maps) checks.push_back(stability_certificate(m.name + " proper and stable", m.verdict));
    }
    if (rep.internally_stable() && ratmat_is_proper(rep.t_yr)) {
        const double horizon = st.horizon.value_or(default_horizon(rep.t_yr));
        checks.push_back(steady_state_check(rep.t_yr, horizon, st.dt.value_or(horizon / 1000)));
    }
    os << "certificates:\n";
    bool ok = true;
    for (const auto& c : checks) {
        print_certificate(os, c);
        ok = ok && (c.holds || c.informational);
    }
    os << "result: " << (ok ? "verified" : "NOT verified") << '\n';
    return ok ? kExitOk : kExitObstruction;
}

int cmd_simulate(std::ostream& os, const ProblemFile& pf, const Settings& st, std::vector<std::string>& written) {
    RatMat t;
    std::string source;
    if (pf.problem) {
        t = design(pf, st, std::nullopt).achieved_t;
        source = "closed loop of the " + to_string(*pf.problem) + " design";
    } else if (const RatMat* target = pf.matrix("target")) {
        t = *target;
        source = "[target]";
    } else {
        t = pf.plant;
        source = "open-loop plant";
    }
    const double horizon = st.horizon.value_or(default_horizon(t));
    const double dt = st.dt.value_or(horizon / 1000);
    const auto traces = simulate_step(t, horizon, dt);

    std::ostringstream summary;
    summary << "simulated " << source << ": T = " << show(t) << '\n';
    summary << "horizon " << format_decimal(horizon) << " s, dt " << format_decimal(dt) << " s, "
            << traces.front().time.size() << " samples per input\n";
    const QMatrix g = dc_gain(t);
    for (std::size_t j = 0; j < traces.size(); ++j)
        for (std::size_t i = 0; i < traces[j].outputs.size(); ++i)
            summary << "  input " << j + 1 << " -> y" << i + 1 << ": final " << format_decimal(traces[j].outputs[i].back())
                    << ", DC gain " << format(g(i, j)) << '\n';

    if (st.out) {
        for (std::size_t j = 0; j < traces.size(); ++j) {
            const std::string path = channel_csv_path(*st.out, j, traces.size());
            std::ofstream f(path);
            if (!f) throw ParseError("cannot open " + path + " for writing");
            write_csv(f, traces[j]);
            written.push_back(path);
            summary << "wrote " << path << '\n';
        }
        os << summary.str();
    } else {
        // Without --out the CSV itself is the report, one block per input.
        for (const auto& tr : traces) write_csv(os, tr);
    }
    return kExitOk;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"factor",          "stabilize",          "match",  "decouple", "invert",
                                               "static-decouple", "assign-denominator", "verify", "simulate"};
    return c;
}

std::string channel_csv_path(const std::string& path, std::size_t j, std::size_t inputs) {
    if (inputs <= 1) return path;
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    const std::string stem = has_ext ? path.substr(0, dot) : path;
    const std::string ext = has_ext ? path.substr(dot) : "";
    return stem + "_u" + std::to_string(j + 1) + ext;
}

RunResult run(const std::string& command, const ProblemFile& problem, const RunOptions& options) {
    RunResult result;
    std::ostringstream os;
    try {
        const Settings st = resolve(problem, options);
        if (command == "factor")
            result.exit_code = cmd_factor(os, problem, st);
        else if (command == "stabilize")
            result.exit_code = cmd_stabilize(os, problem, st);
        else if (command == "verify")
            result.exit_code = cmd_verify(os, problem, st);
        else if (command == "simulate")
            result.exit_code = cmd_simulate(os, problem, st, result.written_files);
        else if (std::find(commands().begin(), commands().end(), command) != commands().end())
            result.exit_code = cmd_design(os, command, problem, st);
        else
            throw ParseError("unknown command '" + command + "'");
    } catch (const DesignObstruction& e) {
        os << "design obstruction:\n";
        for (const auto& item : e.items()) os << "  [" << to_string(item.kind) << "] " << item.message << '\n';
        result.exit_code = kExitObstruction;
    } catch (const IllPosedLoop& e) {
        os << "design obstruction:\n  [ill-posed] " << e.what() << '\n';
        result.exit_code = kExitObstruction;
    } catch (const std::exception& e) {
        os << "error: " << e.what() << '\n';
        result.exit_code = kExitInputError;
    }
    result.report = os.str();
    return result;
}

RunResult run_file(const std::string& command, const std::string& path, const RunOptions& options) {
    ProblemFile pf;
    try {
        if (path == "-") {
            pf = parse_problem(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) throw ParseError("cannot open problem file " + path);
            pf = parse_problem(in);
        }
    } catch (const std::exception& e) {
        RunResult r;
        r.exit_code = kExitInputError;
        r.report = std::string("error: ") + e.what() + '\n';
        return r;
    }
    return run(command, pf, options);
}

}  // namespace twodof
