#include "twodof/verify.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twodof/errors.hpp"
#include "twodof/format.hpp"
#include "twodof/roots.hpp"
#include "twodof/stabilize.hpp"

namespace twodof {

bool ClosedLoopReport::internally_stable() const {
    return well_posed &&
           std::all_of(internal_maps.begin(), internal_maps.end(), [](const auto& m) { return m.verdict.stable; });
}

ClosedLoopReport closed_loop(const RatMat& p, const ClosedLoopConfig& config) {
    const RatMat cy = config.equivalent_cy();
    const RatMat cr = config.equivalent_cr();
    if (cr.rows() != p.cols())
        throw std::invalid_argument("closed_loop: Cr must have " + std::to_string(p.cols()) + " rows, got " + cr.shape());
    const RatMat rd = return_difference(p, cy);
    if (ratmat_det(rd).is_zero()) throw IllPosedLoop("closed_loop: I - Cy*P is singular");

    ClosedLoopReport rep;
    rep.kind = config.kind;
    const RatMat sens = ratmat_inv(rd);
    rep.well_posed = ratmat_is_proper(sens);
    rep.t_ur = sens * cr;
    rep.t_yr = p * rep.t_ur;
    const std::pair<const char*, RatMat> maps[] = {
        {"(I-CyP)^-1", sens},
        {"(I-CyP)^-1*Cy", sens * cy},
        {"P*(I-CyP)^-1", p * sens},
        {"P*(I-CyP)^-1*Cy", p * sens * cy},
    };
    for (const auto& [name, map] : maps) {
        InternalMap im{name, map, is_stable(map)};
        if (!ratmat_is_proper(map)) im.verdict.add({Poly(1), InstabilityReason::kImproper, name});
        rep.internal_maps.push_back(std::move(im));
    }
    return rep;
}

bool Certification::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

Certification certify(const ClosedLoopReport& report, const RatMat& desired_t) {
    Certification out;
    out.checks.push_back(equality_certificate("y/r equals the desired T", report.t_yr, desired_t));
    Certificate wp;
    wp.condition = "loop well-posed ((I-CyP)^-1 proper)";
    wp.holds = report.well_posed;
    out.checks.push_back(wp);
    for (const auto& m : report.internal_maps)
        out.checks.push_back(stability_certificate(m.name + " proper and stable", m.verdict));
    return out;
}

namespace {

// Controllable canonical realization of column j with common denominator.
struct ColumnRealization {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::MatrixXd c;
    Eigen::VectorXd d;
};

ColumnRealization realize_column(const RatMat& t, std::size_t j) {
    const Poly den = column_denominator(t, j);
    const int n = den.degree();
    ColumnRealization r;
    r.a = Eigen::MatrixXd::Zero(n, n);
    r.b = Eigen::VectorXd::Zero(n);
    r.c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.rows()), n);
    r.d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(t.rows()));
    for (int i = 0; i + 1 < n; ++i) r.a(i, i + 1) = 1.0;
    for (int i = 0; i < n; ++i) r.a(n - 1, i) = -den.coeff(i).get_d();
    if (n > 0) r.b(n - 1) = 1.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        // t_ij = num/den with deg num <= n; split off the feedthrough.
        const Poly num = t(i, j).num() * exact_div(den, t(i, j).den());
        const auto [feed, rest] = poly_divmod(num, den);
        const auto row = static_cast<Eigen::Index>(i);
        r.d(row) = feed.coeff(0).get_d();
        for (int k = 0; k < n; ++k) r.c(row, k) = rest.coeff(k).get_d();
    }
    return r;
}

}  // namespace

std::vector<SimulationTrace> simulate_step(const RatMat& t, double horizon, double dt) {
    if (!(horizon > 0) || !(dt > 0)) throw std::invalid_argument("simulate_step: horizon and dt must be positive");
    if (!ratmat_is_proper(t)) throw std::invalid_argument("simulate_step: improper transfer matrix " + str(t));
    const StabilityVerdict v = is_stable(t);
    if (!v.stable) throw std::invalid_argument("simulate_step: unstable transfer matrix: " + v.describe());

    const auto samples = static_cast<std::size_t>(std::llround(horizon / dt)) + 1;
    std::vector<double> time(samples);
    for (std::size_t k = 0; k < samples; ++k) time[k] = static_cast<double>(k) * dt;

    std::vector<SimulationTrace> traces;
    for (std::size_t j = 0; j < t.cols(); ++j) {
        SimulationTrace tr;
        tr.time = time;
        tr.step_size = dt;
        tr.inputs = "unit step on input " + std::to_string(j + 1);
        tr.outputs.assign(t.rows(), std::vector<double>(samples));

        const ColumnRealization r = realize_column(t, j);
        const auto n = r.a.rows();
        // exp([[A, B], [0, 0]] * dt) = [[Phi, Gamma], [0, I]].
        Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + 1, n + 1);
        block.topLeftCorner(n, n) = r.a * dt;
        block.topRightCorner(n, 1) = r.b * dt;
        const Eigen::MatrixXd e = block.exp();
        const Eigen::MatrixXd phi = e.topLeftCorner(n, n);
        const Eigen::VectorXd gamma = e.topRightCorner(n, 1);

        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (std::size_t k = 0; k < samples; ++k) {
            const Eigen::VectorXd y = r.c * x + r.d;
            for (std::size_t i = 0; i < t.rows(); ++i) tr.outputs[i][k] = y(static_cast<Eigen::Index>(i));
            x = phi * x + gamma;
        }
        traces.push_back(std::move(tr));
    }
    return traces;
}

std::optional<double> dominant_time_constant(const RatMat& t) {
    std::optional<double> slowest;
    for (std::size_t j = 0; j < t.cols(); ++j)
        for (const auto& z : numeric_roots(column_denominator(t, j))) {
            const double rate = std::abs(z.real());
            if (rate > 0 && (!slowest || rate < *slowest)) slowest = rate;
        }
    if (!slowest) return std::nullopt;
    return 1.0 / *slowest;
}

QMatrix dc_gain(const RatMat& t) {
    const Evaluation e = ratmat_eval(t, 0);
    if (e.has_pole()) throw std::domain_error("dc_gain: pole at the origin");
    const StabilityVerdict v = is_stable(t);
    if (!v.stable) throw std::invalid_argument("dc_gain: unstable transfer matrix: " + v.describe());
    return *e.value;
}

void write_csv(std::ostream& out, const SimulationTrace& trace) {
    out << "t";
    for (std::size_t i = 0; i < trace.outputs.size(); ++i) out << ",y" << i + 1;
    out << '\n';
    for (std::size_t k = 0; k < trace.time.size(); ++k) {
        out << format_decimal(trace.time[k]);
        for (const auto& channel : trace.outputs) out << ',' << format_decimal(channel[k]);
        out << '\n';
    }
}

}  // namespace twodof
