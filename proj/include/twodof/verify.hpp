#pragma once

#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "twodof/config.hpp"
#include "twodof/qmatrix.hpp"

namespace twodof {

struct InternalMap {
    std::string name;
    RatMat map;
    StabilityVerdict verdict;  // includes kImproper entries
};

struct ClosedLoopReport {
    ClosedLoopConfig::Kind kind = ClosedLoopConfig::Kind::kTwoDof;
    RatMat t_yr;
    RatMat t_ur;
    std::vector<InternalMap> internal_maps;
    bool well_posed = false;

    bool internally_stable() const;
};

/// Exact closed-loop maps of the configuration around p. Throws IllPosedLoop
/// when I - Cy*P is singular; an improper (I - Cy*P)^{-1} gives
/// well_posed = false.
ClosedLoopReport closed_loop(const RatMat& p, const ClosedLoopConfig& config);

struct Certification {
    std::vector<Certificate> checks;
    bool all_hold() const;
};

/// Exact y/r = desired test plus well-posedness and the four internal maps.
Certification certify(const ClosedLoopReport& report, const RatMat& desired_t);

/// Step responses sampled on a uniform grid; one trace per input channel,
/// `outputs[i]` holding output channel i.
struct SimulationTrace {
    std::vector<double> time;
    std::vector<std::vector<double>> outputs;
    std::string inputs;
    double step_size = 0;
};

/// Unit step on each input channel in turn, zero initial state. Throws
/// std::invalid_argument unless t is proper and stable and horizon, dt > 0.
std::vector<SimulationTrace> simulate_step(const RatMat& t, double horizon, double dt);

/// 1 / min |Re p| over the poles of t; nullopt for a constant t.
std::optional<double> dominant_time_constant(const RatMat& t);

/// t(0), exact. Throws std::invalid_argument for an unstable t and
/// std::domain_error for a pole at the origin.
QMatrix dc_gain(const RatMat& t);

/// Header `t,y1,...,yp`, decimal notation with 12 significant digits.
void write_csv(std::ostream& out, const SimulationTrace& trace);

}  // namespace twodof
