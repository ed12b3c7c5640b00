#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twodof/config.hpp"
#include "twodof/errors.hpp"
#include "twodof/factor.hpp"
#include "twodof/qmatrix.hpp"
#include "twodof/stabilize.hpp"

namespace twodof {

/// One design request. Only the fields of the chosen kind are used.
struct DesignProblem {
    enum class Kind { kModelMatching, kDiagonalDecoupling, kInverse, kStaticDecoupling, kDenominatorAssignment };

    Kind kind = Kind::kModelMatching;
    RatMat t;                    // kModelMatching
    std::optional<RatMat> m;     // kModelMatching, optional
    std::vector<RatFn> targets;  // kDiagonalDecoupling
    QMatrix lambda;              // kStaticDecoupling
    PolyMat d_t;                 // kDenominatorAssignment

    /// Throws std::invalid_argument if the data does not fit a p x m plant.
    void validate(std::size_t p, std::size_t m) const;
};

std::string to_string(DesignProblem::Kind k);

struct DesignResult {
    /// "X'" when x is relative to the RH-inf factors (N', D'), "X" for the
    /// polynomial factors (N, D).
    std::string parameter_name = "X'";
    RatMat x;
    TwoDofController controller;
    RatMat achieved_t;  // N' X' (or N X)
    RatMat achieved_m;  // D' X' (or D X)
    ClosedLoopConfig configuration;
    std::vector<Certificate> certificates;

    bool certified() const;
};

struct Realizability {
    std::optional<RatMat> x;  // set iff realizable
    RatMat m;                 // D*X when x is set
    std::vector<Obstruction> obstructions;

    bool realizable() const { return x.has_value(); }
};

/// Solve N*X = T (and D*X = M when given) through the Hermite form of N
/// (or of [N; D]). Throws std::invalid_argument on dimension mismatch; every
/// other failure is an obstruction in the result.
Realizability check_realizable(const RightMFD& mfd, const RatMat& t, const std::optional<RatMat>& m = std::nullopt);
/// Same, returning X' = divisor * X for the RH-inf factors.
Realizability check_realizable(const StableMFD& mfd, const RatMat& t, const std::optional<RatMat>& m = std::nullopt);

/// Build a controller of the requested configuration around a realizable
/// stable parameter X'. Throws DesignObstruction if the configuration cannot
/// realize it with internal stability.
DesignResult realize_parameter(const StableMFD& mfd, const RatMat& xprime,
                               ClosedLoopConfig::Kind kind = ClosedLoopConfig::Kind::kTwoDof);

DesignResult model_matching(const StableMFD& mfd, const RatMat& t, const std::optional<RatMat>& m = std::nullopt,
                            ClosedLoopConfig::Kind kind = ClosedLoopConfig::Kind::kTwoDof);

/// X' = N'^{-1} diag(targets).
DesignResult diagonal_decoupling(const StableMFD& mfd, const std::vector<RatFn>& targets,
                                 ClosedLoopConfig::Kind kind = ClosedLoopConfig::Kind::kTwoDof);

/// T = I, X' = N'^{-1}.
DesignResult inverse_problem(const StableMFD& mfd, ClosedLoopConfig::Kind kind = ClosedLoopConfig::Kind::kTwoDof);

/// Constant Cr with T(0) = lambda. Stable plants get Cy = 0 and
/// Cr = P(0)^{-1} lambda; unstable plants are first stabilized by the central
/// controller and then Cr = [P (I - Cy P)^{-1}](0)^{-1} lambda.
DesignResult static_decoupling(const StableMFD& mfd, const QMatrix& lambda);

/// Unity feedback with X = D_T^{-1}: Cff = D (D_T + N)^{-1}, valid iff
/// (D_T + N) D^{-1} is stable.
DesignResult denominator_assignment_unity(const RightMFD& mfd, const PolyMat& d_t);

/// Feedback with direct reference: Cfb = (D - D_T) N^{-1}.
DesignResult denominator_assignment_fig5(const RightMFD& mfd, const PolyMat& d_t);

/// (I + X'N') D'^{-1} proper and stable. For SISO plants the verdict is
/// cross-checked against the Diophantine form of the same condition.
StabilityVerdict unity_feedback_admissible(const StableMFD& mfd, const RatMat& xprime);

/// SISO form of the unity-feedback restriction. With N' = a/b, D' = c/e and
/// X' = nx/dx (all reduced): b*dx + a*nx = c_u * p, c_u the unstable part
/// of c.
struct UnityDiophantine {
    Poly lhs;
    Poly unstable_part;
    std::optional<Poly> p;

    bool holds() const { return p.has_value(); }
};
UnityDiophantine unity_diophantine(const StableMFD& mfd, const RatFn& xprime);

struct UnityWitness {
    RatFn xprime;
    Poly dx, nx, p;
};

/// Search for a nonzero admissible X' = nx/dx. With `dx` given only that
/// denominator is tried; otherwise dx = (s + shift)^k for k = 0..max_degree.
/// Within each dx the degree of nx grows from 0, so the first hit is minimal.
std::optional<UnityWitness> solve_unity_diophantine(const StableMFD& mfd, const std::optional<Poly>& dx = std::nullopt,
                                                    int max_degree = 6);

/// Cff = [(I + X'N') D'^{-1}]^{-1} X'. Throws DesignObstruction when X' is
/// not admissible for unity feedback.
RatMat unity_feedback_controller(const StableMFD& mfd, const RatMat& xprime);

struct Fig3Blocks {
    RatMat r;
    RatMat cff;
    RatMat cfb;
    RatMat dc;  // Cff^{-1}, stable
};

/// Left RH-inf factorization [Cy, Cr] = Dc^{-1} [N'y, N'r]; returns
/// R = N'r, Cff = Dc^{-1}, Cfb = N'y. Throws ImproperError for an improper
/// controller.
Fig3Blocks fig3_realization(const TwoDofController& controller, const Rational& shift = 1);

/// Cfb = X^{-1} (X D - I) N^{-1}. Throws DesignObstruction if N or X is
/// singular or X is unstable.
RatMat fig5_feedback_from_x(const RightMFD& mfd, const RatMat& x);

/// With P = n/d and S = 1 + T (positive feedback) or 1 - T (negative):
/// S/d and T/n must both be stable.
StabilityVerdict siso_conditions(const RatFn& p, const RatFn& t, FeedbackSign sign = FeedbackSign::kPositive);

/// Dispatch a design problem for the plant and configuration.
DesignResult solve_design(const RatMat& plant, const DesignProblem& problem, ClosedLoopConfig::Kind kind,
                          const Rational& shift = 1);

/// "+1", "0", "-2", or "root of s^2-2 near 1.414..." for irrational zeros.
std::string describe_location(const ZeroEntry& z);

}  // namespace twodof
