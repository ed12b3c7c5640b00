#pragma once

#include <string>
#include <vector>

#include "twodof/ratmat.hpp"
#include "twodof/stability.hpp"

namespace twodof {

/// The library works with u = Cy*y + Cr*r throughout. kNegative only affects
/// how controllers are presented (Cy is negated for u = -Cy*y + Cr*r).
enum class FeedbackSign { kPositive, kNegative };

/// Controller configurations. Each reduces to an equivalent two-DOF pair:
///   kTwoDof           u = Cy*y + Cr*r
///   kFfFbR            u = Cff*(R*r + Cfb*y)       -> Cy = Cff*Cfb, Cr = Cff*R
///   kUnityFeedback    u = Cff*(r + y)             -> Cy = Cr = Cff
///   kFeedbackDirectR  u = r + Cfb*y               -> Cy = Cfb, Cr = I
struct ClosedLoopConfig {
    enum class Kind { kTwoDof, kFfFbR, kUnityFeedback, kFeedbackDirectR };

    Kind kind = Kind::kTwoDof;
    RatMat cy, cr;        // kTwoDof
    RatMat r, cff, cfb;   // the blocks used by the other kinds

    static ClosedLoopConfig two_dof(RatMat cy, RatMat cr);
    static ClosedLoopConfig ff_fb_r(RatMat r, RatMat cff, RatMat cfb);
    static ClosedLoopConfig unity_feedback(RatMat cff);
    static ClosedLoopConfig feedback_direct_r(RatMat cfb);

    RatMat equivalent_cy() const;
    RatMat equivalent_cr() const;
    /// Throws std::invalid_argument if a required block is missing or the
    /// blocks do not compose, ImproperError if one is improper.
    void validate() const;
};

std::string to_string(ClosedLoopConfig::Kind k);

/// One checked condition. `verdict` is meaningful for stability conditions
/// and stays trivially stable for pure equalities. Informational checks are
/// reported but do not decide whether a design is certified.
struct Certificate {
    std::string condition;
    bool holds = false;
    StabilityVerdict verdict;
    std::string detail;
    bool informational = false;
};

Certificate stability_certificate(const std::string& condition, const StabilityVerdict& v);
Certificate equality_certificate(const std::string& condition, const RatMat& lhs, const RatMat& rhs);

}  // namespace twodof
