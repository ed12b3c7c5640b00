#include "twodof/config.hpp"

#include <stdexcept>

#include "twodof/errors.hpp"

namespace twodof {

ClosedLoopConfig ClosedLoopConfig::two_dof(RatMat cy, RatMat cr) {
    ClosedLoopConfig c;
    c.kind = Kind::kTwoDof;
    c.cy = std::move(cy);
    c.cr = std::move(cr);
    return c;
}

ClosedLoopConfig ClosedLoopConfig::ff_fb_r(RatMat r, RatMat cff, RatMat cfb) {
    ClosedLoopConfig c;
    c.kind = Kind::kFfFbR;
    c.r = std::move(r);
    c.cff = std::move(cff);
    c.cfb = std::move(cfb);
    return c;
}

ClosedLoopConfig ClosedLoopConfig::unity_feedback(RatMat cff) {
    ClosedLoopConfig c;
    c.kind = Kind::kUnityFeedback;
    c.cff = std::move(cff);
    return c;
}

ClosedLoopConfig ClosedLoopConfig::feedback_direct_r(RatMat cfb) {
    ClosedLoopConfig c;
    c.kind = Kind::kFeedbackDirectR;
    c.cfb = std::move(cfb);
    return c;
}

RatMat ClosedLoopConfig::equivalent_cy() const {
    switch (kind) {
        case Kind::kTwoDof: return cy;
        case Kind::kFfFbR: return cff * cfb;
        case Kind::kUnityFeedback: return cff;
        case Kind::kFeedbackDirectR: return cfb;
    }
    return cy;
}

RatMat ClosedLoopConfig::equivalent_cr() const {
    switch (kind) {
        case Kind::kTwoDof: return cr;
        case Kind::kFfFbR: return cff * r;
        case Kind::kUnityFeedback: return cff;
        case Kind::kFeedbackDirectR: return to_ratmat(PolyMat::identity(cfb.rows()));
    }
    return cr;
}

void ClosedLoopConfig::validate() const {
    auto need = [this](const RatMat& m, const char* name) {
        if (m.rows() == 0 || m.cols() == 0)
            throw std::invalid_argument(to_string(kind) + " configuration needs block " + name);
        if (!ratmat_is_proper(m)) throw ImproperError(std::string("block ") + name + " is improper: " + str(m));
    };
    switch (kind) {
        case Kind::kTwoDof:
            need(cy, "Cy");
            need(cr, "Cr");
            if (cy.rows() != cr.rows()) throw std::invalid_argument("Cy and Cr must have the same number of rows");
            break;
        case Kind::kFfFbR:
            need(r, "R");
            need(cff, "Cff");
            need(cfb, "Cfb");
            if (cff.cols() != r.rows() || cff.cols() != cfb.rows())
                throw std::invalid_argument("Cff, R and Cfb do not compose");
            break;
        case Kind::kUnityFeedback: need(cff, "Cff"); break;
        case Kind::kFeedbackDirectR: need(cfb, "Cfb"); break;
    }
}

std::string to_string(ClosedLoopConfig::Kind k) {
    switch (k) {
        case ClosedLoopConfig::Kind::kTwoDof: return "two-dof";
        case ClosedLoopConfig::Kind::kFfFbR: return "ff-fb-r";
        case ClosedLoopConfig::Kind::kUnityFeedback: return "unity";
        case ClosedLoopConfig::Kind::kFeedbackDirectR: return "feedback-direct-r";
    }
    return "unknown";
}

Certificate stability_certificate(const std::string& condition, const StabilityVerdict& v) {
    return {condition, v.stable, v, v.stable ? std::string() : v.describe()};
}

Certificate equality_certificate(const std::string& condition, const RatMat& lhs, const RatMat& rhs) {
    Certificate c;
    c.condition = condition;
    c.holds = lhs == rhs;
    if (!c.holds) c.detail = "lhs = " + str(lhs) + ", rhs = " + str(rhs);
    return c;
}

}  // namespace twodof
