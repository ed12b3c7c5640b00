#include "twodof/errors.hpp"

namespace twodof {

std::string to_string(Obstruction::Kind k) {
    switch (k) {
        case Obstruction::Kind::kUnstableTarget: return "unstable or improper target";
        case Obstruction::Kind::kRank: return "rank condition";
        case Obstruction::Kind::kUnstableZero: return "unstable-zero restriction";
        case Obstruction::Kind::kRelativeDegree: return "relative-degree restriction";
        case Obstruction::Kind::kUnstableParameter: return "unstable parameter";
        case Obstruction::Kind::kStabilityCondition: return "stability condition";
        case Obstruction::Kind::kSingular: return "singular matrix";
        case Obstruction::Kind::kPrecondition: return "precondition";
    }
    return "obstruction";
}

namespace {

std::string summarize(const std::vector<Obstruction>& items) {
    std::string s = "design obstruction";
    for (const auto& o : items) s += "; " + to_string(o.kind) + ": " + o.message;
    return s;
}

}  // namespace

DesignObstruction::DesignObstruction(std::vector<Obstruction> items)
    : std::runtime_error(summarize(items)), items_(std::move(items)) {}

}  // namespace twodof
