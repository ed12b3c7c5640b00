#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace twodof {

/// A rational matrix that had to be proper was not.
class ImproperError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// The return difference I - Cy*P is singular or has an improper inverse.
class IllPosedLoop : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// One reason a design problem has no solution (as opposed to bad input).
struct Obstruction {
    enum class Kind {
        kUnstableTarget,       // T or M itself not proper and stable
        kRank,                 // [T; M] not in the range of [N; D]
        kUnstableZero,         // plant unstable zero missing from T
        kRelativeDegree,       // causality: parameter or controller improper
        kUnstableParameter,    // a parameter that must be stable is not
        kStabilityCondition,   // configuration-specific stability restriction fails
        kSingular,             // a required inverse does not exist
        kPrecondition,         // other structural requirement
    };
    Kind kind;
    std::string message;
};

std::string to_string(Obstruction::Kind k);

/// Thrown when a design cannot be completed; carries every obstruction found.
class DesignObstruction : public std::runtime_error {
  public:
    explicit DesignObstruction(std::vector<Obstruction> items);
    const std::vector<Obstruction>& items() const { return items_; }

  private:
    std::vector<Obstruction> items_;
};

}  // namespace twodof
