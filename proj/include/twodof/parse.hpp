#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twodof/config.hpp"
#include "twodof/ratmat.hpp"
#include "twodof/synthesis.hpp"

namespace twodof {

/// Malformed input. `position` is a 0-based character offset into the
/// expression (or kNoPosition), `line` a 1-based line in a problem file
/// (0 when not applicable).
class ParseError : public std::invalid_argument {
  public:
    static constexpr std::size_t kNoPosition = static_cast<std::size_t>(-1);
    ParseError(const std::string& message, std::size_t position = kNoPosition, std::size_t line = 0);
    std::size_t position() const { return position_; }
    std::size_t line() const { return line_; }

  private:
    std::size_t position_;
    std::size_t line_;
};

/// Rational-function expression grammar (whitespace is ignored):
///
///   expression := term (('+' | '-') term)*
///   term       := factor (('*' | '/') factor)*
///   factor     := '-' factor | base ('^' unsigned-integer)?
///   base       := 's' | integer | '(' expression ')'
///
/// A rational literal such as 3/2 is the quotient of two integer factors.
/// Unary minus binds looser than '^', so -s^2 is -(s^2). Division by an
/// expression that reduces to zero throws ParseError.
RatFn parse_rational(const std::string& text);

/// A plain-text problem description:
///
///   # comment
///   [plant]
///   (s-1)/(s+2), 1/(s+1)     <- one matrix row per line, comma separated
///   0, 1/(s+3)
///
///   [design]
///   problem = match          <- match | decouple | invert | static-decouple | assign-denominator
///   targets = 1/(s+1), 2/(s+2)
///
///   [config]
///   type = two-dof           <- two-dof | ff-fb-r | unity | feedback-direct-r
///
///   [options]
///   shift = 2
///   horizon = 10
///   dt = 0.01
///   sign = pos               <- pos | neg
///
/// Matrix sections: plant, target, m, x, lambda, d_t, cy, cr, r, cff, cfb.
/// Key-value sections: design, config, options.
struct ProblemFile {
    RatMat plant;
    std::map<std::string, RatMat> matrices;  // every matrix section except plant
    std::optional<DesignProblem::Kind> problem;
    std::vector<RatFn> targets;
    std::optional<ClosedLoopConfig::Kind> config;
    std::optional<Rational> shift;
    std::optional<double> horizon;
    std::optional<double> dt;
    std::optional<FeedbackSign> sign;

    const RatMat* matrix(const std::string& name) const;
    /// Builds the DesignProblem; throws ParseError when the design section
    /// is missing or lacks the data its problem kind needs.
    DesignProblem design() const;
};

ProblemFile parse_problem(std::istream& in);
ProblemFile parse_problem_text(const std::string& text);

/// Exact rational literal such as "2", "-3/4" or "0.25".
Rational parse_rational_number(const std::string& text);

DesignProblem::Kind parse_problem_kind(const std::string& text);
ClosedLoopConfig::Kind parse_config_kind(const std::string& text);
FeedbackSign parse_sign(const std::string& text);

}  // namespace twodof
