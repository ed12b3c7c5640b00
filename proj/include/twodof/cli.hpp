#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twodof/parse.hpp"

namespace twodof {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitObstruction = 2;

/// Command-line settings; each one, when present, overrides the problem
/// file's [options] section.
struct RunOptions {
    std::optional<Rational> shift;
    std::optional<FeedbackSign> sign;
    std::optional<double> horizon;
    std::optional<double> dt;
    std::optional<std::string> out;  // CSV path for `simulate`
};

struct RunResult {
    int exit_code = kExitOk;
    std::string report;
    std::vector<std::string> written_files;
};

/// The subcommands, in the order they are documented.
const std::vector<std::string>& commands();

/// Run one subcommand on a parsed problem. Never throws for bad input or
/// design obstructions; those become exit codes 1 and 2 with the reason in
/// the report.
RunResult run(const std::string& command, const ProblemFile& problem, const RunOptions& options = {});

/// Parse the file at `path` (or standard input for "-") and run.
RunResult run_file(const std::string& command, const std::string& path, const RunOptions& options = {});

/// CSV name for input channel j (0-based) out of `inputs`: the path itself
/// for a single input, otherwise "name_u<j+1>.ext".
std::string channel_csv_path(const std::string& path, std::size_t j, std::size_t inputs);

}  // namespace twodof
