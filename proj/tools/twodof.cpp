#include <CLI11.hpp>

#include <iostream>

#include "twodof/cli.hpp"

namespace {

const char* describe(const std::string& c) {
    if (c == "factor") return "Coprime MFDs, RH-inf factors, zeros and poles with directions";
    if (c == "stabilize") return "Bezout identity and sample Youla stabilizing controllers";
    if (c == "match") return "Model matching: realize T = N'X' (and M = D'X' if given)";
    if (c == "decouple") return "Diagonal decoupling with the [design] targets";
    if (c == "invert") return "Inverse problem, T = I";
    if (c == "static-decouple") return "Constant Cr with T(0) = Lambda";
    if (c == "assign-denominator") return "Closed loop N D_T^-1 for the [d_t] denominator";
    if (c == "verify") return "Closed-loop algebra and internal-stability certificates";
    if (c == "simulate") return "Step response CSV of the closed loop (or [target], or the plant)";
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact two-degrees-of-freedom controller synthesis with polynomial matrix fractions"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string shift, sign, out;
    double horizon = 0, dt = 0;

    for (const std::string& name : twodof::commands()) {
        CLI::App* sub = app.add_subcommand(name, describe(name));
        sub->add_option("input", input, "Problem file ('-' for standard input)")->required();
        sub->add_option("--shift", shift, "Stable divisor s + shift for the RH-inf factors (default 1)");
        sub->add_option("--sign", sign, "Feedback sign convention for printed controllers")
            ->check(CLI::IsMember({"pos", "neg"}));
        sub->add_option("--horizon", horizon, "Simulation horizon in seconds (default: 10 dominant time constants)");
        sub->add_option("--dt", dt, "Simulation step in seconds (default: horizon / 1000)");
        sub->add_option("--out", out, "CSV output path for simulate");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : twodof::kExitInputError;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    twodof::RunOptions options;
    try {
        if (chosen->count("--shift")) options.shift = twodof::parse_rational_number(shift);
        if (chosen->count("--sign")) options.sign = twodof::parse_sign(sign);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return twodof::kExitInputError;
    }
    if (chosen->count("--horizon")) options.horizon = horizon;
    if (chosen->count("--dt")) options.dt = dt;
    if (chosen->count("--out")) options.out = out;

    const twodof::RunResult r = twodof::run_file(chosen->get_name(), input, options);
    (r.exit_code == twodof::kExitInputError ? std::cerr : std::cout) << r.report;
    return r.exit_code;
}
