#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cli/commands.hpp"

namespace {

using namespace coorbital;
using namespace coorbital::cli;

int emit(const CommandResult& result, const std::string& out_path) {
    std::cerr << result.diagnostics;
    if (result.output.empty()) {
        return result.exit_code;
    }
    if (out_path.empty()) {
        std::cout << result.output << std::flush;
        return std::cout ? result.exit_code : kIoError;
    }
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    file << result.output;
    file.close();
    if (!file) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kIoError;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central configurations of the symmetric 1+4-body coorbital problem"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    std::string out_path;
    std::string format_text = "csv";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write output to this file instead of stdout");
        sub->add_option("--format", format_text, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    std::size_t kernel_steps = 1000;
    auto* kernel_cmd = app.add_subcommand("kernel", "Tabulate f, f' and f'' on (1e-4, 2pi - 1e-4)");
    add_common(kernel_cmd);
    kernel_cmd->add_option("--steps", kernel_steps, "Number of grid points")->check(CLI::Range(2, 100000000));

    std::string tag_text;
    auto* theorem_cmd = app.add_subcommand("theorem", "Solve one degenerate case");
    add_common(theorem_cmd);
    theorem_cmd->add_option("--tag", tag_text, "Case tag")
        ->required()
        ->check(CLI::IsMember({"T32", "T33", "T34", "T35", "T36", "T37"}));

    std::string region_text;
    std::string range_text;
    std::size_t trace_steps = 10;
    auto* trace_cmd = app.add_subcommand("trace", "Trace F = 0 inside a region");
    add_common(trace_cmd);
    trace_cmd->add_option("--region", region_text, "Region")
        ->required()
        ->check(CLI::IsMember({"D1", "D2", "D3"}));
    trace_cmd->add_option("--range", range_text, "theta2 range a:b inside the region band")
        ->required();
    trace_cmd->add_option("--steps", trace_steps, "Number of theta2 values")
        ->check(CLI::Range(1, 10000000));

    std::string config_path;
    auto* verify_cmd = app.add_subcommand("verify", "Check a configuration file");
    add_common(verify_cmd);
    verify_cmd->add_option("config", config_path, "JSON file {\"thetas\": [...], \"mus\": [...]}")
        ->required();

    auto* special_cmd = app.add_subcommand("special-points", "Recompute the special points");
    add_common(special_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kIoError;
    }

    try {
        RootTolerances tol;
        if (const char* env = std::getenv("COORBITAL_TOL"); env != nullptr && *env != '\0') {
            tol = parse_tolerances(env);
        }
        const Format format = parse_format(format_text);

        if (kernel_cmd->parsed()) {
            return emit(run_kernel(kernel_steps, format, tol), out_path);
        }
        if (theorem_cmd->parsed()) {
            return emit(run_theorem(parse_theorem_tag(tag_text), format, tol), out_path);
        }
        if (trace_cmd->parsed()) {
            const auto [a, b] = parse_range(range_text);
            return emit(run_trace(parse_region(region_text), a, b, trace_steps, format, tol),
                        out_path);
        }
        if (verify_cmd->parsed()) {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot read " << config_path << "\n";
                return kIoError;
            }
            std::ostringstream text;
            text << in.rdbuf();
            return emit(run_verify(text.str(), config_path, format, tol), out_path);
        }
        return emit(run_special_points(format, tol), out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverError;
    }
}
