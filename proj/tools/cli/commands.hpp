#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "coorbital/curve.hpp"
#include "coorbital/rootfind.hpp"
#include "coorbital/symmetric.hpp"

namespace coorbital::cli {

enum ExitCode : int {
    kPass = 0,
    kVerifyFail = 1,
    kIoError = 2,
    kSolverError = 3,
    kTraceError = 4,
    kCatalogError = 5,
};

enum class Format { Csv, Json };

/// "csv" or "json"; throws std::invalid_argument otherwise.
Format parse_format(const std::string& text);

/// Header written into every output: CSV comment lines or the JSON
/// "manifest" object.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string tool_version;
    RootTolerances tolerances;
};

struct CommandResult {
    int exit_code = kPass;
    std::string output;       ///< file or stdout payload
    std::string diagnostics;  ///< stderr text, possibly empty
};

const char* tool_version();

/// 12 significant digits, the format used for every numeric field.
std::string format_number(double value);

/// Parses "width[,residual[,max_iter]]" as found in COORBITAL_TOL.
/// Throws std::invalid_argument on malformed or non-positive values.
RootTolerances parse_tolerances(const std::string& text);

/// Parses "a:b" into (a, b); throws std::invalid_argument.
std::pair<double, double> parse_range(const std::string& text);

CommandResult run_kernel(std::size_t grid_size, Format format, const RootTolerances& tol);
CommandResult run_theorem(TheoremTag tag, Format format, const RootTolerances& tol);
CommandResult run_trace(Region region, double theta2_start, double theta2_end, std::size_t steps,
                        Format format, const RootTolerances& tol);
/// `document` is the JSON text {"thetas": [...], "mus": [...]}; `source`
/// names it in the manifest.
CommandResult run_verify(const std::string& document, const std::string& source, Format format,
                         const RootTolerances& tol);
CommandResult run_special_points(Format format, const RootTolerances& tol);

}  // namespace coorbital::cli
