#include "cli/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "coorbital/errors.hpp"
#include "coorbital/kernel.hpp"
#include "coorbital/model.hpp"
#include "json.hpp"

namespace coorbital::cli {
namespace {

using json = nlohmann::json;

constexpr double kernel_delta = 1e-4;
constexpr double trace_residual_limit = 1e-10;
constexpr double verify_threshold = 1e-8;
constexpr double renormalize_limit = 1e-9;

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

std::string optional_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

json number(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return std::stod(format_number(v));
}

json number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

const char* boolean(bool b) { return b ? "true" : "false"; }

class Table {
  public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    [[nodiscard]] std::string csv() const {
        std::string out;
        append_row(out, header_);
        for (const auto& r : rows_) {
            append_row(out, r);
        }
        return out;
    }

  private:
    static void append_row(std::string& out, const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += quote(row[i]);
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

RunManifest manifest(std::string command,
                     std::vector<std::pair<std::string, std::string>> parameters,
                     const RootTolerances& tol) {
    return {std::move(command), std::move(parameters), tool_version(), tol};
}

std::string csv_manifest(const RunManifest& m) {
    std::string out = fmt::format("# command: {}\n# tool_version: {}\n", m.command, m.tool_version);
    for (const auto& [k, v] : m.parameters) {
        out += fmt::format("# parameter {}: {}\n", k, v);
    }
    out += fmt::format("# tolerance width: {}\n# tolerance residual: {}\n# tolerance max_iter: {}\n",
                       format_number(m.tolerances.width), format_number(m.tolerances.residual),
                       m.tolerances.max_iter);
    return out;
}

json json_manifest(const RunManifest& m) {
    json params = json::object();
    for (const auto& [k, v] : m.parameters) {
        params[k] = v;
    }
    return {{"command", m.command},
            {"tool_version", m.tool_version},
            {"parameters", params},
            {"tolerances",
             {{"width", number(m.tolerances.width)},
              {"residual", number(m.tolerances.residual)},
              {"max_iter", m.tolerances.max_iter}}}};
}

std::string render(const RunManifest& m, Format format, const Table& table, const json& data) {
    if (format == Format::Csv) {
        return csv_manifest(m) + table.csv();
    }
    return json{{"manifest", json_manifest(m)}, {"data", data}}.dump(2) + "\n";
}

std::string format_name(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::string join_terms(const std::vector<KernelTerm>& terms) {
    std::string out;
    for (const auto t : terms) {
        out += (out.empty() ? "" : ";") + std::string(to_string(t));
    }
    return out;
}

CommandResult failure(int code, const std::string& message) {
    return {code, {}, "error: " + message + "\n"};
}

}  // namespace

const char* tool_version() { return COORBITAL_VERSION; }

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

RootTolerances parse_tolerances(const std::string& text) {
    RootTolerances tol;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        parts.push_back(item);
    }
    if (parts.empty() || parts.size() > 3) {
        throw std::invalid_argument("COORBITAL_TOL must be width[,residual[,max_iter]]");
    }
    auto parse_positive = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || !(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("COORBITAL_TOL: '" + s + "' is not a positive number");
        }
        return v;
    };
    tol.width = parse_positive(parts[0]);
    if (parts.size() > 1) tol.residual = parse_positive(parts[1]);
    if (parts.size() > 2) {
        const double it = parse_positive(parts[2]);
        if (it != std::floor(it) || it > 1e6) {
            throw std::invalid_argument("COORBITAL_TOL: max_iter must be a whole number");
        }
        tol.max_iter = static_cast<int>(it);
    }
    return tol;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("range must be a:b, got '" + text + "'");
    }
    auto parse = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size() || !std::isfinite(v)) {
            throw std::invalid_argument("range bound '" + s + "' is not a number");
        }
        return v;
    };
    return {parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
}

CommandResult run_kernel(std::size_t grid_size, Format format, const RootTolerances& tol) {
    if (grid_size < 2) {
        return failure(kIoError, "kernel grid size must be at least 2");
    }
    const auto m = manifest("kernel",
                            {{"steps", std::to_string(grid_size)},
                             {"format", format_name(format)},
                             {"delta", format_number(kernel_delta)}},
                            tol);
    Table table({"theta", "f", "f_prime", "f_double_prime"});
    json data = json::array();
    for (double t : linear_grid(kernel_delta, two_pi - kernel_delta, grid_size)) {
        const double f = kernel::value(t);
        const double d1 = kernel::derivative(t);
        const double d2 = kernel::second_derivative(t);
        table.add({format_number(t), format_number(f), format_number(d1), format_number(d2)});
        data.push_back({{"theta", number(t)},
                        {"f", number(f)},
                        {"f_prime", number(d1)},
                        {"f_double_prime", number(d2)}});
    }
    return {kPass, render(m, format, table, data), {}};
}

CommandResult run_theorem(TheoremTag tag, Format format, const RootTolerances& tol) {
    CaseSolution s;
    try {
        s = tag == TheoremTag::T35 ? check_T35() : solve_case(tag, tol);
    } catch (const Error& e) {
        return failure(kSolverError, std::string(to_string(tag)) + ": " + e.what());
    }
    const auto m =
        manifest("theorem", {{"tag", to_string(tag)}, {"format", format_name(format)}}, tol);

    Table table({"field", "value"});
    json data;
    data["tag"] = to_string(tag);
    data["exists"] = s.exists;
    table.add({"tag", to_string(tag)});
    table.add({"exists", boolean(s.exists)});
    table.add({"theta0", optional_number(s.theta0)});
    data["theta0"] = number(s.theta0);
    if (s.config) {
        const auto& c = *s.config;
        const double angles[] = {c.theta1, c.theta2, c.theta3(), c.theta4};
        json cfg;
        for (int i = 0; i < 4; ++i) {
            const std::string key = "theta" + std::to_string(i + 1);
            table.add({key, format_number(angles[i])});
            cfg[key] = number(angles[i]);
        }
        data["config"] = cfg;
    } else {
        data["config"] = nullptr;
    }

    const auto& mc = s.mass_condition;
    json cond;
    cond["relations"] = mc.relations;
    for (const auto& r : mc.relations) {
        table.add({"relation", r});
    }
    if (!mc.ratio_name.empty()) {
        table.add({"ratio_name", mc.ratio_name});
        table.add({"ratio", format_number(mc.ratio)});
        cond["ratio_name"] = mc.ratio_name;
        cond["ratio"] = number(mc.ratio);
    }
    if (mc.compliant) {
        std::string joined;
        json mus = json::array();
        for (double mu : mc.compliant->mus()) {
            joined += (joined.empty() ? "" : ";") + format_number(mu);
            mus.push_back(number(mu));
        }
        table.add({"compliant_masses", joined});
        cond["compliant_masses"] = mus;
    }
    data["mass_condition"] = cond;
    if (s.exists) {
        table.add({"residual", format_number(s.residual)});
    }
    data["residual"] = s.exists ? number(s.residual) : json(nullptr);

    data["grids"] = json::array();
    for (std::size_t i = 0; i < s.grids.size(); ++i) {
        const auto& g = s.grids[i];
        const std::string p = "grid[" + std::to_string(i) + "].";
        table.add({p + "function", g.function});
        table.add({p + "interval", format_number(g.lo) + ":" + format_number(g.hi)});
        table.add({p + "points", std::to_string(g.points)});
        table.add({p + "min", format_number(g.min_value)});
        table.add({p + "max", format_number(g.max_value)});
        table.add({p + "argmin", format_number(g.argmin)});
        table.add({p + "monotone_decreasing", boolean(g.monotone_decreasing)});
        data["grids"].push_back({{"function", g.function},
                                 {"lo", number(g.lo)},
                                 {"hi", number(g.hi)},
                                 {"points", g.points},
                                 {"min", number(g.min_value)},
                                 {"max", number(g.max_value)},
                                 {"argmin", number(g.argmin)},
                                 {"monotone_decreasing", g.monotone_decreasing}});
    }
    data["rejected"] = json::array();
    for (std::size_t i = 0; i < s.rejected.size(); ++i) {
        const auto& r = s.rejected[i];
        const std::string p = "rejected[" + std::to_string(i) + "].";
        table.add({p + "label", r.label});
        table.add({p + "reason", r.reason});
        table.add({p + "theta", optional_number(r.theta)});
        table.add({p + "witness", format_number(r.witness)});
        data["rejected"].push_back({{"label", r.label},
                                    {"reason", r.reason},
                                    {"theta", number(r.theta)},
                                    {"witness", number(r.witness)}});
    }
    return {kPass, render(m, format, table, data), {}};
}

CommandResult run_trace(Region region, double theta2_start, double theta2_end, std::size_t steps,
                        Format format, const RootTolerances& tol) {
    if (region != Region::D1 && region != Region::D2 && region != Region::D3) {
        return failure(kIoError, "trace region must be D1, D2 or D3");
    }
    const auto [lo, hi] = region_band(region);
    if (!(theta2_start > lo && theta2_end < hi && theta2_start <= theta2_end)) {
        return failure(kIoError, fmt::format("range {}:{} is not inside the {} band ({}, {})",
                                             format_number(theta2_start),
                                             format_number(theta2_end), to_string(region),
                                             format_number(lo), format_number(hi)));
    }
    if (steps < 1) {
        return failure(kIoError, "trace needs at least one step");
    }
    const auto m = manifest("trace",
                            {{"region", to_string(region)},
                             {"range", format_number(theta2_start) + ":" + format_number(theta2_end)},
                             {"steps", std::to_string(steps)},
                             {"format", format_name(format)}},
                            tol);

    TraceOptions options;
    options.tol = tol;
    std::vector<CurvePoint> points;
    try {
        points = trace_curve(region, linear_grid(theta2_start, theta2_end, steps), options);
    } catch (const Error& e) {
        return failure(kTraceError, e.what());
    }

    Table table({"theta1", "theta2", "theta4", "lambda", "r_sum", "r_diff", "degenerate"});
    json data = json::array();
    int bad = 0;
    for (const auto& p : points) {
        if (!(std::abs(p.residual) < trace_residual_limit)) {
            ++bad;
        }
        table.add({format_number(p.theta1), format_number(p.theta2), format_number(p.theta4),
                   optional_number(p.lambda), optional_number(p.r_sum), optional_number(p.r_diff),
                   boolean(p.degenerate)});
        data.push_back({{"theta1", number(p.theta1)},
                        {"theta2", number(p.theta2)},
                        {"theta4", number(p.theta4)},
                        {"lambda", number(p.lambda)},
                        {"r_sum", number(p.r_sum)},
                        {"r_diff", number(p.r_diff)},
                        {"degenerate", p.degenerate}});
    }
    CommandResult result{kPass, render(m, format, table, data), {}};
    if (bad > 0) {
        result.exit_code = kTraceError;
        result.diagnostics = fmt::format("error: {} traced point(s) have |F| >= {}\n", bad,
                                         format_number(trace_residual_limit));
    }
    return result;
}

CommandResult run_verify(const std::string& document, const std::string& source, Format format,
                         const RootTolerances& tol) {
    std::vector<double> thetas;
    std::vector<double> mus;
    try {
        const json doc = json::parse(document);
        if (!doc.is_object() || !doc.contains("thetas") || !doc.contains("mus")) {
            return failure(kIoError, "config must be an object with \"thetas\" and \"mus\" arrays");
        }
        for (const char* key : {"thetas", "mus"}) {
            const auto& arr = doc.at(key);
            if (!arr.is_array() ||
                !std::all_of(arr.begin(), arr.end(), [](const json& v) { return v.is_number(); })) {
                return failure(kIoError, std::string("\"") + key + "\" must be an array of numbers");
            }
        }
        thetas = doc.at("thetas").get<std::vector<double>>();
        mus = doc.at("mus").get<std::vector<double>>();
    } catch (const json::exception& e) {
        return failure(kIoError, std::string("malformed JSON: ") + e.what());
    }

    if (thetas.size() < 3) {
        return failure(kIoError, "need at least 3 angles");
    }
    if (thetas.size() != mus.size()) {
        return failure(kIoError, fmt::format("length mismatch: {} angles, {} masses", thetas.size(),
                                             mus.size()));
    }
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!(thetas[i] > 0.0)) {
            return failure(kIoError, fmt::format("positivity: theta[{}] = {} is not positive", i,
                                                 format_number(thetas[i])));
        }
        if (!(mus[i] > 0.0)) {
            return failure(kIoError, fmt::format("positivity: mu[{}] = {} is not positive", i,
                                                 format_number(mus[i])));
        }
    }
    double sum = 0.0;
    for (double t : thetas) sum += t;
    const double deviation = sum - two_pi;
    std::string diagnostics;
    bool renormalized = false;
    if (std::abs(deviation) > AngleConfig::sum_tolerance) {
        if (std::abs(deviation) > renormalize_limit) {
            return failure(kIoError, fmt::format("angle sum: thetas sum to {}, off 2pi by {}",
                                                 format_number(sum), format_number(deviation)));
        }
        for (double& t : thetas) t *= two_pi / sum;
        renormalized = true;
        diagnostics = fmt::format("warning: angle sum off 2pi by {}; angles renormalized\n",
                                  format_number(deviation));
    }

    std::vector<double> residual;
    try {
        residual = residual_general(AngleConfig(thetas), MassVector(mus));
    } catch (const DomainError& e) {
        return failure(kIoError, e.what());
    }
    double worst = 0.0;
    for (double r : residual) worst = std::max(worst, std::abs(r));
    const bool pass = worst < verify_threshold;

    const auto m = manifest("verify", {{"config", source}, {"format", format_name(format)}}, tol);
    Table table({"quantity", "value"});
    table.add({"n", std::to_string(thetas.size())});
    table.add({"angle_sum_deviation", format_number(deviation)});
    table.add({"renormalized", boolean(renormalized)});
    json res = json::array();
    for (std::size_t i = 0; i < residual.size(); ++i) {
        table.add({"residual[" + std::to_string(i) + "]", format_number(residual[i])});
        res.push_back(number(residual[i]));
    }
    table.add({"max_residual", format_number(worst)});
    table.add({"threshold", format_number(verify_threshold)});
    table.add({"verdict", pass ? "PASS" : "FAIL"});
    const json data = {{"n", thetas.size()},
                       {"angle_sum_deviation", number(deviation)},
                       {"renormalized", renormalized},
                       {"residuals", res},
                       {"max_residual", number(worst)},
                       {"threshold", number(verify_threshold)},
                       {"verdict", pass ? "PASS" : "FAIL"}};
    return {pass ? kPass : kVerifyFail, render(m, format, table, data), diagnostics};
}

CommandResult run_special_points(Format format, const RootTolerances& tol) {
    TraceOptions options;
    options.tol = tol;
    SpecialPointCatalog catalog;
    try {
        catalog = compute_special_points(options);
    } catch (const Error& e) {
        return failure(kSolverError, e.what());
    }
    const auto m = manifest("special-points", {{"format", format_name(format)}}, tol);
    Table table({"name", "kind", "theta1", "theta2", "ref_theta1", "ref_theta2", "delta",
                 "collision", "degenerate", "vanishing", "note"});
    json data = json::array();
    for (const auto& p : catalog.points) {
        const char* kind = p.kind == PointKind::Endpoint ? "endpoint" : "interior";
        table.add({p.name, kind, format_number(p.theta1), format_number(p.theta2),
                   format_number(p.ref_theta1), format_number(p.ref_theta2),
                   format_number(p.delta()), boolean(p.collision), boolean(p.degenerate),
                   join_terms(p.vanishing), p.note});
        json vanishing = json::array();
        for (auto t : p.vanishing) vanishing.push_back(to_string(t));
        data.push_back({{"name", p.name},
                        {"kind", kind},
                        {"theta1", number(p.theta1)},
                        {"theta2", number(p.theta2)},
                        {"ref_theta1", number(p.ref_theta1)},
                        {"ref_theta2", number(p.ref_theta2)},
                        {"delta", number(p.delta())},
                        {"collision", p.collision},
                        {"degenerate", p.degenerate},
                        {"vanishing", vanishing},
                        {"note", p.note}});
    }
    CommandResult result{kPass, render(m, format, table, data), {}};
    if (!catalog.matches()) {
        result.exit_code = kCatalogError;
        for (const auto& p : catalog.points) {
            if (p.delta() > SpecialPointCatalog::tolerance) {
                result.diagnostics += fmt::format("error: {} deviates from its reference by {}\n",
                                                  p.name, format_number(p.delta()));
            }
        }
    }
    return result;
}

}  // namespace coorbital::cli
