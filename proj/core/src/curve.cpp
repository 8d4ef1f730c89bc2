#include "coorbital/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "coorbital/errors.hpp"
#include "coorbital/kernel.hpp"
#include "coorbital/symmetric.hpp"

namespace coorbital {

const char* to_string(Region region) {
    switch (region) {
        case Region::D1: return "D1";
        case Region::D2: return "D2";
        case Region::D3: return "D3";
        case Region::D4: return "D4";
        case Region::Boundary: return "BOUNDARY";
        case Region::Outside: return "OUTSIDE";
    }
    return "?";
}

Region parse_region(const std::string& text) {
    if (text == "D1") return Region::D1;
    if (text == "D2") return Region::D2;
    if (text == "D3") return Region::D3;
    throw std::invalid_argument("unknown region '" + text + "' (expected D1, D2 or D3)");
}

std::pair<double, double> region_band(Region region) {
    switch (region) {
        case Region::D1: return {0.0, pi / 3.0};
        case Region::D2: return {pi / 3.0, pi};
        case Region::D3: return {pi, 5.0 * pi / 3.0};
        case Region::D4: return {5.0 * pi / 3.0, two_pi};
        default: break;
    }
    throw std::invalid_argument("region_band: not a band region");
}

namespace {

void check_strip(double theta1, double theta2) {
    if (!(theta1 > 0.0 && theta1 < pi) || !(theta2 > 0.0) ||
        !(2.0 * theta1 + theta2 < two_pi)) {
        throw DomainError("curve: (" + std::to_string(theta1) + ", " + std::to_string(theta2) +
                          ") is outside the strip");
    }
}

constexpr double boundary_tol = 1e-9;
constexpr double denominator_tol = 1e-12;
constexpr double degenerate_tol = 1e-9;

}  // namespace

double curve_function(double theta1, double theta2) {
    check_strip(theta1, theta2);
    const double f1 = kernel::value(theta1);
    const double f12 = kernel::value(theta1 + theta2);
    return f1 * f1 - f12 * f12 -
           kernel::value(theta2) * kernel::value(two_pi - 2.0 * theta1 - theta2);
}

Region classify_region(double theta1, double theta2) {
    check_strip(theta1, theta2);
    for (double edge : {pi / 3.0, pi, 5.0 * pi / 3.0}) {
        if (std::abs(theta2 - edge) < boundary_tol) {
            return Region::Boundary;
        }
    }
    const double d = kernel::value(theta1) - kernel::value(theta1 + theta2);
    if (std::abs(d) < boundary_tol) {
        return Region::Boundary;
    }
    if (theta2 < pi / 3.0) return d < 0.0 ? Region::D1 : Region::Outside;
    if (theta2 < pi) return d > 0.0 ? Region::D2 : Region::Outside;
    if (theta2 < 5.0 * pi / 3.0) return d < 0.0 ? Region::D3 : Region::Outside;
    return d > 0.0 ? Region::D4 : Region::Outside;
}

double lambda_ratio(double theta1, double theta2) {
    check_strip(theta1, theta2);
    const double den = kernel::value(theta1) - kernel::value(theta1 + theta2);
    if (std::abs(den) < denominator_tol) {
        throw DegenerateDenominator("lambda: f(theta1) - f(theta1 + theta2) vanishes");
    }
    return kernel::value(theta2) / den;
}

std::pair<double, double> mass_ratio_pair(double theta1, double theta2) {
    check_strip(theta1, theta2);
    const double f4 = kernel::value(two_pi - 2.0 * theta1 - theta2);
    if (std::abs(f4) < denominator_tol) {
        throw DegenerateDenominator("mass ratios: f(theta4) vanishes");
    }
    const double f1 = kernel::value(theta1);
    const double f12 = kernel::value(theta1 + theta2);
    return {(f1 + f12) / f4, (f1 - f12) / f4};
}

CurvePoint make_curve_point(double theta1, double theta2) {
    check_strip(theta1, theta2);
    const SymmetricConfig sym = SymmetricConfig::from_pair(theta1, theta2);
    const KernelValues kv = kernel_values(sym);

    CurvePoint p;
    p.theta1 = theta1;
    p.theta2 = theta2;
    p.theta4 = sym.theta4;
    p.region = classify_region(theta1, theta2);
    p.residual = kv.f1 * kv.f1 - kv.f12 * kv.f12 - kv.f2 * kv.f4;
    const double den = kv.f1 - kv.f12;
    if (std::abs(den) >= denominator_tol) {
        p.lambda = kv.f2 / den;
    }
    if (std::abs(kv.f4) >= denominator_tol) {
        p.r_sum = (kv.f1 + kv.f12) / kv.f4;
        p.r_diff = (kv.f1 - kv.f12) / kv.f4;
    }
    p.vanishing = vanishing_terms(kv, degenerate_tol);
    p.degenerate = !p.vanishing.empty();
    return p;
}

std::vector<double> curve_roots(double theta2, const TraceOptions& options) {
    const double lo = options.inset;
    const double hi = std::min(pi, pi - 0.5 * theta2) - options.inset;
    if (!(theta2 > 0.0) || !(hi > lo)) {
        return {};
    }
    auto fn = [theta2](double t1) { return curve_function(t1, theta2); };
    std::vector<double> roots;
    for (const Bracket& b : scan_brackets(fn, lo, hi, options.cells, options.tol.residual)) {
        const RootResult r = bracket_root(fn, b, options.tol);
        if (r.converged) {
            roots.push_back(r.root);
        }
    }
    return roots;
}

std::vector<double> linear_grid(double start, double end, std::size_t steps) {
    if (steps == 0) {
        return {};
    }
    if (steps == 1) {
        return {start};
    }
    std::vector<double> out(steps);
    const double h = (end - start) / static_cast<double>(steps - 1);
    for (std::size_t k = 0; k < steps; ++k) {
        out[k] = (k + 1 == steps) ? end : start + h * static_cast<double>(k);
    }
    return out;
}

namespace {

std::vector<CurvePoint> trace_one(Region region, double theta2, const TraceOptions& options) {
    std::vector<CurvePoint> out;
    for (double t1 : curve_roots(theta2, options)) {
        CurvePoint p = make_curve_point(t1, theta2);
        if (p.region == region || p.region == Region::Boundary) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace

std::vector<CurvePoint> trace_curve(Region region, std::span<const double> theta2_grid,
                                    const TraceOptions& options) {
    if (region != Region::D1 && region != Region::D2 && region != Region::D3) {
        throw std::invalid_argument("trace_curve: region must be D1, D2 or D3");
    }
    const std::size_t n = theta2_grid.size();
    std::vector<std::vector<CurvePoint>> slots(n);

    unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));

    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            slots[i] = trace_one(region, theta2_grid[i], options);
        }
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += threads) {
                        slots[i] = trace_one(region, theta2_grid[i], options);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    std::vector<CurvePoint> out;
    for (auto& slot : slots) {
        for (auto& p : slot) {
            out.push_back(std::move(p));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) {
        if (a.theta2 != b.theta2) return a.theta2 < b.theta2;
        return a.theta1 < b.theta1;
    });
    return out;
}

CurvePoint locate_ratio_pole(Region region, double theta2_lo, double theta2_hi,
                             double theta1_hint, const TraceOptions& options) {
    auto branch_theta1 = [&](double theta2) {
        double best = std::nan("");
        for (double t1 : curve_roots(theta2, options)) {
            const Region r = classify_region(t1, theta2);
            if (r != region && r != Region::Boundary) {
                continue;
            }
            if (std::isnan(best) || std::abs(t1 - theta1_hint) < std::abs(best - theta1_hint)) {
                best = t1;
            }
        }
        if (std::isnan(best)) {
            throw SolverError("locate_ratio_pole: branch lost at theta2 = " +
                              std::to_string(theta2));
        }
        return best;
    };
    auto f4_along = [&](double theta2) {
        const double t1 = branch_theta1(theta2);
        return kernel::value(two_pi - 2.0 * t1 - theta2);
    };
    const RootResult r = bracket_root(f4_along, theta2_lo, theta2_hi, options.tol);
    if (!r.converged) {
        throw SolverError("locate_ratio_pole: did not converge");
    }
    return make_curve_point(branch_theta1(r.root), r.root);
}

double SpecialPoint::delta() const {
    return std::max(std::abs(theta1 - ref_theta1), std::abs(theta2 - ref_theta2));
}

const SpecialPoint& SpecialPointCatalog::at(const std::string& name) const {
    for (const auto& p : points) {
        if (p.name == name) {
            return p;
        }
    }
    throw std::out_of_range("special point '" + name + "' not in catalog");
}

bool SpecialPointCatalog::matches() const {
    return std::all_of(points.begin(), points.end(),
                       [](const SpecialPoint& p) { return p.delta() <= tolerance; });
}

namespace {

// x(h) = x0 + a h + b h^2 sampled at h, h/10, h/100.
double richardson(double x1, double x2, double x3) {
    const double r12 = (10.0 * x2 - x1) / 9.0;
    const double r23 = (10.0 * x3 - x2) / 9.0;
    return (100.0 * r23 - r12) / 99.0;
}

struct Branches {
    std::array<double, 3> lower;  // D-branch
    std::array<double, 3> upper;  // C-branch
};

constexpr std::array<double, 3> limit_steps{1e-2, 1e-3, 1e-4};

// The two D1 roots at theta2 = h for the limit steps.
Branches d1_near_zero(const TraceOptions& options) {
    Branches b{};
    for (std::size_t k = 0; k < limit_steps.size(); ++k) {
        const double h = limit_steps[k];
        std::vector<double> in_region;
        for (double t1 : curve_roots(h, options)) {
            if (classify_region(t1, h) == Region::D1) {
                in_region.push_back(t1);
            }
        }
        if (in_region.size() != 2) {
            throw SolverError("special points: expected two D1 branches at theta2 = " +
                              std::to_string(h));
        }
        b.lower[k] = in_region[0];
        b.upper[k] = in_region[1];
    }
    return b;
}

SpecialPoint make_point(std::string name, PointKind kind, double t1, double t2, double ref1,
                        double ref2, std::string note, bool collision = false) {
    SpecialPoint p;
    p.name = std::move(name);
    p.kind = kind;
    p.theta1 = t1;
    p.theta2 = t2;
    p.ref_theta1 = ref1;
    p.ref_theta2 = ref2;
    p.collision = collision;
    p.note = std::move(note);
    if (!collision) {
        p.vanishing = vanishing_terms(kernel_values(SymmetricConfig::from_pair(t1, t2)),
                                      degenerate_tol);
        p.degenerate = !p.vanishing.empty();
    }
    return p;
}

}  // namespace

SpecialPointCatalog compute_special_points(const TraceOptions& options) {
    SpecialPointCatalog cat;
    auto& pts = cat.points;

    const CaseSolution t36 = solve_T36(options.tol);
    const double a1 = *t36.theta0;
    pts.push_back(make_point("A", PointKind::Endpoint, a1, pi / 3.0, 1.4127, pi / 3.0,
                             "T36 configuration; common end of AC and AB"));

    const Branches d1 = d1_near_zero(options);
    auto reflect = [](const std::array<double, 3>& t1) {
        std::array<double, 3> t2{};
        for (std::size_t k = 0; k < 3; ++k) {
            t2[k] = two_pi - 2.0 * t1[k] - limit_steps[k];
        }
        return t2;
    };
    const double c1 = richardson(d1.upper[0], d1.upper[1], d1.upper[2]);
    const double d1x = richardson(d1.lower[0], d1.lower[1], d1.lower[2]);
    const auto up_reflected = reflect(d1.upper);
    const auto low_reflected = reflect(d1.lower);
    const double b2 = richardson(up_reflected[0], up_reflected[1], up_reflected[2]);
    const double h2 = richardson(low_reflected[0], low_reflected[1], low_reflected[2]);

    pts.push_back(make_point("B", PointKind::Endpoint, c1, b2, pi / 2.0, pi,
                             "end of AB as theta2 -> pi (theta4 -> 0); mirror of C", true));
    pts.push_back(make_point("C", PointKind::Endpoint, c1, 0.0, pi / 2.0, 0.0,
                             "end of AC as theta2 -> 0", true));
    pts.push_back(make_point("D", PointKind::Endpoint, d1x, 0.0, pi / 6.0, 0.0,
                             "end of DE as theta2 -> 0", true));

    // On theta2 = pi/3 the DE branch closes where f(theta1) + f(theta1 + pi/3) = 0.
    auto e_equation = [](double t) { return kernel::value(t) + kernel::value(t + pi / 3.0); };
    const auto e_brackets = scan_brackets(e_equation, 1e-9, pi / 3.0, 2000, options.tol.residual);
    if (e_brackets.size() != 1) {
        throw SolverError("special points: expected one root for E");
    }
    const double e1 = bracket_root(e_equation, e_brackets.front(), options.tol).root;
    pts.push_back(make_point("E", PointKind::Endpoint, e1, pi / 3.0, 0.8167, pi / 3.0,
                             "end of DE on theta2 = pi/3"));

    // On theta2 = pi, f(theta2) = 0 and F reduces to f^2(t1) - f^2(t1 + pi); the
    // root away from the theta4 = 0 corner lies on the arc joining E and G.
    std::vector<double> on_pi;
    for (double t1 : curve_roots(pi, options)) {
        if (t1 < pi / 2.0 - 1e-3) {
            on_pi.push_back(t1);
        }
    }
    if (on_pi.size() != 1) {
        throw SolverError("special points: expected one root on theta2 = pi");
    }
    const double f1 = on_pi.front();
    const Region neighbour = classify_region(f1, pi - 1e-3);
    pts.push_back(make_point("F_pt", PointKind::Endpoint, f1, pi, 0.8413, pi,
                             std::string("on theta2 = pi; neighbouring branch points are ") +
                                 to_string(neighbour) + " (E-G arc of the D-E-G-H branch)"));

    pts.push_back(make_point("G", PointKind::Endpoint, e1, 5.0 * pi / 3.0 - 2.0 * e1, 0.8167,
                             3.6026, "end of GH; mirror of E under theta2 <-> theta4"));
    pts.push_back(make_point("H", PointKind::Endpoint, d1x, h2, pi / 6.0, 5.0 * pi / 3.0,
                             "end of GH as theta2 -> 5pi/3 (theta4 -> 0); mirror of D", true));

    const CaseSolution t32 = solve_T32(options.tol);
    const double j1 = *t32.theta0;
    pts.push_back(make_point("J", PointKind::Interior, j1, t32.config->theta2, 0.6281, 0.4191,
                             "T32 configuration"));
    const CaseSolution t33 = solve_T33(options.tol);
    pts.push_back(make_point("K", PointKind::Interior, t33.config->theta1, t33.config->theta2,
                             pi / 2.0, pi / 2.0, "T33 configuration (square)"));
    const CaseSolution t34 = solve_T34(options.tol);
    pts.push_back(make_point("L", PointKind::Interior, t34.config->theta1, t34.config->theta2,
                             0.6281, 4.6079, "T34 configuration"));
    const CaseSolution t37 = solve_T37(options.tol);
    pts.push_back(make_point("M", PointKind::Interior, t37.config->theta1, t37.config->theta2,
                             1.4127, 2.4106, "T37 configuration"));
    return cat;
}

SpecialPointCatalog special_points(const TraceOptions& options) {
    SpecialPointCatalog cat = compute_special_points(options);
    for (const auto& p : cat.points) {
        if (p.delta() > SpecialPointCatalog::tolerance) {
            throw CatalogMismatch("special point " + p.name + " deviates by " +
                                  std::to_string(p.delta()));
        }
    }
    return cat;
}

}  // namespace coorbital
