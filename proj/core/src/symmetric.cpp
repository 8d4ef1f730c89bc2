#include "coorbital/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "coorbital/errors.hpp"
#include "coorbital/kernel.hpp"

namespace coorbital {

const char* to_string(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::T32: return "T32";
        case TheoremTag::T33: return "T33";
        case TheoremTag::T34: return "T34";
        case TheoremTag::T35: return "T35";
        case TheoremTag::T36: return "T36";
        case TheoremTag::T37: return "T37";
    }
    return "?";
}

TheoremTag parse_theorem_tag(const std::string& text) {
    for (TheoremTag t : {TheoremTag::T32, TheoremTag::T33, TheoremTag::T34, TheoremTag::T35,
                         TheoremTag::T36, TheoremTag::T37}) {
        if (text == to_string(t)) {
            return t;
        }
    }
    throw std::invalid_argument("unknown theorem tag '" + text + "'");
}

double t32_equation(double theta) {
    const double f = kernel::value(theta);
    return f * f - kernel::value(pi / 3.0 - theta) * kernel::value(5.0 * pi / 3.0 - theta);
}

double t33_opposite_sign_equation(double theta) {
    const double s = std::sin(0.5 * theta);
    const double c = std::cos(0.5 * theta);
    return 1.0 / (s * s * s) + 1.0 / (c * c * c) - 16.0;
}

double t35_equation(double theta2) {
    const double g = kernel::value(pi / 3.0 + theta2);
    return kernel::value(theta2) * kernel::value(4.0 * pi / 3.0 - theta2) + g * g;
}

double t36_equation(double theta) {
    return kernel::value(pi / 3.0 + theta) - kernel::value(theta);
}

namespace {

constexpr double inset = 1e-9;
constexpr std::size_t scan_cells = 2000;
constexpr double certificate_tol = 1e-9;

double unique_root(const std::function<double(double)>& fn, double lo, double hi,
                   const RootTolerances& tol, const char* what) {
    const auto brackets = scan_brackets(fn, lo, hi, scan_cells, tol.residual);
    if (brackets.size() != 1) {
        throw SolverError(std::string(what) + ": expected exactly one root, found " +
                          std::to_string(brackets.size()));
    }
    const RootResult r = bracket_root(fn, brackets.front(), tol);
    if (!r.converged) {
        throw SolverError(std::string(what) + ": root refinement did not converge");
    }
    return r.root;
}

// Samples fn at `points` interior nodes of (lo, hi), skipping nodes within
// 1e-6 of any excluded abscissa.
GridCertificate sample_grid(const char* name, const std::function<double(double)>& fn, double lo,
                            double hi, int points, std::initializer_list<double> excluded = {}) {
    GridCertificate g;
    g.function = name;
    g.lo = lo;
    g.hi = hi;
    g.min_value = std::numeric_limits<double>::infinity();
    g.max_value = -std::numeric_limits<double>::infinity();
    g.monotone_decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    const double step = (hi - lo) / (points + 1);
    for (int k = 1; k <= points; ++k) {
        const double x = lo + step * k;
        if (std::any_of(excluded.begin(), excluded.end(),
                        [x](double e) { return std::abs(x - e) < 1e-6; })) {
            continue;
        }
        const double y = fn(x);
        ++g.points;
        if (y < g.min_value) {
            g.min_value = y;
            g.argmin = x;
        }
        g.max_value = std::max(g.max_value, y);
        if (!(y < prev)) {
            g.monotone_decreasing = false;
        }
        prev = y;
    }
    return g;
}

double max_residual(const SymmetricConfig& sym, const MassVector& mu) {
    const Vector4 r = residual_four(sym, mu);
    double out = 0.0;
    for (double x : r) {
        out = std::max(out, std::abs(x));
    }
    return out;
}

// Fills the residual certificate and enforces it.
void certify(CaseSolution& s) {
    s.residual = max_residual(*s.config, *s.mass_condition.compliant);
    if (!(s.residual < certificate_tol)) {
        throw SolverError(std::string(to_string(s.tag)) +
                          ": back-substitution residual " + std::to_string(s.residual) +
                          " exceeds 1e-9");
    }
    s.exists = true;
}

double t32_root(const RootTolerances& tol) {
    return unique_root(t32_equation, inset, pi / 3.0 - inset, tol, "T32 root of F1");
}

double t36_root(const RootTolerances& tol) {
    return unique_root(t36_equation, pi / 3.0 + inset, 2.0 * pi / 3.0 - inset, tol,
                       "T36 root of f(pi/3+t)-f(t)");
}

double positive_ratio(double num, double den, const char* what) {
    const double r = num / den;
    if (!(r > 0.0)) {
        throw SolverError(std::string(what) + ": mass ratio is not positive");
    }
    return r;
}

// The two subcases shared by T36 and T37 in which the vanishing angle is pi or
// 5pi/3: the signs of the kernel values that must agree never do.
void add_sign_contradictions(CaseSolution& s, const char* angle_name) {
    const std::string a = angle_name;
    GridCertificate at_pi = sample_grid(
        "f(theta1) * f(pi - 2 theta1)",
        [](double t) { return kernel::value(t) * kernel::value(pi - 2.0 * t); }, 0.0, pi / 2.0,
        2000, {pi / 3.0});
    GridCertificate at_5pi3 = sample_grid(
        "f(theta1) * f(theta1 + 5pi/3)",
        [](double t) { return kernel::value(t) * kernel::value(t + 5.0 * pi / 3.0); }, 0.0,
        pi / 6.0, 2000);
    if (!(at_pi.max_value < 0.0) || !(at_5pi3.max_value < 0.0)) {
        throw SolverError(std::string(to_string(s.tag)) + ": sign contradiction grid failed");
    }
    s.rejected.push_back({a + " = pi",
                          "f(theta1) and the opposite free kernel value have opposite signs "
                          "on (0, pi/2)",
                          std::nullopt, at_pi.max_value});
    s.rejected.push_back({a + " = 5pi/3",
                          "f(theta1) < 0 < f(theta1 + 5pi/3) on (0, pi/6), so "
                          "f(theta1 + theta2) = f(theta1) fails",
                          std::nullopt, at_5pi3.max_value});
    s.grids.push_back(at_pi);
    s.grids.push_back(at_5pi3);
}

void add_lower_interval_rejection(CaseSolution& s) {
    GridCertificate g = sample_grid("f(pi/3 + t) - f(t)", t36_equation, 0.0, pi / 3.0, 2000);
    if (!(g.min_value > 0.0)) {
        throw SolverError(std::string(to_string(s.tag)) + ": lower-interval grid failed");
    }
    s.rejected.push_back({"theta1 in (0, pi/3)",
                          "f(pi/3 + t) - f(t) stays positive, no root",
                          std::nullopt, g.min_value});
    s.grids.push_back(g);
}

}  // namespace

CaseSolution solve_T32(const RootTolerances& tol) {
    CaseSolution s;
    s.tag = TheoremTag::T32;
    const double t0 = t32_root(tol);
    s.theta0 = t0;
    s.config = SymmetricConfig::make(t0, pi / 3.0 - t0, 5.0 * pi / 3.0 - t0);

    const double r = positive_ratio(kernel::value(pi / 3.0 - t0), kernel::value(t0), "T32");
    s.mass_condition.relations = {"mu1*mu2 = mu3*mu4",
                                  "mu1/mu3 = mu4/mu2 = f(pi/3 - theta0)/f(theta0)"};
    s.mass_condition.ratio_name = "mu1/mu3 = mu4/mu2";
    s.mass_condition.ratio = r;
    s.mass_condition.compliant = MassVector({r, 1.0, 1.0, r});

    GridCertificate mono = sample_grid("F1(theta)", t32_equation, 1e-4, pi / 3.0 - 1e-4, 2000);
    if (!mono.monotone_decreasing) {
        throw SolverError("T32: F1 is not strictly decreasing on the certificate grid");
    }
    s.grids.push_back(mono);
    certify(s);
    return s;
}

CaseSolution solve_T33(const RootTolerances& tol) {
    CaseSolution s;
    s.tag = TheoremTag::T33;
    s.theta0 = pi / 2.0;
    s.config = SymmetricConfig::make(pi / 2.0, pi / 2.0, pi / 2.0);
    s.mass_condition.relations = {"mu1*mu2 = mu3*mu4", "mu1 = mu3", "mu2 = mu4"};
    s.mass_condition.ratio_name = "mu4/mu2 = f(theta1)/f(theta4)";
    s.mass_condition.ratio = 1.0;
    s.mass_condition.compliant = MassVector({1.0, 2.0, 1.0, 2.0});

    // |f(t)| = |f(pi - t)| with opposite signs reduces to G2(t) = 0.
    const auto brackets =
        scan_brackets(t33_opposite_sign_equation, inset, pi - inset, scan_cells, tol.residual);
    if (brackets.size() != 2) {
        throw SolverError("T33: expected two roots of G2, found " +
                          std::to_string(brackets.size()));
    }
    for (const Bracket& b : brackets) {
        const RootResult r = bracket_root(t33_opposite_sign_equation, b, tol);
        if (!r.converged) {
            throw SolverError("T33: G2 root refinement did not converge");
        }
        const double ratio = kernel::value(r.root) / kernel::value(pi - r.root);
        if (!(ratio < 0.0)) {
            throw SolverError("T33: G2 root gives a non-negative mass ratio");
        }
        s.rejected.push_back({r.root < pi / 2.0 ? "G2 root in (0, pi/3)" : "G2 root in (2pi/3, pi)",
                              "mu4/mu2 = f(theta)/f(pi - theta) < 0", r.root, ratio});
    }
    s.grids.push_back(sample_grid("G2(theta)", t33_opposite_sign_equation, 0.0, pi, 2000));
    certify(s);
    return s;
}

CaseSolution solve_T34(const RootTolerances& tol) {
    CaseSolution s;
    s.tag = TheoremTag::T34;
    const double t0 = t32_root(tol);
    s.theta0 = t0;
    s.config = SymmetricConfig::make(t0, 5.0 * pi / 3.0 - t0, pi / 3.0 - t0);

    const double r =
        positive_ratio(kernel::value(5.0 * pi / 3.0 - t0), kernel::value(t0), "T34");
    s.mass_condition.relations = {"mu1*mu2 = mu3*mu4",
                                  "mu1/mu3 = mu4/mu2 = f(5pi/3 - theta0)/f(theta0)"};
    s.mass_condition.ratio_name = "mu1/mu3 = mu4/mu2";
    s.mass_condition.ratio = r;
    s.mass_condition.compliant = MassVector({r, 1.0, 1.0, r});
    certify(s);
    return s;
}

CaseSolution check_T35() {
    CaseSolution s;
    s.tag = TheoremTag::T35;
    s.exists = false;
    s.theta0 = pi / 3.0;
    s.mass_condition.relations = {"theta1 = theta3 = pi/3", "mu1*mu3 = mu2*mu4",
                                  "f(theta2) f(4pi/3 - theta2) + f^2(pi/3 + theta2) = 0"};

    GridCertificate g =
        sample_grid("f(t2) f(4pi/3 - t2) + f^2(pi/3 + t2)", t35_equation, 0.0, 4.0 * pi / 3.0,
                    2000, {pi / 3.0, pi});
    if (!(g.min_value > 0.0)) {
        throw SolverError("T35: sign certificate failed, grid minimum " +
                          std::to_string(g.min_value));
    }
    s.grids.push_back(g);

    struct Sub {
        const char* label;
        double lo, hi;
    };
    for (const Sub& sub : {Sub{"theta2 in (0, pi/3)", 0.0, pi / 3.0},
                           Sub{"theta2 in (pi/3, pi)", pi / 3.0, pi},
                           Sub{"theta2 in (pi, 4pi/3)", pi, 4.0 * pi / 3.0}}) {
        const GridCertificate part = sample_grid("", t35_equation, sub.lo, sub.hi, 500);
        s.rejected.push_back({sub.label, "left side strictly positive", std::nullopt,
                              part.min_value});
    }
    for (double t2 : {pi / 3.0, pi}) {
        s.rejected.push_back({t2 < 2.0 ? "theta2 = pi/3" : "theta2 = pi",
                              "left side reduces to f^2(pi/3 + theta2) > 0", t2,
                              t35_equation(t2)});
    }
    return s;
}

CaseSolution solve_T36(const RootTolerances& tol) {
    CaseSolution s;
    s.tag = TheoremTag::T36;
    const double t0 = t36_root(tol);
    s.theta0 = t0;
    s.config = SymmetricConfig::make(t0, pi / 3.0, 5.0 * pi / 3.0 - 2.0 * t0);

    const double q =
        positive_ratio(kernel::value(5.0 * pi / 3.0 - 2.0 * t0), kernel::value(t0), "T36");
    s.mass_condition.relations = {"mu1 = mu4",
                                  "(mu2 + mu3) f(theta0) = mu1 f(5pi/3 - 2 theta0)"};
    s.mass_condition.ratio_name = "(mu2 + mu3)/mu1";
    s.mass_condition.ratio = q;
    s.mass_condition.compliant = MassVector({1.0, 0.5 * q, 0.5 * q, 1.0});

    add_lower_interval_rejection(s);
    add_sign_contradictions(s, "theta2");
    certify(s);
    return s;
}

CaseSolution solve_T37(const RootTolerances& tol) {
    CaseSolution s;
    s.tag = TheoremTag::T37;
    const double t0 = t36_root(tol);
    s.theta0 = t0;
    s.config = SymmetricConfig::make(t0, 5.0 * pi / 3.0 - 2.0 * t0, pi / 3.0);

    // With f(theta4) = 0 the first and last rows force mu2 = mu3 and
    // f(theta1 + theta2) = -f(theta1); the middle rows then collapse to
    // (mu1 + mu4) f(theta1) = mu2 f(theta2). mu1 and mu4 are free otherwise.
    const double q =
        positive_ratio(kernel::value(5.0 * pi / 3.0 - 2.0 * t0), kernel::value(t0), "T37");
    s.mass_condition.relations = {"mu2 = mu3",
                                  "(mu1 + mu4) f(theta0) = mu2 f(5pi/3 - 2 theta0)"};
    s.mass_condition.ratio_name = "(mu1 + mu4)/mu2";
    s.mass_condition.ratio = q;
    s.mass_condition.compliant = MassVector({0.4 * q, 1.0, 1.0, 0.6 * q});

    add_lower_interval_rejection(s);
    add_sign_contradictions(s, "theta4");
    certify(s);
    return s;
}

CaseSolution solve_case(TheoremTag tag, const RootTolerances& tol) {
    switch (tag) {
        case TheoremTag::T32: return solve_T32(tol);
        case TheoremTag::T33: return solve_T33(tol);
        case TheoremTag::T34: return solve_T34(tol);
        case TheoremTag::T35: return check_T35();
        case TheoremTag::T36: return solve_T36(tol);
        case TheoremTag::T37: return solve_T37(tol);
    }
    throw std::invalid_argument("solve_case: unknown tag");
}

}  // namespace coorbital
