#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coorbital/model.hpp"
#include "coorbital/rootfind.hpp"

namespace coorbital {

/// Degenerate subcases of the symmetric 1+4 problem, one per vanishing kernel
/// value: theta1 + theta2 in {pi/3, pi, 5pi/3}, f(theta1) = 0, f(theta2) = 0,
/// f(theta4) = 0.
enum class TheoremTag { T32, T33, T34, T35, T36, T37 };

const char* to_string(TheoremTag tag);
/// Parses "T32".."T37"; throws std::invalid_argument otherwise.
TheoremTag parse_theorem_tag(const std::string& text);

struct MassCondition {
    std::vector<std::string> relations;  ///< human-readable equalities among the mu_i
    std::string ratio_name;              ///< e.g. "mu1/mu3 = mu4/mu2"; empty if none
    double ratio = 0.0;                  ///< value of ratio_name at the solution
    std::optional<MassVector> compliant; ///< a mass vector satisfying the condition
};

/// A branch the proof rules out, kept with the number that rules it out.
struct RejectedBranch {
    std::string label;
    std::string reason;
    std::optional<double> theta;  ///< root location, when the branch is a root
    double witness = 0.0;         ///< the offending ratio / extremal grid value
};

/// Sign-analysis evidence from a uniform grid.
struct GridCertificate {
    std::string function;
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;
    double min_value = 0.0;
    double max_value = 0.0;
    double argmin = 0.0;
    bool monotone_decreasing = false;
};

struct CaseSolution {
    TheoremTag tag = TheoremTag::T32;
    bool exists = false;
    std::optional<SymmetricConfig> config;
    std::optional<double> theta0;      ///< scalar root the case reduces to
    MassCondition mass_condition;
    double residual = 0.0;             ///< max |residual_four| under compliant masses
    std::vector<GridCertificate> grids;
    std::vector<RejectedBranch> rejected;
};

// Scalar functions the cases reduce to. Exposed for tests and tooling.

/// f^2(t) - f(pi/3 - t) f(5pi/3 - t), decreasing on (0, pi/3).
double t32_equation(double theta);
/// sin^-3(t/2) + cos^-3(t/2) - 16.
double t33_opposite_sign_equation(double theta);
/// f(t2) f(4pi/3 - t2) + f^2(pi/3 + t2).
double t35_equation(double theta2);
/// f(pi/3 + t) - f(t).
double t36_equation(double theta);

CaseSolution solve_T32(const RootTolerances& tol = {});
CaseSolution solve_T33(const RootTolerances& tol = {});
CaseSolution solve_T34(const RootTolerances& tol = {});
CaseSolution check_T35();
CaseSolution solve_T36(const RootTolerances& tol = {});
CaseSolution solve_T37(const RootTolerances& tol = {});

CaseSolution solve_case(TheoremTag tag, const RootTolerances& tol = {});

}  // namespace coorbital
