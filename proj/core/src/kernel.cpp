#include "coorbital/kernel.hpp"

#include <cmath>
#include <string>

#include "coorbital/errors.hpp"
#include "coorbital/rootfind.hpp"

namespace coorbital::kernel {
namespace {

void check_domain(double theta) {
    if (!(theta > 0.0 && theta < two_pi)) {
        throw DomainError("kernel: angle " + std::to_string(theta) +
                          " outside (0, 2pi) is a collision");
    }
}

// sin(t) reduced about pi so that f(pi) evaluates to exactly zero.
double sin_reduced(double theta) {
    if (theta > 0.5 * pi && theta < 1.5 * pi) {
        return std::sin(pi - theta);
    }
    return std::sin(theta);
}

double half_sin(double theta) { return std::abs(std::sin(0.5 * theta)); }

}  // namespace

double value(double theta) {
    check_domain(theta);
    const double s = half_sin(theta);
    return sin_reduced(theta) * (1.0 - 1.0 / (8.0 * s * s * s));
}

double derivative(double theta) {
    check_domain(theta);
    const double s = half_sin(theta);
    const double c = std::cos(theta);
    return c + (3.0 + c) / (16.0 * s * s * s);
}

double second_derivative(double theta) {
    check_domain(theta);
    const double s = half_sin(theta);
    const double s2 = s * s;
    return -sin_reduced(theta) - (11.0 + std::cos(theta)) * std::cos(0.5 * theta) / (32.0 * s2 * s2);
}

KernelProfile critical_points() {
    const double lo = 3.0 * pi / 5.0;
    const double hi = 2.0 * pi / 3.0;
    const Bracket bracket{lo, hi, derivative(lo), derivative(hi)};
    if (!bracket.valid()) {
        throw SolverError("kernel: f' does not change sign on [3pi/5, 2pi/3]");
    }
    const RootResult r = bracket_root([](double t) { return derivative(t); }, bracket,
                                      RootTolerances{1e-12, 1e-10, 200});
    if (!r.converged) {
        throw SolverError("kernel: critical point refinement did not converge");
    }
    KernelProfile p;
    p.theta_c = r.root;
    p.theta_l = two_pi - r.root;
    return p;
}

const KernelProfile& profile() {
    static const KernelProfile cached = critical_points();
    return cached;
}

}  // namespace coorbital::kernel
