#pragma once

#include <array>
#include <numbers>

namespace coorbital {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace kernel {

/// Interaction kernel of the 1+N coorbital problem,
///   f(t) = sin(t) * (1 - 1 / (8 |sin(t/2)|^3)),   0 < t < 2*pi.
/// Throws DomainError outside (0, 2*pi). No clamping near the collision
/// angles; the value grows without bound as t -> 0+ or t -> 2*pi-.
double value(double theta);

/// f'(t) = cos(t) + (3 + cos(t)) / (16 sin^3(t/2)).
double derivative(double theta);

/// f''(t) = -sin(t) - (11 + cos(t)) cos(t/2) / (32 sin^4(t/2)).
double second_derivative(double theta);

/// Critical points and zeros of f.
struct KernelProfile {
    double theta_c;  ///< maximum of f in (0, pi), inside (3pi/5, 2pi/3)
    double theta_l;  ///< minimum of f in (pi, 2pi), equal to 2pi - theta_c
    std::array<double, 3> zeros{pi / 3.0, pi, 5.0 * pi / 3.0};
};

/// Locates theta_c as the root of f' bracketed in [3pi/5, 2pi/3] to 1e-12.
/// Throws SolverError if that bracket does not straddle a sign change.
KernelProfile critical_points();

/// Cached result of critical_points(), computed once.
const KernelProfile& profile();

}  // namespace kernel
}  // namespace coorbital
