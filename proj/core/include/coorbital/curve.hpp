#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coorbital/model.hpp"
#include "coorbital/rootfind.hpp"

namespace coorbital {

/// Sign regions of the (theta1, theta2) strip in which f(theta2) and
/// f(theta1) - f(theta1 + theta2) share a sign, one per theta2 band
/// (0, pi/3), (pi/3, pi), (pi, 5pi/3), (5pi/3, 2pi). D4 is empty.
enum class Region { D1, D2, D3, D4, Boundary, Outside };

const char* to_string(Region region);
/// Parses "D1", "D2", "D3"; throws std::invalid_argument otherwise.
Region parse_region(const std::string& text);

/// Open theta2 band of a region.
std::pair<double, double> region_band(Region region);

/// Generic symmetric curve
///   F(t1, t2) = f^2(t1) - f^2(t1 + t2) - f(t2) f(2pi - 2 t1 - t2).
/// Throws DomainError outside the strip 0 < t1 < pi, t2 > 0,
/// 2 t1 + t2 < 2pi.
double curve_function(double theta1, double theta2);

/// Classification by theta2 band and the sign of f(t1) - f(t1 + t2).
/// Boundary within 1e-9 of a band edge or of f(t1) = f(t1 + t2); Outside when
/// the sign condition fails.
Region classify_region(double theta1, double theta2);

struct CurvePoint {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta4 = 0.0;
    Region region = Region::Outside;
    double residual = 0.0;              ///< F(theta1, theta2)
    std::optional<double> lambda;       ///< mu1/mu2 in the family mu1 = mu4, mu2 = mu3
    std::optional<double> r_sum;        ///< (mu1 + mu4)/(mu2 + mu3)
    std::optional<double> r_diff;       ///< (mu1 - mu4)/(mu3 - mu2)
    bool degenerate = false;            ///< some kernel value below 1e-9
    std::vector<KernelTerm> vanishing;
};

/// Builds a CurvePoint at (theta1, theta2), filling ratios and flags.
CurvePoint make_curve_point(double theta1, double theta2);

/// lambda = f(t2) / (f(t1) - f(t1 + t2)). Throws DegenerateDenominator when
/// the denominator is below 1e-12 in magnitude.
double lambda_ratio(double theta1, double theta2);

/// (r_sum, r_diff) = ((f1 + f12)/f4, (f1 - f12)/f4). Throws
/// DegenerateDenominator when |f(theta4)| < 1e-12.
std::pair<double, double> mass_ratio_pair(double theta1, double theta2);

struct TraceOptions {
    std::size_t cells = 4000;   ///< theta1 scan cells per theta2
    double inset = 1e-6;        ///< distance kept from the ends of the theta1 range
    unsigned threads = 0;       ///< 0: hardware concurrency
    RootTolerances tol{};
};

/// Every root theta1 of F(., theta2) on (0, pi - theta2/2), unclassified.
std::vector<double> curve_roots(double theta2, const TraceOptions& options = {});

/// Traces F = 0 inside `region` on the given theta2 values. Points
/// classified Outside are dropped; Boundary points are kept. Output is
/// sorted by (theta2, theta1) and is identical for any thread count.
std::vector<CurvePoint> trace_curve(Region region, std::span<const double> theta2_grid,
                                    const TraceOptions& options = {});

/// Uniform grid of `steps` values from start to end inclusive.
std::vector<double> linear_grid(double start, double end, std::size_t steps);

/// Location along the traced branch of `region` where f(theta4) changes
/// sign between theta2_lo and theta2_hi, i.e. where r_diff has a pole.
/// `theta1_hint` selects the branch nearest to it at theta2_lo.
CurvePoint locate_ratio_pole(Region region, double theta2_lo, double theta2_hi,
                             double theta1_hint, const TraceOptions& options = {});

enum class PointKind { Endpoint, Interior };

struct SpecialPoint {
    std::string name;
    PointKind kind = PointKind::Endpoint;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double ref_theta1 = 0.0;
    double ref_theta2 = 0.0;
    bool collision = false;             ///< theta2 or theta4 is zero at the point
    bool degenerate = false;
    std::vector<KernelTerm> vanishing;
    std::string note;

    [[nodiscard]] double delta() const;
};

struct SpecialPointCatalog {
    static constexpr double tolerance = 1e-3;
    std::vector<SpecialPoint> points;

    /// Throws std::out_of_range for an unknown name.
    [[nodiscard]] const SpecialPoint& at(const std::string& name) const;
    [[nodiscard]] bool matches() const;
};

/// Recomputes the endpoints A..H (F_pt for the point on theta2 = pi) and the
/// interior points J, K, L, M from the curve and the theorem solvers.
SpecialPointCatalog compute_special_points(const TraceOptions& options = {});

/// As compute_special_points, throwing CatalogMismatch if any point deviates
/// from its reference by more than 1e-3.
SpecialPointCatalog special_points(const TraceOptions& options = {});

}  // namespace coorbital
