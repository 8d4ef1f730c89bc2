#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "coorbital/errors.hpp"

namespace coorbital {

template <typename Fn>
concept ScalarFunction = std::regular_invocable<Fn&, double> &&
    std::convertible_to<std::invoke_result_t<Fn&, double>, double>;

/// Interval [lo, hi] over which a function changes sign strictly.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] bool valid() const { return lo < hi && f_lo * f_hi < 0.0; }
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct RootTolerances {
    double width = 1e-12;
    double residual = 1e-10;
    int max_iter = 200;
};

/// Evaluates fn at both ends and returns the bracket. Throws NoSignChange when
/// fn(lo) and fn(hi) do not have strictly opposite signs.
template <ScalarFunction Fn>
Bracket make_bracket(Fn&& fn, double lo, double hi) {
    Bracket b{lo, hi, static_cast<double>(fn(lo)), static_cast<double>(fn(hi))};
    if (!b.valid()) {
        throw NoSignChange("no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    return b;
}

/// Bracketed root finder: Illinois-modified secant steps kept strictly inside
/// the bracket, with a bisection step whenever an interpolated step fails to
/// halve the bracket. Stops once the bracket is no wider than tol.width or an
/// exact zero is hit. On iteration exhaustion the best endpoint is returned
/// with converged = false.
template <ScalarFunction Fn>
RootResult bracket_root(Fn&& fn, Bracket bracket, const RootTolerances& tol = {}) {
    if (!(tol.width > 0.0) || !(tol.residual > 0.0) || tol.max_iter <= 0) {
        throw std::invalid_argument("bracket_root: tolerances must be positive");
    }
    if (!bracket.valid()) {
        throw NoSignChange("bracket_root: bracket endpoints do not change sign");
    }

    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    // Illinois scaling of the stale endpoint, reset when that side moves.
    double ga = fa, gb = fb;
    int side = 0;  // -1: a was retained last step, +1: b was retained
    bool force_bisect = false;

    auto best = [&](int it, bool ok) {
        RootResult r;
        r.iterations = it;
        r.converged = ok;
        if (std::abs(fa) <= std::abs(fb)) {
            r.root = a;
            r.residual = fa;
        } else {
            r.root = b;
            r.residual = fb;
        }
        return r;
    };

    for (int it = 0; it < tol.max_iter; ++it) {
        if (b - a <= tol.width) {
            return best(it, true);
        }
        const double old_width = b - a;
        double x = a - ga * (b - a) / (gb - ga);
        if (force_bisect || !(x > a && x < b) || !std::isfinite(x)) {
            x = 0.5 * (a + b);
        }
        const double fx = fn(x);
        if (fx == 0.0) {
            return RootResult{x, 0.0, it + 1, true};
        }
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
            ga = fx;
            gb = (side == 1) ? 0.5 * gb : gb;
            side = 1;
        } else {
            b = x;
            fb = fx;
            gb = fx;
            ga = (side == -1) ? 0.5 * ga : ga;
            side = -1;
        }
        force_bisect = (b - a) > 0.5 * old_width && !force_bisect;
    }
    if (b - a <= tol.width) {
        return best(tol.max_iter, true);
    }
    return best(tol.max_iter, false);
}

/// Convenience overload evaluating the endpoints itself.
template <ScalarFunction Fn>
RootResult bracket_root(Fn&& fn, double lo, double hi, const RootTolerances& tol = {}) {
    return bracket_root(fn, make_bracket(fn, lo, hi), tol);
}

/// Scans [lo, hi] on a uniform grid of n_steps cells and returns every cell
/// across which fn changes sign strictly, in ascending order.
///
/// A grid node whose value is below resid_tol in magnitude is taken as a root
/// sitting on the node: the cells touching it are not reported separately;
/// instead a single bracket spanning the neighbouring nodes is returned when
/// those straddle a sign change. Non-finite node values break any bracket
/// that would span them.
template <ScalarFunction Fn>
std::vector<Bracket> scan_brackets(Fn&& fn, double lo, double hi, std::size_t n_steps = 2000,
                                   double resid_tol = 1e-10) {
    if (!(lo < hi) || n_steps < 2) {
        throw std::invalid_argument("scan_brackets: need lo < hi and n_steps >= 2");
    }
    std::vector<double> xs(n_steps + 1), ys(n_steps + 1);
    const double h = (hi - lo) / static_cast<double>(n_steps);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        xs[i] = (i == n_steps) ? hi : lo + h * static_cast<double>(i);
        ys[i] = fn(xs[i]);
    }
    auto near_zero = [&](std::size_t i) { return std::abs(ys[i]) < resid_tol; };

    std::vector<Bracket> out;
    std::size_t i = 0;
    while (i < n_steps) {
        if (near_zero(i + 1)) {
            // run of near-zero nodes starting at i + 1
            std::size_t j = i + 1;
            while (j <= n_steps && near_zero(j)) {
                ++j;
            }
            if (j <= n_steps && !near_zero(i) && std::isfinite(ys[i]) && std::isfinite(ys[j]) &&
                ys[i] * ys[j] < 0.0) {
                out.push_back({xs[i], xs[j], ys[i], ys[j]});
            }
            i = j;
            continue;
        }
        if (!near_zero(i) && std::isfinite(ys[i]) && std::isfinite(ys[i + 1]) &&
            ys[i] * ys[i + 1] < 0.0) {
            out.push_back({xs[i], xs[i + 1], ys[i], ys[i + 1]});
        }
        ++i;
    }
    return out;
}

}  // namespace coorbital
