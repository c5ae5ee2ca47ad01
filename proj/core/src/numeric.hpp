#pragma once

// Internal root-finding helpers. Deterministic bracketing only.

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "biphoton/error.hpp"

namespace biphoton::detail {

/// Bisection on a bracket with f(lo), f(hi) of opposite sign. Stops when the
/// bracket is narrower than rel_tol * max(|lo|, |hi|) (or abs_floor).
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-12, double abs_floor = 0.0) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw RegimeError("bisect: interval does not bracket a root");
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        const double scale = std::max(std::abs(lo), std::abs(hi));
        if (std::abs(hi - lo) <= std::max(rel_tol * scale, abs_floor)) break;
    }
    return 0.5 * (lo + hi);
}

/// Scans [lo, hi] in `steps` uniform intervals and returns the first interval
/// whose end points straddle a sign change of f. Points where f throws are
/// treated as unusable and skipped.
template <class F>
std::optional<std::pair<double, double>> first_bracket(F&& f, double lo, double hi, int steps) {
    std::optional<std::pair<double, double>> prev;  // (x, f(x))
    for (int k = 0; k <= steps; ++k) {
        const double x = lo + (hi - lo) * k / steps;
        double fx;
        try {
            fx = f(x);
        } catch (const Error&) {
            prev.reset();
            continue;
        }
        if (!std::isfinite(fx)) {
            prev.reset();
            continue;
        }
        if (prev && ((prev->second > 0.0) != (fx > 0.0))) return std::pair{prev->first, x};
        prev = std::pair{x, fx};
    }
    return std::nullopt;
}

}  // namespace biphoton::detail
