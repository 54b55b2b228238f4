#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace robinpolya {

struct BisectionResult {
    double root = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
};

/// Bisection on a sign-changing bracket.  Stops when the bracket width drops
/// below rel_tol * max(|lo|, |hi|) or f hits zero exactly.  Throws
/// std::runtime_error (with the evaluated endpoint values in the message) if
/// [lo, hi] does not bracket a root.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double rel_tol = 1e-12,
                       int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, lo, hi, 0};
    if (fhi == 0.0) return {hi, lo, hi, 0};
    if (!(flo * fhi < 0.0)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "bisect: no sign change, f(%.17g)=%.17g, f(%.17g)=%.17g",
                      lo, flo, hi, fhi);
        throw std::runtime_error(msg);
    }
    const double lo0 = lo, hi0 = hi;
    int it = 0;
    for (; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, lo0, hi0, it + 1};
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return {0.5 * (lo + hi), lo0, hi0, it + 1};
}

/// Newton iteration safeguarded by a sign-changing bracket [lo, hi].
/// g must return {value, derivative}.  Falls back to bisection whenever the
/// Newton step leaves the bracket.  Converges on
/// |step| <= x_tol * (x_scale + |x|); pass the expected root magnitude as
/// x_scale when hunting for roots much smaller than 1.
template <class G>
double newton_bracketed(G&& g, double lo, double hi, double x0,
                        double x_tol = 1e-13, int max_iter = 100,
                        double x_scale = 1.0) {
    auto [flo, dlo] = g(lo);
    (void)dlo;
    if (flo == 0.0) return lo;
    double x = std::min(std::max(x0, lo), hi);
    for (int it = 0; it < max_iter; ++it) {
        auto [v, d] = g(x);
        if (v == 0.0) return x;
        // shrink the bracket around the sign change
        if (flo * v < 0.0) {
            hi = x;
        } else {
            lo = x;
            flo = v;
        }
        double step = (d != 0.0 && std::isfinite(d)) ? v / d
                                                     : std::numeric_limits<double>::infinity();
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // safeguard
        const double dx = std::abs(xn - x);
        x = xn;
        if (dx <= x_tol * (x_scale + std::abs(x))) return x;
        if (hi - lo <= x_tol * (x_scale + std::abs(x))) return 0.5 * (lo + hi);
    }
    return x;
}

}  // namespace robinpolya
