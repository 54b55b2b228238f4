#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "robinpolya/ptrig.hpp"
#include "robinpolya/rootfind.hpp"

// First eigenvalue mu_1(beta, s0) of the one-dimensional problem
//
//     (|X'|^{p-2} X')' + mu |X|^{p-2} X = 0   on (0, s0),
//     X'(0) = 0,
//     |X'(s0)|^{p-2} X'(s0) + beta |X(s0)|^{p-2} X(s0) = 0,
//
// equivalently the infimum of
//   (int |v'|^p ds + beta v(s0)^p) / int |v|^p ds   over W^{1,p}(0, s0).
//
// For beta > 0 the eigenfunction is cos_p(omega s) with mu = (p-1) omega^p;
// for beta < 0 it is cosh_p(omega s) with mu = -(p-1) omega^p; beta = 0 gives
// the constant with mu = 0.  mu_1 has the sign of beta.

namespace robinpolya {

struct RobinParams {
    PExponent p;
    double beta;
    double s0;

    RobinParams(PExponent p_, double beta_, double s0_)
        : p(p_), beta(beta_), s0(s0_) {
        if (!std::isfinite(beta))
            throw std::invalid_argument("RobinParams: beta must be finite");
        if (!std::isfinite(s0) || !(s0 > 0.0))
            throw std::invalid_argument("RobinParams: s0 must be finite and > 0");
    }
};

enum class Mu1Branch { trigonometric, zero, hyperbolic };

inline const char* to_string(Mu1Branch b) {
    switch (b) {
        case Mu1Branch::trigonometric: return "trigonometric";
        case Mu1Branch::zero: return "zero";
        case Mu1Branch::hyperbolic: return "hyperbolic";
    }
    return "?";
}

struct Mu1Result {
    double mu = 0.0;
    Mu1Branch branch = Mu1Branch::zero;
    double boundary_residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
};

namespace oned_detail {

// |x|^{p-2} x, extended continuously by 0 at x = 0 (p > 1).
inline double phi_p(double x, double p) {
    if (x == 0.0) return 0.0;
    return std::pow(std::abs(x), p - 2.0) * x;
}

// Boundary relation for beta > 0, written free of poles:
//   G(mu) = omega^{p-1} (1 - X0^p)^{(p-1)/p} - beta X0^{p-1},
// with omega = (mu/(p-1))^{1/p} and X0 = cos_p(omega s0).  G < 0 at mu -> 0+
// and G > 0 as omega s0 -> pi_p/2, with the first eigenvalue as the unique
// zero on that bracket.
inline double trig_boundary(const RobinParams& rp, double mu,
                            const QuadratureConfig& cfg) {
    const double p = rp.p.p;
    const double omega = std::pow(mu / (p - 1.0), 1.0 / p);
    const auto x = cos_p(rp.p, omega * rp.s0, cfg);
    const double x0 = x.value;
    return std::pow(omega, p - 1.0) *
               std::pow(ptrig_detail::one_minus_pow(x0, p), (p - 1.0) / p) -
           rp.beta * std::pow(x0, p - 1.0);
}

// Boundary relation for beta < 0, scaled by X0^{p-1} so it stays finite as
// cosh_p grows:  H(mu) = omega^{p-1} (1 - X0^{-p})^{(p-1)/p} - |beta|.
inline double hyp_boundary(const RobinParams& rp, double mu,
                           const QuadratureConfig& cfg) {
    const double p = rp.p.p;
    const double omega = std::pow(-mu / (p - 1.0), 1.0 / p);
    const auto x = cosh_p(rp.p, omega * rp.s0, cfg);
    const double inv = std::pow(x.value, -p);
    return std::pow(omega, p - 1.0) * std::pow(1.0 - inv, (p - 1.0) / p) -
           std::abs(rp.beta);
}

}  // namespace oned_detail

/// First eigenvalue of the 1D Robin problem, by bisection on the pole-free
/// boundary relation.  For beta > 0 the bracket is
/// (0, (p-1)(pi_p/(2 s0))^p), the strict upper bound on mu_1; for beta < 0 it
/// is grown geometrically below -(p-1)|beta|^{p'}.  Throws std::runtime_error
/// on bracket failure (never expected for valid parameters).
inline Mu1Result mu1(const RobinParams& rp, double rel_tol = 1e-12,
                     const QuadratureConfig& cfg = {}) {
    if (rp.beta == 0.0) return {0.0, Mu1Branch::zero, 0.0, 0.0, 0.0, 0};
    const double p = rp.p.p;

    if (rp.beta > 0.0) {
        const double cap = (p - 1.0) * std::pow(pi_p(rp.p) / (2.0 * rp.s0), p);
        auto g = [&](double mu) { return oned_detail::trig_boundary(rp, mu, cfg); };
        double lo = 1e-12 * std::min(rp.beta / rp.s0, cap);
        double hi = cap * (1.0 - 1e-12);
        // G(lo) < 0 < G(hi) must hold; nudge if rounding put us past a zero
        int guard = 0;
        while (g(lo) >= 0.0 && ++guard < 60) lo *= 0.25;
        const auto r = bisect(g, lo, hi, rel_tol);
        return {r.root, Mu1Branch::trigonometric, std::abs(g(r.root)),
                r.lo, r.hi, r.iterations};
    }

    const double bound = -(p - 1.0) * std::pow(std::abs(rp.beta), rp.p.pconj);
    auto h = [&](double mu) { return oned_detail::hyp_boundary(rp, mu, cfg); };
    double lo = bound;  // grow towards -infinity until H > 0
    int guard = 0;
    while (h(lo) < 0.0) {
        lo *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("mu1: hyperbolic bracket growth failed");
    }
    double hi = -1e-300;
    const auto r = bisect(h, lo, hi, rel_tol);
    return {r.root, Mu1Branch::hyperbolic, std::abs(h(r.root)),
            r.lo, r.hi, r.iterations};
}

/// Samples of the closed-form eigenfunction (X, X') on the given grid.
/// X(0) = 1, X'(0) = 0, and X > 0 throughout.
inline std::vector<PTrigValue> eigenfunction_samples(
    const RobinParams& rp, const Mu1Result& result,
    const std::vector<double>& grid, const QuadratureConfig& cfg = {}) {
    const double p = rp.p.p;
    std::vector<PTrigValue> out;
    out.reserve(grid.size());
    for (double s : grid) {
        if (!(s >= -1e-12 && s <= rp.s0 * (1.0 + 1e-12)))
            throw std::invalid_argument(
                "eigenfunction_samples: grid point outside [0, s0]");
        s = std::min(std::max(s, 0.0), rp.s0);
        switch (result.branch) {
            case Mu1Branch::zero:
                out.push_back({1.0, 0.0});
                break;
            case Mu1Branch::trigonometric: {
                const double omega = std::pow(result.mu / (p - 1.0), 1.0 / p);
                auto x = cos_p(rp.p, omega * s, cfg);
                out.push_back({x.value, omega * x.derivative});
                break;
            }
            case Mu1Branch::hyperbolic: {
                const double omega = std::pow(-result.mu / (p - 1.0), 1.0 / p);
                auto x = cosh_p(rp.p, omega * s, cfg);
                out.push_back({x.value, omega * x.derivative});
                break;
            }
        }
    }
    return out;
}

struct DiscreteOracleResult {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

namespace oned_detail {

// Pool-adjacent-violators projection onto the nonincreasing cone (exact in
// the unweighted discrete l2 metric).
inline void isotonic_decreasing(std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> level(n), weight(n);
    std::vector<int> count(n);
    int m = 0;
    for (int i = 0; i < n; ++i) {
        level[m] = v[i];
        weight[m] = 1.0;
        count[m] = 1;
        ++m;
        while (m > 1 && level[m - 2] < level[m - 1]) {
            const double w = weight[m - 2] + weight[m - 1];
            level[m - 2] = (weight[m - 2] * level[m - 2] +
                            weight[m - 1] * level[m - 1]) / w;
            weight[m - 2] = w;
            count[m - 2] += count[m - 1];
            --m;
        }
    }
    int k = 0;
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < count[b]; ++c) v[k++] = level[b];
}

// Solves (stiff + mass) d = g for the H1 descent direction; tridiagonal
// Cholesky (Thomas) factored once per oracle call.
struct TridiagSolver {
    std::vector<double> d, e;  // factor of the SPD tridiagonal

    TridiagSolver(int n, double h, const std::vector<double>& lumped_mass) {
        std::vector<double> diag(n), off(n - 1);
        for (int i = 0; i < n; ++i) {
            diag[i] = lumped_mass[i] + ((i == 0 || i == n - 1) ? 1.0 : 2.0) / h;
        }
        for (int i = 0; i + 1 < n; ++i) off[i] = -1.0 / h;
        d.resize(n);
        e.resize(n - 1);
        d[0] = diag[0];
        for (int i = 0; i + 1 < n; ++i) {
            e[i] = off[i] / d[i];
            d[i + 1] = diag[i + 1] - off[i] * e[i];
        }
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        const int n = static_cast<int>(d.size());
        std::vector<double> x(b);
        for (int i = 1; i < n; ++i) x[i] -= e[i - 1] * x[i - 1];
        x[n - 1] /= d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = x[i] / d[i] - e[i] * x[i + 1];
        return x;
    }
};

}  // namespace oned_detail

/// Discrete Rayleigh-quotient oracle on a uniform n-point grid of [0, s0]:
/// piecewise-linear candidates, exact per-cell |v'|^p, trapezoidal |v|^p.
/// Minimized by projected gradient with an H1 (stiffness + mass)
/// preconditioner, backtracking line search, and ||v||_p normalization,
/// started from v = 1 perturbed towards the closed-form eigenfunction.  The
/// plain l2 gradient stalls far from the minimum at this grid resolution,
/// so the preconditioned direction is essential, not an optimization.
///
/// With constrained = true the iterates are additionally projected onto the
/// cone of nonincreasing functions bounded below by 1e-8 (isotonic
/// regression), the admissible class of the shape comparison argument.
///
/// The converged value is an upper bound for the corresponding continuum
/// infimum; non-convergence is reported through the flag, with the best
/// value found.
inline DiscreteOracleResult mu1_discrete_oracle(const RobinParams& rp, int n,
                                                bool constrained,
                                                double rel_tol = 1e-10,
                                                int max_iter = 10000) {
    if (n < 8) throw std::invalid_argument("mu1_discrete_oracle: n must be >= 8");
    const double p = rp.p.p;
    const double beta = rp.beta;
    const double h = rp.s0 / (n - 1);
    const double floor_eps = 1e-8;

    std::vector<double> w(n, h);
    w[0] = w[n - 1] = 0.5 * h;

    // initial guess: constants nudged towards the closed-form eigenfunction
    std::vector<double> v(n, 1.0);
    {
        const Mu1Result ref = mu1(rp, 1e-10);
        std::vector<double> grid(n);
        for (int i = 0; i < n; ++i) grid[i] = i * h;
        const auto samples = eigenfunction_samples(rp, ref, grid);
        for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * (samples[i].value - 1.0);
    }
    if (constrained) {
        oned_detail::isotonic_decreasing(v);
        for (double& vi : v) vi = std::max(vi, floor_eps);
    }

    auto quotient = [&](const std::vector<double>& u, double& den) {
        double num = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double d = (u[i + 1] - u[i]) / h;
            num += h * std::pow(std::abs(d), p);
        }
        num += beta * std::pow(std::abs(u[n - 1]), p);
        den = 0.0;
        for (int i = 0; i < n; ++i) den += w[i] * std::pow(std::abs(u[i]), p);
        return num / den;
    };

    auto gradient = [&](const std::vector<double>& u, double R, double den) {
        std::vector<double> g(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            const double d = (u[i + 1] - u[i]) / h;
            const double flux = p * oned_detail::phi_p(d, p);
            g[i] -= flux;
            g[i + 1] += flux;
        }
        g[n - 1] += beta * p * oned_detail::phi_p(u[n - 1], p);
        for (int i = 0; i < n; ++i) {
            g[i] -= R * p * w[i] * oned_detail::phi_p(u[i], p);
            g[i] /= den;
        }
        return g;
    };

    oned_detail::TridiagSolver prec(n, h, w);

    double den;
    double R = quotient(v, den);
    // normalize ||v||_p = 1
    for (double& vi : v) vi /= std::pow(den, 1.0 / p);
    R = quotient(v, den);

    double step = 1.0;
    int it = 0;
    bool converged = false;
    for (it = 1; it <= max_iter; ++it) {
        const auto g = gradient(v, R, den);
        const auto dir = prec.solve(g);
        double slope = 0.0;
        for (int i = 0; i < n; ++i) slope += g[i] * dir[i];
        if (!(slope > 0.0)) break;  // stationary in the preconditioned metric

        step = std::min(step * 2.0, 4.0);
        std::vector<double> vn(n);
        double den_n, Rn;
        while (true) {
            for (int i = 0; i < n; ++i) vn[i] = v[i] - step * dir[i];
            if (constrained) {
                oned_detail::isotonic_decreasing(vn);
                for (double& x : vn) x = std::max(x, floor_eps);
            }
            Rn = quotient(vn, den_n);
            if (Rn < R - 1e-4 * step * slope || step < 1e-18) break;
            step *= 0.5;
        }
        const double change = std::abs(R - Rn) / std::max(1.0, std::abs(R));
        v = vn;
        for (double& vi : v) vi /= std::pow(den_n, 1.0 / p);
        R = quotient(v, den);
        if (change < rel_tol) {
            converged = true;
            break;
        }
    }
    return {R, it, converged};
}

}  // namespace robinpolya
