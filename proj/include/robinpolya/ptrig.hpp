#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "robinpolya/quadrature.hpp"
#include "robinpolya/rootfind.hpp"

// Generalized trigonometric and hyperbolic functions.
//
// arccos_p(x) = integral_x^1 (1 - t^p)^(-1/p) dt and its inverse cos_p,
// extended evenly and 2*pi_p-periodically; arccosh_p(x) =
// integral_1^x (t^p - 1)^(-1/p) dt and its inverse cosh_p.  For p = 2 these
// reduce to the classical functions.  cos_p and cosh_p return the value
// together with the derivative; the pairs satisfy
//     |cos_p|^p + |cos_p'|^p = 1        and        cosh_p^p - |cosh_p'|^p = 1.
//
// The defining integrals are evaluated by tanh-sinh quadrature after moving
// the algebraic endpoint singularity to 0; inversion is by bracketed Newton.

namespace robinpolya {

/// Exponent p > 1 together with its conjugate p' = p/(p-1).
struct PExponent {
    double p;
    double pconj;

    explicit PExponent(double p_) : p(p_), pconj(p_ / (p_ - 1.0)) {
        if (!std::isfinite(p_) || !(p_ > 1.0))
            throw std::invalid_argument("PExponent: p must be finite and > 1");
    }
};

/// Value/derivative pair returned by cos_p and cosh_p.
struct PTrigValue {
    double value;
    double derivative;
};

/// pi_p = 2*pi / (p sin(pi/p)); closed form of the defining integral.
inline double pi_p(const PExponent& pe) {
    const double pi = 3.14159265358979323846;
    return 2.0 * pi / (pe.p * std::sin(pi / pe.p));
}

namespace ptrig_detail {

// 1 - v^p for v in [0, 1], accurate near both ends.
inline double one_minus_pow(double v, double p) {
    if (v <= 0.0) return 1.0;
    if (v >= 1.0) return 0.0;
    return -std::expm1(p * std::log(v));
}

// (1 + u)^p - 1 for u >= 0 without cancellation.
inline double pow_one_plus_minus_one(double u, double p) {
    if (u <= 0.0) return 0.0;
    return std::expm1(p * std::log1p(u));
}

}  // namespace ptrig_detail

/// pi_p evaluated by quadrature of 2*integral_0^1 (1-t^p)^(-1/p) dt.
inline double pi_p_integral(const PExponent& pe, const QuadratureConfig& cfg = {}) {
    const double p = pe.p;
    // substitute t = 1 - u so the singularity sits at u = 0
    auto g = [p](double u) {
        return std::pow(-std::expm1(p * std::log1p(-u)), -1.0 / p);
    };
    return 2.0 * tanh_sinh(g, 0.0, 1.0, cfg);
}

/// Closed form cross-checked against the defining integral; throws
/// std::runtime_error if the two disagree by more than cfg.abs_tol.
inline double pi_p_checked(const PExponent& pe, const QuadratureConfig& cfg = {}) {
    const double closed = pi_p(pe);
    const double integral = pi_p_integral(pe, cfg);
    if (std::abs(closed - integral) > cfg.abs_tol)
        throw std::runtime_error("pi_p_checked: closed form and quadrature disagree");
    return closed;
}

/// arccos_p(x) = integral_x^1 (1 - t^p)^(-1/p) dt, x in [0, 1].
/// Strictly decreasing, arccos_p(1) = 0, arccos_p(0) = pi_p/2.
inline double arccos_p(const PExponent& pe, double x, const QuadratureConfig& cfg = {}) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("arccos_p: x must lie in [0, 1]");
    if (x == 1.0) return 0.0;
    const double p = pe.p;
    auto g = [p](double u) {
        return std::pow(-std::expm1(p * std::log1p(-u)), -1.0 / p);
    };
    return tanh_sinh(g, 0.0, 1.0 - x, cfg);
}

/// arccosh_p(x) = integral_1^x (t^p - 1)^(-1/p) dt, x >= 1.
inline double arccosh_p(const PExponent& pe, double x, const QuadratureConfig& cfg = {}) {
    if (!(x >= 1.0))
        throw std::invalid_argument("arccosh_p: x must be >= 1");
    if (x == 1.0) return 0.0;
    const double p = pe.p;
    auto g = [p](double u) {
        return std::pow(ptrig_detail::pow_one_plus_minus_one(u, p), -1.0 / p);
    };
    return tanh_sinh(g, 0.0, x - 1.0, cfg);
}

namespace ptrig_detail {

// integral_0^v (1 - s^p)^(-1/p) ds = pi_p/2 - arccos_p(v); regular for v < 1,
// used to invert near the zero crossing of cos_p without cancellation.
inline double arccos_p_complement(const PExponent& pe, double v,
                                  const QuadratureConfig& cfg) {
    if (v <= 0.0) return 0.0;
    const double p = pe.p;
    auto g = [p](double s) { return std::pow(one_minus_pow(s, p), -1.0 / p); };
    return tanh_sinh(g, 0.0, v, cfg);
}

// arccos_p(1 - w) as a function of the deficit w, keeping small deficits at
// full relative precision.
inline double arccos_p_of_deficit(const PExponent& pe, double w,
                                  const QuadratureConfig& cfg) {
    if (w <= 0.0) return 0.0;
    const double p = pe.p;
    auto g = [p](double u) {
        return std::pow(-std::expm1(p * std::log1p(-u)), -1.0 / p);
    };
    return tanh_sinh(g, 0.0, w, cfg);
}

struct QuarterInversion {
    double value;  // cos_p on the first quarter period, in [0, 1]
    double dmag;   // (1 - value^p)^(1/p), the derivative magnitude
};

// Solve arccos_p(v) = r for v on [0, 1], r in [0, pi_p/2].  Three regimes:
// the deficit w = 1 - v is the Newton variable for small r (v near 1, where
// the derivative magnitude would otherwise drown in rounding), the
// complementary integral handles r near pi_p/2 (v near 0), and plain Newton
// on arccos_p covers the interior.
inline QuarterInversion invert_arccos_quarter(const PExponent& pe, double r,
                                              double half_pi_p,
                                              const QuadratureConfig& cfg) {
    if (r <= 0.0) return {1.0, 0.0};
    if (r >= half_pi_p) return {0.0, 1.0};
    const double p = pe.p;

    // leading asymptotics of the deficit: r ~ p^(-1/p) w^((p-1)/p) / (1 - 1/p)
    const double w0 = std::pow((1.0 - 1.0 / p) * r * std::pow(p, 1.0 / p),
                               p / (p - 1.0));
    if (w0 < 0.05) {
        auto g = [&](double w) {
            const double omp = -std::expm1(p * std::log1p(-w));  // 1 - (1-w)^p
            const double val = arccos_p_of_deficit(pe, w, cfg) - r;
            return std::pair<double, double>{val, std::pow(omp, -1.0 / p)};
        };
        double w_hi = std::max(2.0 * w0, 1e-12);
        while (w_hi < 1.0 && arccos_p_of_deficit(pe, w_hi, cfg) < r) w_hi *= 2.0;
        w_hi = std::min(w_hi, 1.0);
        const double w = newton_bracketed(g, 0.0, w_hi, w0, 1e-13, 100,
                                          std::max(w0, 1e-300));
        const double omp = -std::expm1(p * std::log1p(-w));
        return {1.0 - w, std::pow(omp, 1.0 / p)};
    }

    const double delta = half_pi_p - r;
    if (delta < 1e-4) {
        // near the zero crossing the value is ~delta; solve the complementary
        // integral, which is anchored at 0 and keeps full relative precision
        auto g = [&](double v) {
            const double val = arccos_p_complement(pe, v, cfg) - delta;
            const double dv = std::pow(one_minus_pow(v, p), -1.0 / p);
            return std::pair<double, double>{val, dv};
        };
        const double hi = std::min(1.0, 2.0 * delta + 1e-14);
        const double v = newton_bracketed(g, 0.0, hi, delta, 1e-13, 100, delta);
        return {v, std::pow(one_minus_pow(v, p), 1.0 / p)};
    }

    auto g = [&](double v) {
        const double val = arccos_p(pe, v, cfg) - r;
        const double dv = -std::pow(one_minus_pow(v, p), -1.0 / p);
        return std::pair<double, double>{val, dv};
    };
    // classical cosine profile as the initial guess
    const double pi = 3.14159265358979323846;
    double v0 = std::cos(pi * r / (2.0 * half_pi_p));
    v0 = std::min(std::max(v0, 1e-8), 1.0 - 1e-8);
    const double v = newton_bracketed(g, 0.0, 1.0, v0);
    return {v, std::pow(one_minus_pow(v, p), 1.0 / p)};
}

}  // namespace ptrig_detail

/// cos_p(t) and its derivative for any finite t.  Argument reduction: modulo
/// 2*pi_p, fold by evenness to [0, pi_p], then by the reflection
/// cos_p(t) = -cos_p(pi_p - t) to the quarter period where the inverse of
/// arccos_p is evaluated.  On [0, pi_p] the derivative is
/// -(1 - |cos_p|^p)^(1/p); the folds flip its sign as needed.
inline PTrigValue cos_p(const PExponent& pe, double t, const QuadratureConfig& cfg = {}) {
    if (!std::isfinite(t)) throw std::invalid_argument("cos_p: t must be finite");
    const double period = 2.0 * pi_p(pe);
    const double half = 0.5 * period;     // pi_p
    const double quarter = 0.25 * period; // pi_p / 2

    double r = std::fmod(t, period);
    if (r < 0.0) r += period;
    double dsign = 1.0;
    if (r > half) {  // evenness about 0 combined with periodicity
        r = period - r;
        dsign = -1.0;
    }
    double vsign = 1.0;
    if (r > quarter) {  // reflection through pi_p/2
        r = half - r;
        vsign = -1.0;
    }

    const auto q = ptrig_detail::invert_arccos_quarter(pe, r, quarter, cfg);
    return {vsign * q.value + 0.0, dsign * (-q.dmag) + 0.0};
}

/// cosh_p(t) and its derivative; even in t, derivative odd.  For t >= 0 the
/// equation arccosh_p(1 + u) = t is solved for the excess u by bracketed
/// Newton (bracket grown geometrically), which keeps the derivative
/// ((1+u)^p - 1)^(1/p) accurate even for tiny t.
inline PTrigValue cosh_p(const PExponent& pe, double t, const QuadratureConfig& cfg = {}) {
    if (!std::isfinite(t)) throw std::invalid_argument("cosh_p: t must be finite");
    const double ta = std::abs(t);
    if (ta == 0.0) return {1.0, 0.0};
    const double p = pe.p;

    auto arc_of_u = [&](double u) { return arccosh_p(pe, 1.0 + u, cfg); };

    double u_hi = 1.0;
    int grow = 0;
    while (arc_of_u(u_hi) < ta) {
        u_hi *= 2.0;
        if (++grow > 1000 || u_hi > 1e300)
            throw std::runtime_error("cosh_p: bracket growth failed");
    }
    auto g = [&](double u) {
        const double val = arc_of_u(u) - ta;
        const double phi = std::pow(ptrig_detail::pow_one_plus_minus_one(u, p), 1.0 / p);
        // d/du arccosh_p(1+u) = 1/phi(u)
        return std::pair<double, double>{val, phi > 0.0 ? 1.0 / phi : std::numeric_limits<double>::infinity()};
    };
    // small-t asymptotics: t ~ p^(-1/p) u^((p-1)/p) / (1 - 1/p)
    double u0 = std::pow((1.0 - 1.0 / p) * ta * std::pow(p, 1.0 / p), p / (p - 1.0));
    u0 = std::min(std::max(u0, 0.0), u_hi);
    const double u = newton_bracketed(g, 0.0, u_hi, u0, 1e-13, 100,
                                      std::max(u0, 1e-300));
    const double deriv = std::pow(ptrig_detail::pow_one_plus_minus_one(u, p), 1.0 / p);
    return {1.0 + u, t >= 0.0 ? deriv : -deriv};
}

}  // namespace robinpolya
