#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Anisotropic norms F on R^2 and convex polygonal domains: evaluation of F,
// its gradient and polar F*, Wulff shapes, area, anisotropic perimeter
// P_F = sum of edge length * F(normal), the distance d_F to the boundary
// measured in the polar norm, and the anisotropic inradius R_F.

namespace robinpolya {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double t) const { return {x * t, y * t}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double euclid(Vec2 a) { return std::hypot(a.x, a.y); }

/// A parametrized norm: euclidean, quadratic sqrt(xi^T A xi) with A SPD,
/// lq (sum |xi_i|^q)^(1/q) with q > 1, or a positive multiple of another
/// norm.  Construction computes the equivalence constants
/// a |xi| <= F(xi) <= b |xi| over the unit circle and a heuristic
/// admissibility flag (sampled positive definiteness of the Hessian of F^2;
/// lq norms with q != 2 degenerate on the axes and get flagged).
class NormDescriptor {
  public:
    enum class Kind { euclidean, quadratic, lq, scaled };

    static NormDescriptor euclidean() { return NormDescriptor(Kind::euclidean); }

    static NormDescriptor quadratic(double a00, double a01, double a11) {
        if (!(a00 > 0.0) || !(a00 * a11 - a01 * a01 > 0.0))
            throw std::invalid_argument(
                "NormDescriptor::quadratic: matrix must be symmetric positive definite");
        NormDescriptor n(Kind::quadratic);
        n.a00_ = a00;
        n.a01_ = a01;
        n.a11_ = a11;
        n.finalize();
        return n;
    }

    static NormDescriptor lq(double q) {
        if (!std::isfinite(q) || !(q > 1.0))
            throw std::invalid_argument("NormDescriptor::lq: q must be finite and > 1");
        NormDescriptor n(Kind::lq);
        n.q_ = q;
        n.finalize();
        return n;
    }

    static NormDescriptor scaled(const NormDescriptor& base, double factor) {
        if (!std::isfinite(factor) || !(factor > 0.0))
            throw std::invalid_argument("NormDescriptor::scaled: factor must be > 0");
        NormDescriptor n(Kind::scaled);
        n.factor_ = factor;
        n.base_ = std::make_shared<NormDescriptor>(base);
        n.finalize();
        return n;
    }

    Kind kind() const { return kind_; }
    double lower_bound() const { return a_bound_; }   // a in a|xi| <= F(xi)
    double upper_bound() const { return b_bound_; }   // b in F(xi) <= b|xi|
    bool admissible() const { return admissible_; }
    double lq_exponent() const { return q_; }
    double scale_factor() const { return factor_; }
    const NormDescriptor* base() const { return base_.get(); }
    void quadratic_matrix(double& a00, double& a01, double& a11) const {
        a00 = a00_;
        a01 = a01_;
        a11 = a11_;
    }

    double operator()(Vec2 xi) const { return eval(xi); }

    double eval(Vec2 xi) const {
        switch (kind_) {
            case Kind::euclidean:
                return euclid(xi);
            case Kind::quadratic:
                return std::sqrt(qform(xi));
            case Kind::lq:
                return lq_norm(xi, q_);
            case Kind::scaled:
                return factor_ * base_->eval(xi);
        }
        return 0.0;
    }

    /// Gradient of F at xi != 0; 0-homogeneous, with xi . grad = F(xi)
    /// (Euler's identity for 1-homogeneous functions).
    Vec2 gradient(Vec2 xi) const {
        if (xi.x == 0.0 && xi.y == 0.0)
            throw std::invalid_argument("NormDescriptor: gradient undefined at 0");
        switch (kind_) {
            case Kind::euclidean: {
                const double r = euclid(xi);
                return {xi.x / r, xi.y / r};
            }
            case Kind::quadratic: {
                const double f = std::sqrt(qform(xi));
                return {(a00_ * xi.x + a01_ * xi.y) / f,
                        (a01_ * xi.x + a11_ * xi.y) / f};
            }
            case Kind::lq: {
                const double f = lq_norm(xi, q_);
                const double s = std::pow(f, 1.0 - q_);
                auto comp = [&](double t) {
                    return t == 0.0 ? 0.0
                                    : std::pow(std::abs(t), q_ - 1.0) *
                                          (t > 0.0 ? 1.0 : -1.0) * s;
                };
                return {comp(xi.x), comp(xi.y)};
            }
            case Kind::scaled: {
                Vec2 g = base_->gradient(xi);
                return {factor_ * g.x, factor_ * g.y};
            }
        }
        return {0.0, 0.0};
    }

    /// Polar value F*(v) = sup_{xi != 0} <xi, v> / F(xi), by the closed-form
    /// dualities: euclidean <-> euclidean, quadratic A <-> quadratic A^{-1},
    /// lq(q) <-> lq(q'), scale c <-> scale 1/c.
    double polar_eval(Vec2 v) const {
        switch (kind_) {
            case Kind::euclidean:
                return euclid(v);
            case Kind::quadratic: {
                const double det = a00_ * a11_ - a01_ * a01_;
                const double q = (a11_ * v.x * v.x - 2.0 * a01_ * v.x * v.y +
                                  a00_ * v.y * v.y) / det;
                return std::sqrt(std::max(q, 0.0));
            }
            case Kind::lq:
                return lq_norm(v, q_ / (q_ - 1.0));
            case Kind::scaled:
                return base_->polar_eval(v) / factor_;
        }
        return 0.0;
    }

    /// Descriptor of the polar norm.
    NormDescriptor polar() const {
        switch (kind_) {
            case Kind::euclidean:
                return euclidean();
            case Kind::quadratic: {
                const double det = a00_ * a11_ - a01_ * a01_;
                return quadratic(a11_ / det, -a01_ / det, a00_ / det);
            }
            case Kind::lq:
                return lq(q_ / (q_ - 1.0));
            case Kind::scaled:
                return scaled(base_->polar(), 1.0 / factor_);
        }
        return euclidean();
    }

    std::string describe() const {
        char buf[64];
        switch (kind_) {
            case Kind::euclidean:
                return "euclidean";
            case Kind::quadratic:
                std::snprintf(buf, sizeof buf, "quadratic[%g,%g;%g,%g]", a00_,
                              a01_, a01_, a11_);
                return buf;
            case Kind::lq:
                std::snprintf(buf, sizeof buf, "lq(%g)", q_);
                return buf;
            case Kind::scaled:
                std::snprintf(buf, sizeof buf, "scaled(%g)*", factor_);
                return buf + base_->describe();
        }
        return "?";
    }

  private:
    explicit NormDescriptor(Kind k) : kind_(k) {
        if (k == Kind::euclidean) finalize();
    }

    double qform(Vec2 xi) const {
        return a00_ * xi.x * xi.x + 2.0 * a01_ * xi.x * xi.y + a11_ * xi.y * xi.y;
    }

    static double lq_norm(Vec2 xi, double q) {
        const double ax = std::abs(xi.x), ay = std::abs(xi.y);
        const double m = std::max(ax, ay);
        if (m == 0.0) return 0.0;
        return m * std::pow(std::pow(ax / m, q) + std::pow(ay / m, q), 1.0 / q);
    }

    // equivalence constants by direction sampling plus golden-section
    // refinement around the extremal angles
    void finalize() {
        const double pi = 3.14159265358979323846;
        const int samples = 4096;
        double amin = std::numeric_limits<double>::infinity(), amax = 0.0;
        double th_min = 0.0, th_max = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double th = pi * i / samples;  // evenness: half circle suffices
            const double f = eval({std::cos(th), std::sin(th)});
            if (f < amin) { amin = f; th_min = th; }
            if (f > amax) { amax = f; th_max = th; }
        }
        auto refine = [&](double th0, bool maximize) {
            const double gr = 0.61803398874989485;
            double lo = th0 - pi / samples, hi = th0 + pi / samples;
            auto val = [&](double th) {
                const double f = eval({std::cos(th), std::sin(th)});
                return maximize ? -f : f;
            };
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = val(x1), f2 = val(x2);
            for (int it = 0; it < 60; ++it) {
                if (f1 < f2) { hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = val(x1); }
                else { lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = val(x2); }
            }
            return eval({std::cos(0.5 * (lo + hi)), std::sin(0.5 * (lo + hi))});
        };
        a_bound_ = std::min(amin, refine(th_min, false));
        b_bound_ = std::max(amax, refine(th_max, true));
        admissible_ = check_admissible();
    }

    // Sampled Hessian of F^2 (central differences, including the axes where
    // lq norms degenerate).  Heuristic: inadmissible if the smallest
    // eigenvalue nearly vanishes or an entry blows up, relative to b^2.
    bool check_admissible() const {
        const double pi = 3.14159265358979323846;
        const double h = 1e-7;
        const double scale = b_bound_ * b_bound_;
        auto f2 = [&](double x, double y) {
            const double f = eval({x, y});
            return f * f;
        };
        for (int i = 0; i <= 64; ++i) {
            const double th = 0.5 * pi * i / 64.0;  // includes both axes
            const double x = std::cos(th), y = std::sin(th);
            const double hxx =
                (f2(x + h, y) - 2.0 * f2(x, y) + f2(x - h, y)) / (h * h);
            const double hyy =
                (f2(x, y + h) - 2.0 * f2(x, y) + f2(x, y - h)) / (h * h);
            const double hxy = (f2(x + h, y + h) - f2(x + h, y - h) -
                                f2(x - h, y + h) + f2(x - h, y - h)) /
                               (4.0 * h * h);
            const double tr = hxx + hyy;
            const double det = hxx * hyy - hxy * hxy;
            const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
            const double emin = tr / 2.0 - disc;
            const double emax = tr / 2.0 + disc;
            if (emin < 1e-3 * scale) return false;
            if (emax > 1e3 * scale) return false;
        }
        return true;
    }

    Kind kind_;
    double a00_ = 1.0, a01_ = 0.0, a11_ = 1.0;  // quadratic
    double q_ = 2.0;                            // lq
    double factor_ = 1.0;                       // scaled
    std::shared_ptr<const NormDescriptor> base_;
    double a_bound_ = 1.0, b_bound_ = 1.0;
    bool admissible_ = true;
};

/// Generic polar evaluation by direct maximization of <xi, v>/F(xi) over 720
/// unit directions with golden-section refinement; the oracle against which
/// the closed forms are checked.
inline double polar_eval_maximized(const NormDescriptor& F, Vec2 v,
                                   int directions = 720) {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    const double pi = 3.14159265358979323846;
    auto ratio = [&](double th) {
        const Vec2 xi{std::cos(th), std::sin(th)};
        return dot(xi, v) / F.eval(xi);
    };
    double best = -std::numeric_limits<double>::infinity(), th_best = 0.0;
    for (int i = 0; i < directions; ++i) {
        const double th = 2.0 * pi * i / directions;
        const double r = ratio(th);
        if (r > best) { best = r; th_best = th; }
    }
    const double gr = 0.61803398874989485;
    double lo = th_best - 2.0 * pi / directions, hi = th_best + 2.0 * pi / directions;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = -ratio(x1), f2 = -ratio(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) { hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = -ratio(x1); }
        else { lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = -ratio(x2); }
    }
    return std::max(best, ratio(0.5 * (lo + hi)));
}

struct Facet {
    Vec2 normal;    // unit Euclidean outward normal
    double offset;  // support value h, so x . normal <= h inside
    double length;
};

/// Bounded convex domain given by a counterclockwise vertex chain.
/// Consecutive collinear vertices (cross product below 1e-12) are merged so
/// no zero-length facet enters the perimeter; the remaining chain must be
/// strictly convex.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<Vec2> vertices) {
        if (vertices.size() < 3)
            throw std::invalid_argument("ConvexPolygon: need at least 3 vertices");
        // drop consecutive duplicates, then merge collinear runs
        std::vector<Vec2> dedup;
        for (size_t i = 0; i < vertices.size(); ++i) {
            const Vec2 next = vertices[(i + 1) % vertices.size()];
            if (euclid(vertices[i] - next) < 1e-15) continue;
            dedup.push_back(vertices[i]);
        }
        std::vector<Vec2> kept;
        const int m = static_cast<int>(dedup.size());
        for (int i = 0; i < m; ++i) {
            const Vec2 prev = dedup[(i + m - 1) % m];
            const Vec2 cur = dedup[i];
            const Vec2 next = dedup[(i + 1) % m];
            if (std::abs(cross(cur - prev, next - cur)) < 1e-12) continue;
            kept.push_back(cur);
        }
        if (kept.size() < 3)
            throw std::invalid_argument("ConvexPolygon: degenerate vertex chain");
        const int n = static_cast<int>(kept.size());
        for (int i = 0; i < n; ++i) {
            const Vec2 a = kept[i];
            const Vec2 b = kept[(i + 1) % n];
            const Vec2 c = kept[(i + 2) % n];
            if (!(cross(b - a, c - b) > 0.0))
                throw std::invalid_argument(
                    "ConvexPolygon: vertices must be strictly convex and "
                    "counterclockwise");
        }
        vertices_ = std::move(kept);
        double a2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vec2 u = vertices_[i];
            const Vec2 v = vertices_[(i + 1) % n];
            a2 += cross(u, v);
            const Vec2 edge = v - u;
            const double len = euclid(edge);
            const Vec2 nu{edge.y / len, -edge.x / len};  // outward for ccw
            facets_.push_back({nu, dot(u, nu), len});
        }
        area_ = 0.5 * a2;
        if (area_ < 1e-14)
            throw std::invalid_argument("ConvexPolygon: degenerate (area < 1e-14)");
    }

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    double area() const { return area_; }

    bool contains(Vec2 x, double tol = 1e-12) const {
        for (const auto& f : facets_)
            if (dot(x, f.normal) > f.offset + tol * (1.0 + std::abs(f.offset)))
                return false;
        return true;
    }

  private:
    std::vector<Vec2> vertices_;
    std::vector<Facet> facets_;
    double area_ = 0.0;
};

struct GeometrySummary {
    double area = 0.0;
    double perimeter_F = 0.0;
    double s0 = 0.0;          // area / perimeter_F
    double inradius_F = 0.0;  // R_F
    Vec2 incenter{};
};

/// Anisotropic distance to the boundary, d_F(x) = inf_{y on the boundary}
/// F*(x - y) = min over facets of (h_i - x . nu_i) / F(nu_i); the facet form
/// follows from <xi, eta> <= F(xi) F*(eta) with equality attained.
inline double distance_F(const ConvexPolygon& omega, const NormDescriptor& F,
                         Vec2 x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : omega.facets()) {
        const double slack = f.offset - dot(x, f.normal);
        if (slack < -1e-12 * (1.0 + std::abs(f.offset)))
            throw std::invalid_argument("distance_F: point outside the domain");
        best = std::min(best, slack / F.eval(f.normal));
    }
    return std::max(best, 0.0);
}

/// Anisotropic inradius and incenter: the exact solution of the tiny linear
/// program  max r  s.t.  x . nu_i + r F(nu_i) <= h_i,  by enumeration of
/// active facet triples (the feasible set in (x, r) is a bounded polytope,
/// so the optimum sits at a vertex).
inline std::pair<double, Vec2> inradius_F(const ConvexPolygon& omega,
                                          const NormDescriptor& F) {
    const auto& facets = omega.facets();
    const int n = static_cast<int>(facets.size());
    std::vector<double> fn(n);
    for (int i = 0; i < n; ++i) fn[i] = F.eval(facets[i].normal);

    double scale = 0.0;
    for (const auto& f : facets) scale = std::max(scale, std::abs(f.offset));

    double best_r = -1.0;
    Vec2 best_x{};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                // solve [nu; F(nu)] (x, r) = h for the active triple
                const double m[3][3] = {
                    {facets[i].normal.x, facets[i].normal.y, fn[i]},
                    {facets[j].normal.x, facets[j].normal.y, fn[j]},
                    {facets[k].normal.x, facets[k].normal.y, fn[k]}};
                const double rhs[3] = {facets[i].offset, facets[j].offset,
                                       facets[k].offset};
                const double det =
                    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                if (std::abs(det) < 1e-12) continue;
                auto det3 = [&](int col) {
                    double t[3][3];
                    for (int r = 0; r < 3; ++r)
                        for (int c = 0; c < 3; ++c)
                            t[r][c] = (c == col) ? rhs[r] : m[r][c];
                    return t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                           t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                           t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
                };
                const double x0 = det3(0) / det;
                const double y0 = det3(1) / det;
                const double r0 = det3(2) / det;
                if (!(r0 > best_r)) continue;
                bool feasible = true;
                for (int l = 0; l < n && feasible; ++l) {
                    const double slack = facets[l].offset -
                                         (x0 * facets[l].normal.x +
                                          y0 * facets[l].normal.y) -
                                         r0 * fn[l];
                    if (slack < -1e-9 * (1.0 + scale)) feasible = false;
                }
                if (feasible) {
                    best_r = r0;
                    best_x = {x0, y0};
                }
            }
    if (best_r < 0.0)
        throw std::runtime_error("inradius_F: no feasible active triple found");
    return {best_r, best_x};
}

/// Geometry quantities used by the eigenvalue bounds: area (shoelace),
/// anisotropic perimeter, their ratio s0, and the anisotropic inradius.
inline GeometrySummary polygon_summary(const ConvexPolygon& omega,
                                       const NormDescriptor& F) {
    GeometrySummary g;
    g.area = omega.area();
    g.perimeter_F = 0.0;
    for (const auto& f : omega.facets()) g.perimeter_F += f.length * F.eval(f.normal);
    g.s0 = g.area / g.perimeter_F;
    auto [r, c] = inradius_F(omega, F);
    g.inradius_F = r;
    g.incenter = c;
    return g;
}

/// Area of the Wulff shape {F* < 1} from boundary samples
/// r(theta) = 1 / F*(cos theta, sin theta), integrated as
/// (1/2) * trapezoid of r(theta)^2 over the period.  At least
/// O(samples^-2); exact for disks and spectrally accurate for smooth norms
/// (the inscribed-polygon shoelace would carry a pi (2 pi/n)^2 / 6 deficit,
/// 1.2e-6 at 4096 samples, too coarse for the disk check).
inline double wulff_area(const NormDescriptor& F, int samples = 4096) {
    if (samples < 64)
        throw std::invalid_argument("wulff_area: need at least 64 samples");
    const double pi = 3.14159265358979323846;
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * pi * i / samples;
        const double r = 1.0 / F.polar_eval({std::cos(th), std::sin(th)});
        sum += r * r;
    }
    return pi * sum / samples;
}

}  // namespace robinpolya
