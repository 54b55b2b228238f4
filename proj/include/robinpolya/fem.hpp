#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "robinpolya/geometry.hpp"

// P1 finite elements on convex polygons: fan triangulation with uniform
// refinement, exact stiffness/mass/boundary-mass assembly for p = 2 with a
// quadratic-form norm, and quotient/gradient evaluation for general (p, F)
// used by the projected-gradient solvers.  Everything here produces
// admissible candidates for the variational principles, so the resulting
// values are one-sided up to quadrature error.

namespace robinpolya {

struct MeshSpec {
    int n = 16;                        // subdivisions per unit length
    int boundary_quadrature_order = 8;  // Gauss points per boundary edge

    void validate() const {
        if (n < 4) throw std::invalid_argument("MeshSpec: n must be >= 4");
        if (boundary_quadrature_order < 2)
            throw std::invalid_argument(
                "MeshSpec: boundary_quadrature_order must be >= 2");
    }
};

struct BoundaryEdge {
    int a = 0, b = 0;
    Vec2 normal{};
    double length = 0.0;
};

struct TriMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary;
    double max_edge = 0.0;
};

namespace fem_detail {

inline void find_boundary(TriMesh& mesh) {
    std::map<std::pair<int, int>, std::pair<int, int>> edges;  // sorted -> oriented
    for (const auto& t : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = t[e], b = t[(e + 1) % 3];
            const auto key = std::minmax(a, b);
            auto it = edges.find(key);
            if (it == edges.end())
                edges[key] = {a, b};
            else
                it->second = {-1, -1};  // interior, seen twice
        }
    }
    mesh.boundary.clear();
    for (const auto& [key, ab] : edges) {
        if (ab.first < 0) continue;
        BoundaryEdge be;
        be.a = ab.first;
        be.b = ab.second;
        const Vec2 d = mesh.vertices[be.b] - mesh.vertices[be.a];
        be.length = euclid(d);
        be.normal = {d.y / be.length, -d.x / be.length};  // outward for ccw
        mesh.boundary.push_back(be);
    }
}

inline void update_max_edge(TriMesh& mesh) {
    mesh.max_edge = 0.0;
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e)
            mesh.max_edge = std::max(
                mesh.max_edge,
                euclid(mesh.vertices[t[(e + 1) % 3]] - mesh.vertices[t[e]]));
}

}  // namespace fem_detail

/// Fan triangulation from the vertex centroid (interior for convex input).
inline TriMesh fan_triangulation(const ConvexPolygon& omega) {
    TriMesh mesh;
    const auto& verts = omega.vertices();
    const int n = static_cast<int>(verts.size());
    Vec2 center{};
    for (const auto& v : verts) center = center + v;
    center = center * (1.0 / n);
    mesh.vertices.push_back(center);
    for (const auto& v : verts) mesh.vertices.push_back(v);
    for (int i = 0; i < n; ++i)
        mesh.triangles.push_back({0, 1 + i, 1 + (i + 1) % n});
    fem_detail::find_boundary(mesh);
    fem_detail::update_max_edge(mesh);
    return mesh;
}

/// Uniform refinement: every triangle splits into four via edge midpoints.
inline TriMesh refine(const TriMesh& mesh) {
    TriMesh out;
    out.vertices = mesh.vertices;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const int idx = static_cast<int>(out.vertices.size());
        out.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) * 0.5);
        midpoint[key] = idx;
        return idx;
    };
    for (const auto& t : mesh.triangles) {
        const int m01 = mid(t[0], t[1]);
        const int m12 = mid(t[1], t[2]);
        const int m20 = mid(t[2], t[0]);
        out.triangles.push_back({t[0], m01, m20});
        out.triangles.push_back({t[1], m12, m01});
        out.triangles.push_back({t[2], m20, m12});
        out.triangles.push_back({m01, m12, m20});
    }
    fem_detail::find_boundary(out);
    fem_detail::update_max_edge(out);
    return out;
}

/// Fan triangulation refined until the longest edge is at most 1/spec.n.
inline TriMesh triangulate(const ConvexPolygon& omega, const MeshSpec& spec) {
    spec.validate();
    TriMesh mesh = fan_triangulation(omega);
    const double target = 1.0 / spec.n;
    int level = 0;
    while (mesh.max_edge > target) {
        if (++level > 12)
            throw std::runtime_error("triangulate: refinement level cap exceeded");
        mesh = refine(mesh);
    }
    return mesh;
}

namespace fem_detail {

// SPD matrix Q with F(xi)^2 = xi^T Q xi, when the norm is quadratic.
inline std::optional<std::array<double, 3>> quadratic_form(const NormDescriptor& F) {
    using Kind = NormDescriptor::Kind;
    switch (F.kind()) {
        case Kind::euclidean:
            return std::array<double, 3>{1.0, 0.0, 1.0};
        case Kind::quadratic: {
            double a00, a01, a11;
            F.quadratic_matrix(a00, a01, a11);
            return std::array<double, 3>{a00, a01, a11};
        }
        case Kind::lq:
            if (F.lq_exponent() == 2.0)
                return std::array<double, 3>{1.0, 0.0, 1.0};
            return std::nullopt;
        case Kind::scaled: {
            auto base = quadratic_form(*F.base());
            if (!base) return std::nullopt;
            const double c2 = F.scale_factor() * F.scale_factor();
            return std::array<double, 3>{c2 * (*base)[0], c2 * (*base)[1],
                                         c2 * (*base)[2]};
        }
    }
    return std::nullopt;
}

struct TriGeometry {
    double area = 0.0;
    Vec2 grad[3];  // constant gradients of the three hat functions
};

inline TriGeometry tri_geometry(const TriMesh& mesh, const std::array<int, 3>& t) {
    const Vec2 a = mesh.vertices[t[0]];
    const Vec2 b = mesh.vertices[t[1]];
    const Vec2 c = mesh.vertices[t[2]];
    TriGeometry g;
    const double det = cross(b - a, c - a);
    g.area = 0.5 * det;
    g.grad[0] = {(b.y - c.y) / det, (c.x - b.x) / det};
    g.grad[1] = {(c.y - a.y) / det, (a.x - c.x) / det};
    g.grad[2] = {(a.y - b.y) / det, (b.x - a.x) / det};
    return g;
}

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Stiffness for the quadratic energy grad^T Q grad, exact for P1.
inline SpMat stiffness(const TriMesh& mesh, const std::array<double, 3>& Q) {
    std::vector<Triplet> trip;
    trip.reserve(mesh.triangles.size() * 9);
    for (const auto& t : mesh.triangles) {
        const auto g = tri_geometry(mesh, t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double v =
                    g.area * (Q[0] * g.grad[i].x * g.grad[j].x +
                              Q[1] * (g.grad[i].x * g.grad[j].y +
                                      g.grad[i].y * g.grad[j].x) +
                              Q[2] * g.grad[i].y * g.grad[j].y);
                trip.emplace_back(t[i], t[j], v);
            }
    }
    SpMat K(mesh.vertices.size(), mesh.vertices.size());
    K.setFromTriplets(trip.begin(), trip.end());
    return K;
}

/// Consistent mass matrix, exact for P1.
inline SpMat mass(const TriMesh& mesh) {
    std::vector<Triplet> trip;
    trip.reserve(mesh.triangles.size() * 9);
    for (const auto& t : mesh.triangles) {
        const auto g = tri_geometry(mesh, t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trip.emplace_back(t[i], t[j], g.area / 12.0 * (i == j ? 2.0 : 1.0));
    }
    SpMat M(mesh.vertices.size(), mesh.vertices.size());
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

/// Boundary mass weighted by F(normal): integral of F(nu) psi^2 over the
/// boundary, exact for P1 traces.
inline SpMat boundary_mass(const TriMesh& mesh, const NormDescriptor& F) {
    std::vector<Triplet> trip;
    for (const auto& e : mesh.boundary) {
        const double w = F.eval(e.normal) * e.length / 6.0;
        trip.emplace_back(e.a, e.a, 2.0 * w);
        trip.emplace_back(e.b, e.b, 2.0 * w);
        trip.emplace_back(e.a, e.b, w);
        trip.emplace_back(e.b, e.a, w);
    }
    SpMat B(mesh.vertices.size(), mesh.vertices.size());
    B.setFromTriplets(trip.begin(), trip.end());
    return B;
}

/// Load vector: integral of each hat function.
inline Eigen::VectorXd load(const TriMesh& mesh) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.vertices.size());
    for (const auto& t : mesh.triangles) {
        const auto g = tri_geometry(mesh, t);
        for (int i = 0; i < 3; ++i) f[t[i]] += g.area / 3.0;
    }
    return f;
}

/// Gauss-Legendre nodes/weights on [0, 1].
inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    const double pi = 3.14159265358979323846;
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

// Dunavant degree-5 rule, 7 points, barycentric; weights sum to 1.
struct TriQuadrature {
    static constexpr int kPoints = 7;
    double bary[kPoints][3];
    double weight[kPoints];

    TriQuadrature() {
        const double w0 = 0.225;
        const double a1 = 0.059715871789770, b1 = 0.470142064105115;
        const double w1 = 0.132394152788506;
        const double a2 = 0.797426985353087, b2 = 0.101286507323456;
        const double w2 = 0.125939180544827;
        int k = 0;
        auto add = [&](double x, double y, double z, double w) {
            bary[k][0] = x;
            bary[k][1] = y;
            bary[k][2] = z;
            weight[k] = w;
            ++k;
        };
        add(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, w0);
        add(a1, b1, b1, w1);
        add(b1, a1, b1, w1);
        add(b1, b1, a1, w1);
        add(a2, b2, b2, w2);
        add(b2, a2, b2, w2);
        add(b2, b2, a2, w2);
    }
};

inline double signed_power(double x, double q) {
    if (x == 0.0) return 0.0;
    return std::pow(std::abs(x), q) * (x > 0.0 ? 1.0 : -1.0);
}

}  // namespace fem_detail

/// Discrete Rayleigh and torsion quotients for general (p, F) over P1
/// candidates.  The gradient term is element-exact; |psi|^p uses a degree-5
/// triangle rule and Gauss quadrature of the requested order on boundary
/// edges.  Provides quotient values and Euclidean gradients for the
/// projected-gradient solvers.
class PQuotient {
  public:
    PQuotient(const TriMesh& mesh, const NormDescriptor& F, double p,
              double beta, int boundary_order)
        : mesh_(mesh), F_(F), p_(p), beta_(beta) {
        fem_detail::gauss_legendre(boundary_order, bnodes_, bweights_);
        tris_.reserve(mesh.triangles.size());
        for (const auto& t : mesh.triangles)
            tris_.push_back(fem_detail::tri_geometry(mesh, t));
        edge_fnu_.reserve(mesh.boundary.size());
        for (const auto& e : mesh.boundary) edge_fnu_.push_back(F.eval(e.normal));
    }

    int size() const { return static_cast<int>(mesh_.vertices.size()); }

    /// int_Omega F(grad psi)^p + beta int_bdry |psi|^p F(nu)
    double energy(const Eigen::VectorXd& psi) const {
        double num = 0.0;
        for (size_t k = 0; k < mesh_.triangles.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            const auto& g = tris_[k];
            Vec2 grad{0.0, 0.0};
            for (int i = 0; i < 3; ++i)
                grad = grad + g.grad[i] * psi[t[i]];
            const double f = F_.eval(grad);
            if (f > 0.0) num += g.area * std::pow(f, p_);
        }
        num += beta_ * boundary_p_norm(psi);
        return num;
    }

    /// int_bdry |psi|^p F(nu)
    double boundary_p_norm(const Eigen::VectorXd& psi) const {
        double total = 0.0;
        for (size_t k = 0; k < mesh_.boundary.size(); ++k) {
            const auto& e = mesh_.boundary[k];
            double acc = 0.0;
            for (size_t q = 0; q < bnodes_.size(); ++q) {
                const double v = (1.0 - bnodes_[q]) * psi[e.a] + bnodes_[q] * psi[e.b];
                acc += bweights_[q] * std::pow(std::abs(v), p_);
            }
            total += edge_fnu_[k] * e.length * acc;
        }
        return total;
    }

    /// int_Omega |psi|^p (degree-5 rule)
    double volume_p_norm(const Eigen::VectorXd& psi) const {
        double total = 0.0;
        for (size_t k = 0; k < mesh_.triangles.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            double acc = 0.0;
            for (int q = 0; q < fem_detail::TriQuadrature::kPoints; ++q) {
                const double v = quad_.bary[q][0] * psi[t[0]] +
                                 quad_.bary[q][1] * psi[t[1]] +
                                 quad_.bary[q][2] * psi[t[2]];
                acc += quad_.weight[q] * std::pow(std::abs(v), p_);
            }
            total += tris_[k].area * acc;
        }
        return total;
    }

    /// int_Omega |psi| (degree-5 rule)
    double volume_abs_integral(const Eigen::VectorXd& psi) const {
        double total = 0.0;
        for (size_t k = 0; k < mesh_.triangles.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            double acc = 0.0;
            for (int q = 0; q < fem_detail::TriQuadrature::kPoints; ++q) {
                const double v = quad_.bary[q][0] * psi[t[0]] +
                                 quad_.bary[q][1] * psi[t[1]] +
                                 quad_.bary[q][2] * psi[t[2]];
                acc += quad_.weight[q] * std::abs(v);
            }
            total += tris_[k].area * acc;
        }
        return total;
    }

    Eigen::VectorXd energy_gradient(const Eigen::VectorXd& psi) const {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(size());
        for (size_t k = 0; k < mesh_.triangles.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            const auto& tg = tris_[k];
            Vec2 grad{0.0, 0.0};
            for (int i = 0; i < 3; ++i) grad = grad + tg.grad[i] * psi[t[i]];
            const double f = F_.eval(grad);
            if (f == 0.0) continue;
            const Vec2 fg = F_.gradient(grad);
            const double c = tg.area * p_ * std::pow(f, p_ - 1.0);
            for (int i = 0; i < 3; ++i) g[t[i]] += c * dot(fg, tg.grad[i]);
        }
        for (size_t k = 0; k < mesh_.boundary.size(); ++k) {
            const auto& e = mesh_.boundary[k];
            const double c = beta_ * edge_fnu_[k] * e.length * p_;
            for (size_t q = 0; q < bnodes_.size(); ++q) {
                const double s = bnodes_[q];
                const double v = (1.0 - s) * psi[e.a] + s * psi[e.b];
                const double ph = fem_detail::signed_power(v, p_ - 1.0);
                g[e.a] += c * bweights_[q] * ph * (1.0 - s);
                g[e.b] += c * bweights_[q] * ph * s;
            }
        }
        return g;
    }

    Eigen::VectorXd volume_p_gradient(const Eigen::VectorXd& psi) const {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(size());
        for (size_t k = 0; k < mesh_.triangles.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            for (int q = 0; q < fem_detail::TriQuadrature::kPoints; ++q) {
                const double v = quad_.bary[q][0] * psi[t[0]] +
                                 quad_.bary[q][1] * psi[t[1]] +
                                 quad_.bary[q][2] * psi[t[2]];
                const double ph =
                    p_ * fem_detail::signed_power(v, p_ - 1.0) * quad_.weight[q] *
                    tris_[k].area;
                for (int i = 0; i < 3; ++i) g[t[i]] += ph * quad_.bary[q][i];
            }
        }
        return g;
    }

    Eigen::VectorXd volume_abs_gradient(const Eigen::VectorXd& psi) const {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(size());
        for (size_t k = 0; k < mesh_.triangles.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            for (int q = 0; q < fem_detail::TriQuadrature::kPoints; ++q) {
                const double v = quad_.bary[q][0] * psi[t[0]] +
                                 quad_.bary[q][1] * psi[t[1]] +
                                 quad_.bary[q][2] * psi[t[2]];
                const double s =
                    (v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0)) * quad_.weight[q] *
                    tris_[k].area;
                for (int i = 0; i < 3; ++i) g[t[i]] += s * quad_.bary[q][i];
            }
        }
        return g;
    }

  private:
    const TriMesh& mesh_;
    const NormDescriptor& F_;
    double p_;
    double beta_;
    std::vector<fem_detail::TriGeometry> tris_;
    std::vector<double> edge_fnu_;
    std::vector<double> bnodes_, bweights_;
    fem_detail::TriQuadrature quad_;
};

}  // namespace robinpolya
