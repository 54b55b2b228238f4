#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "robinpolya/bounds.hpp"
#include "robinpolya/geometry.hpp"
#include "robinpolya/numverify.hpp"
#include "robinpolya/oned_robin.hpp"

// Input parsing (domain-spec JSON, strict about unknown fields) and
// deterministic output serialization.  All numbers are written with
// %.17g so every double round-trips exactly and identical invocations
// produce byte-identical output.

namespace robinpolya {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Minimal insertion-ordered JSON writer with %.17g doubles.
class JsonWriter {
  public:
    JsonWriter& begin_object() {
        comma();
        out_ += '{';
        stack_.push_back(true);
        return *this;
    }
    JsonWriter& end_object() {
        out_ += '}';
        stack_.pop_back();
        return *this;
    }
    JsonWriter& begin_array() {
        comma();
        out_ += '[';
        stack_.push_back(true);
        return *this;
    }
    JsonWriter& end_array() {
        out_ += ']';
        stack_.pop_back();
        return *this;
    }
    JsonWriter& key(const std::string& k) {
        comma();
        out_ += '"';
        out_ += k;
        out_ += "\":";
        pending_value_ = true;
        return *this;
    }
    JsonWriter& value(double v) {
        comma();
        out_ += fmt_g17(v);
        return *this;
    }
    JsonWriter& value(int v) {
        comma();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(bool v) {
        comma();
        out_ += v ? "true" : "false";
        return *this;
    }
    JsonWriter& value(const std::string& v) {
        comma();
        out_ += '"';
        for (char c : v) {
            if (c == '"' || c == '\\') out_ += '\\';
            out_ += c;
        }
        out_ += '"';
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    const std::string& str() const { return out_; }

  private:
    void comma() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!stack_.empty()) {
            if (!stack_.back()) out_ += ',';
            stack_.back() = false;
        }
    }
    std::string out_;
    std::vector<bool> stack_;  // true while the container is still empty
    bool pending_value_ = false;
};

namespace io_detail {

inline void check_keys(const nlohmann::json& obj, const char* where,
                       std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) ok = true;
        if (!ok)
            throw std::invalid_argument(std::string(where) + ": unknown field '" +
                                        item.key() + "'");
    }
}

inline double number_field(const nlohmann::json& obj, const char* where,
                           const char* name) {
    if (!obj.contains(name))
        throw std::invalid_argument(std::string(where) + ": missing field '" +
                                    name + "'");
    if (!obj[name].is_number())
        throw std::invalid_argument(std::string(where) + ": field '" + name +
                                    "' must be a number");
    return obj[name].get<double>();
}

}  // namespace io_detail

/// Norm from its JSON descriptor: {"kind":"euclidean"} |
/// {"kind":"quadratic","A":[[a,b],[b,c]]} | {"kind":"lq","q":q} |
/// {"kind":"scaled","factor":f,"base":{...}}.  Unknown fields are rejected
/// by name.
inline NormDescriptor parse_norm(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("norm: expected a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("norm: missing string field 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "euclidean") {
        io_detail::check_keys(j, "norm", {"kind"});
        return NormDescriptor::euclidean();
    }
    if (kind == "quadratic") {
        io_detail::check_keys(j, "norm", {"kind", "A"});
        if (!j.contains("A") || !j["A"].is_array() || j["A"].size() != 2 ||
            !j["A"][0].is_array() || j["A"][0].size() != 2 ||
            !j["A"][1].is_array() || j["A"][1].size() != 2)
            throw std::invalid_argument("norm.A: expected a 2x2 matrix");
        const double a00 = j["A"][0][0].get<double>();
        const double a01 = j["A"][0][1].get<double>();
        const double a10 = j["A"][1][0].get<double>();
        const double a11 = j["A"][1][1].get<double>();
        if (std::abs(a01 - a10) > 1e-12 * (1.0 + std::abs(a01)))
            throw std::invalid_argument("norm.A: matrix must be symmetric");
        return NormDescriptor::quadratic(a00, a01, a11);
    }
    if (kind == "lq") {
        io_detail::check_keys(j, "norm", {"kind", "q"});
        return NormDescriptor::lq(io_detail::number_field(j, "norm", "q"));
    }
    if (kind == "scaled") {
        io_detail::check_keys(j, "norm", {"kind", "factor", "base"});
        if (!j.contains("base"))
            throw std::invalid_argument("norm: missing field 'base'");
        return NormDescriptor::scaled(
            parse_norm(j["base"]), io_detail::number_field(j, "norm", "factor"));
    }
    throw std::invalid_argument("norm.kind: expected one of euclidean, "
                                "quadratic, lq, scaled; got '" + kind + "'");
}

struct DomainSpec {
    NormDescriptor norm;
    ConvexPolygon polygon;
};

/// Domain-spec JSON: {"norm": {...}, "polygon": [[x, y], ...]}.
inline DomainSpec parse_domain_spec(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("domain spec: expected a JSON object");
    io_detail::check_keys(j, "domain spec", {"norm", "polygon"});
    if (!j.contains("norm"))
        throw std::invalid_argument("domain spec: missing field 'norm'");
    if (!j.contains("polygon") || !j["polygon"].is_array())
        throw std::invalid_argument("domain spec: missing array field 'polygon'");
    std::vector<Vec2> verts;
    for (const auto& pt : j["polygon"]) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() ||
            !pt[1].is_number())
            throw std::invalid_argument(
                "domain spec.polygon: expected [x, y] number pairs");
        verts.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return {parse_norm(j["norm"]), ConvexPolygon(verts)};
}

inline DomainSpec load_domain_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open input file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
    return parse_domain_spec(j);
}

inline void write_geometry(JsonWriter& w, const GeometrySummary& g) {
    w.begin_object();
    w.key("area").value(g.area);
    w.key("perimeter_F").value(g.perimeter_F);
    w.key("s0").value(g.s0);
    w.key("inradius_F").value(g.inradius_F);
    w.key("incenter").begin_array().value(g.incenter.x).value(g.incenter.y).end_array();
    w.end_object();
}

inline std::string mu1_result_json(const RobinParams& rp, const Mu1Result& r) {
    JsonWriter w;
    w.begin_object();
    w.key("p").value(rp.p.p);
    w.key("beta").value(rp.beta);
    w.key("s0").value(rp.s0);
    w.key("mu").value(r.mu);
    w.key("branch").value(to_string(r.branch));
    w.key("boundary_residual").value(r.boundary_residual);
    w.key("bracket").begin_array().value(r.bracket_lo).value(r.bracket_hi).end_array();
    w.key("iterations").value(r.iterations);
    w.end_object();
    return w.str();
}

inline std::string geometry_json(const GeometrySummary& g, const NormDescriptor& F) {
    JsonWriter w;
    w.begin_object();
    w.key("norm").value(F.describe());
    w.key("norm_admissible").value(F.admissible());
    w.key("geometry");
    write_geometry(w, g);
    w.end_object();
    return w.str();
}

inline std::string bound_report_json(const BoundReport& r,
                                     const std::string& norm_name) {
    JsonWriter w;
    w.begin_object();
    w.key("p").value(r.p);
    w.key("beta").value(r.beta);
    w.key("norm").value(norm_name);
    w.key("norm_admissible").value(r.norm_admissible);
    w.key("geometry");
    write_geometry(w, r.geometry);
    w.key("dirichlet_polya").value(r.dirichlet_polya);
    w.key("robin_theorem1").value(r.robin_theorem1);
    if (r.robin_corollary_p2) w.key("robin_corollary_p2").value(*r.robin_corollary_p2);
    if (r.robin_trivial_polya_capped)
        w.key("robin_trivial_polya_capped").value(*r.robin_trivial_polya_capped);
    if (r.robin_negative_beta)
        w.key("robin_negative_beta").value(*r.robin_negative_beta);
    if (r.torsion_as_stated) w.key("torsion_as_stated").value(*r.torsion_as_stated);
    if (r.torsion_as_derived)
        w.key("torsion_as_derived").value(*r.torsion_as_derived);
    w.key("ordering_flags").begin_object();
    for (const auto& [name, ok] : r.ordering_flags) w.key(name).value(ok);
    w.end_object();
    w.key("all_flags_hold").value(r.all_flags_hold());
    w.end_object();
    return w.str();
}

inline std::string bound_report_csv(const BoundReport& r,
                                    const std::string& norm_name,
                                    const std::string& domain_label) {
    std::ostringstream out;
    out << "p,beta,norm,domain,area,perimeter_F,s0,inradius_F,dirichlet_polya,"
           "robin_theorem1,robin_corollary_p2,robin_trivial_polya_capped,"
           "robin_negative_beta,torsion_as_stated,torsion_as_derived,"
           "norm_admissible,flag_mu_sign_matches_beta,flag_theorem1_le_trivial,"
           "flag_theorem1_lt_dirichlet_polya,flag_theorem1_le_corollary_p2,"
           "flag_theorem1_le_negative_beta_bound,all_flags_hold\n";
    auto opt = [](const std::optional<double>& v) {
        return v ? fmt_g17(*v) : std::string();
    };
    auto flg = [&](const char* name) -> std::string {
        const auto f = r.flag(name);
        if (!f) return "";
        return *f ? "true" : "false";
    };
    out << fmt_g17(r.p) << ',' << fmt_g17(r.beta) << ',' << norm_name << ','
        << domain_label << ',' << fmt_g17(r.geometry.area) << ','
        << fmt_g17(r.geometry.perimeter_F) << ',' << fmt_g17(r.geometry.s0) << ','
        << fmt_g17(r.geometry.inradius_F) << ',' << fmt_g17(r.dirichlet_polya)
        << ',' << fmt_g17(r.robin_theorem1) << ',' << opt(r.robin_corollary_p2)
        << ',' << opt(r.robin_trivial_polya_capped) << ','
        << opt(r.robin_negative_beta) << ',' << opt(r.torsion_as_stated) << ','
        << opt(r.torsion_as_derived) << ','
        << (r.norm_admissible ? "true" : "false") << ','
        << flg("mu_sign_matches_beta") << ',' << flg("theorem1_le_trivial") << ','
        << flg("theorem1_lt_dirichlet_polya") << ','
        << flg("theorem1_le_corollary_p2") << ','
        << flg("theorem1_le_negative_beta_bound") << ','
        << (r.all_flags_hold() ? "true" : "false") << '\n';
    return out.str();
}

inline void write_estimate(JsonWriter& w, const EigenEstimate& e) {
    w.begin_object();
    w.key("value").value(e.value);
    w.key("side").value(to_string(e.side));
    w.key("mesh").begin_object();
    w.key("n").value(e.mesh.n);
    w.key("boundary_quadrature_order").value(e.mesh.boundary_quadrature_order);
    w.end_object();
    w.key("iterations").value(e.iterations);
    w.key("converged").value(e.converged);
    w.end_object();
}

inline std::string slab_csv(const SlabExperimentResult& res) {
    std::ostringstream out;
    out << "ell,lambda,s_ell,mu_ell,ratio\n";
    for (const auto& row : res.rows)
        out << fmt_g17(row.ell) << ',' << fmt_g17(row.lambda) << ','
            << fmt_g17(row.s_ell) << ',' << fmt_g17(row.mu_ell) << ','
            << fmt_g17(row.ratio) << '\n';
    out << "# ratio nondecreasing from ell=" << fmt_g17(res.monotone_from_ell)
        << '\n';
    return out.str();
}

}  // namespace robinpolya
