#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "robinpolya/cli.hpp"

using robinpolya::cli::run;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << content;
    return path.string();
}

const char* kSquareJson =
    R"({"norm": {"kind": "euclidean"}, "polygon": [[0,0],[1,0],[1,1],[0,1]]})";

}  // namespace

TEST_CASE("mu1 subcommand") {
    const auto zero = invoke({"mu1", "--p", "2", "--beta", "0", "--s0", "1"});
    CHECK(zero.code == 0);
    auto j = nlohmann::json::parse(zero.out);
    CHECK(j["mu"].get<double>() == 0.0);
    CHECK(j["branch"] == "zero");

    const auto one = invoke({"mu1", "--p", "2", "--beta", "1", "--s0", "1"});
    CHECK(one.code == 0);
    j = nlohmann::json::parse(one.out);
    CHECK(j["mu"].get<double>() == Catch::Approx(0.740174).margin(1e-6));
    CHECK(j["branch"] == "trigonometric");
}

TEST_CASE("ptrig subcommand") {
    const auto r = invoke({"ptrig", "--p", "3", "--fn", "cos_p", "--t", "1.0"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("value"));
    CHECK(j.contains("derivative"));

    const auto pi3 = invoke({"ptrig", "--p", "3", "--fn", "pi_p", "--check"});
    CHECK(pi3.code == 0);
    const auto jp = nlohmann::json::parse(pi3.out);
    CHECK(jp["value"].get<double>() == Catch::Approx(2.418399).margin(1e-6));
    CHECK(jp.contains("defining_integral"));

    // missing argument for the chosen function
    const auto bad = invoke({"ptrig", "--p", "3", "--fn", "cos_p"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("--t") != std::string::npos);

    const auto badfn = invoke({"ptrig", "--p", "3", "--fn", "tan_p", "--t", "1"});
    CHECK(badfn.code == 2);

    // out-of-domain p
    const auto badp = invoke({"ptrig", "--p", "1", "--fn", "pi_p"});
    CHECK(badp.code == 2);
    CHECK(badp.err.find("p must be") != std::string::npos);
}

TEST_CASE("geometry and bounds subcommands on a JSON domain") {
    const auto path = write_temp("cli_square.json", kSquareJson);

    const auto g = invoke({"geometry", "--input", path});
    CHECK(g.code == 0);
    auto jg = nlohmann::json::parse(g.out);
    CHECK(jg["geometry"]["area"].get<double>() == Catch::Approx(1.0));
    CHECK(jg["geometry"]["perimeter_F"].get<double>() == Catch::Approx(4.0));
    CHECK(jg["geometry"]["s0"].get<double>() == Catch::Approx(0.25));
    CHECK(jg["norm_admissible"].get<bool>());

    const auto b = invoke({"bounds", "--input", path, "--p", "2", "--beta", "1"});
    CHECK(b.code == 0);
    auto jb = nlohmann::json::parse(b.out);
    CHECK(jb["robin_theorem1"].get<double>() == Catch::Approx(3.6878507).margin(1e-5));
    CHECK(jb["robin_trivial_polya_capped"].get<double>() == Catch::Approx(4.0));
    CHECK(jb["all_flags_hold"].get<bool>());

    const auto csv = invoke({"bounds", "--input", path, "--p", "2", "--beta", "1",
                             "--format", "csv", "--label", "unit_square"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("p,beta,norm,domain") == 0);
    CHECK(csv.out.find("unit_square") != std::string::npos);
}

TEST_CASE("bounds rejects malformed input with named errors") {
    const auto missing = invoke({"bounds", "--input", "no_such_file.json",
                                 "--p", "2", "--beta", "1"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("no_such_file.json") != std::string::npos);

    const auto badjson = write_temp("cli_bad.json", "{not json");
    const auto r1 = invoke({"bounds", "--input", badjson, "--p", "2", "--beta", "1"});
    CHECK(r1.code == 2);
    CHECK(r1.err.find("malformed JSON") != std::string::npos);

    const auto unknown = write_temp(
        "cli_unknown.json",
        R"({"norm": {"kind": "euclidean", "extra": 1}, "polygon": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto r2 = invoke({"bounds", "--input", unknown, "--p", "2", "--beta", "1"});
    CHECK(r2.code == 2);
    CHECK(r2.err.find("unknown field 'extra'") != std::string::npos);

    const auto badkind = write_temp(
        "cli_badkind.json",
        R"({"norm": {"kind": "manhattan"}, "polygon": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto r3 = invoke({"bounds", "--input", badkind, "--p", "2", "--beta", "1"});
    CHECK(r3.code == 2);
    CHECK(r3.err.find("manhattan") != std::string::npos);

    const auto cw = write_temp(
        "cli_cw.json",
        R"({"norm": {"kind": "euclidean"}, "polygon": [[0,0],[0,1],[1,1],[1,0]]})");
    const auto r4 = invoke({"bounds", "--input", cw, "--p", "2", "--beta", "1"});
    CHECK(r4.code == 2);
    CHECK(r4.err.find("counterclockwise") != std::string::npos);
}

TEST_CASE("norm parsing covers all kinds") {
    const auto quad = write_temp(
        "cli_quad.json",
        R"({"norm": {"kind": "quadratic", "A": [[1,0],[0,4]]}, "polygon": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto r = invoke({"geometry", "--input", quad});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    // P_F = 2 * F((1,0)) + 2 * F((0,1)) = 2 * 1 + 2 * 2 = 6
    CHECK(j["geometry"]["perimeter_F"].get<double>() == Catch::Approx(6.0));

    const auto scaled = write_temp(
        "cli_scaled.json",
        R"({"norm": {"kind": "scaled", "factor": 2.0, "base": {"kind": "lq", "q": 3.0}},
            "polygon": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto r2 = invoke({"geometry", "--input", scaled});
    CHECK(r2.code == 0);
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["geometry"]["perimeter_F"].get<double>() == Catch::Approx(8.0));
    CHECK_FALSE(j2["norm_admissible"].get<bool>());

    const auto asym = write_temp(
        "cli_asym.json",
        R"({"norm": {"kind": "quadratic", "A": [[1,0.5],[0.2,4]]}, "polygon": [[0,0],[1,0],[1,1],[0,1]]})");
    const auto r3 = invoke({"geometry", "--input", asym});
    CHECK(r3.code == 2);
    CHECK(r3.err.find("symmetric") != std::string::npos);
}

TEST_CASE("verify rect subcommand") {
    const auto r = invoke({"verify", "rect", "--a", "1", "--l", "1", "--beta", "1"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["lambda_exact"].get<double>() == Catch::Approx(3.4141059511).margin(1e-6));
    CHECK(j["mu1"].get<double>() == Catch::Approx(3.6878506944).margin(1e-6));
    CHECK(j["margin"].get<double>() > 0.0);
    CHECK(j["ratio"].get<double>() <= 1.0);

    const auto bad = invoke({"verify", "rect", "--a", "1", "--l", "1",
                             "--beta", "-1"});
    CHECK(bad.code == 2);
}

TEST_CASE("verify fem subcommand") {
    const auto path = write_temp("cli_square_fem.json", kSquareJson);
    const auto r = invoke({"verify", "fem", "--input", path, "--p", "2",
                           "--beta", "1", "--n", "16"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["estimate"]["side"] == "upper_for_lambda");
    CHECK(j["estimate"]["converged"].get<bool>());
    // FEM upper estimate exceeds the exact rectangle value
    CHECK(j["estimate"]["value"].get<double>() >= 3.4141059511 - 1e-9);
    CHECK(j["estimate"]["mesh"]["n"].get<int>() == 16);
}

TEST_CASE("slab subcommand emits the CSV table") {
    const auto r = invoke({"slab", "--a", "1", "--beta", "1", "--lmax", "20"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ell,lambda,s_ell,mu_ell,ratio\n") == 0);
    // 1, 2, 5, 10, 20
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 7);  // header + 5 rows + threshold comment
    CHECK(r.out.find("# ratio nondecreasing from ell=") != std::string::npos);
}

TEST_CASE("torsion disk subcommand adjudicates the variants") {
    const auto r = invoke({"torsion", "disk", "--R", "0.1", "--beta", "0.1",
                           "--variant", "both"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["tau_exact"].get<double>() == Catch::Approx(0.015747).margin(1e-6));
    CHECK(j["as_derived"].get<double>() == Catch::Approx(0.015734).margin(1e-6));
    CHECK(j["as_derived_is_lower_bound"].get<bool>());
    CHECK_FALSE(j["as_stated_is_lower_bound"].get<bool>());

    const auto one = invoke({"torsion", "disk", "--R", "1", "--beta", "1",
                             "--variant", "as_derived"});
    CHECK(one.code == 0);
    const auto j1 = nlohmann::json::parse(one.out);
    CHECK_FALSE(j1.contains("as_stated"));
    CHECK(j1["as_derived_is_lower_bound"].get<bool>());
}

TEST_CASE("torsion fem subcommand") {
    const auto path = write_temp("cli_square_tor.json", kSquareJson);
    const auto r = invoke({"torsion", "fem", "--input", path, "--p", "2",
                           "--beta", "1", "--n", "16"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["estimate"]["side"] == "lower_for_torsion");
    CHECK(j["tau_estimate"].get<double>() >=
          j["torsion_as_derived"].get<double>());
}

TEST_CASE("determinism: identical invocations are byte-identical") {
    const auto path = write_temp("cli_det.json", kSquareJson);
    const std::vector<std::vector<std::string>> cases{
        {"mu1", "--p", "2", "--beta", "1", "--s0", "1"},
        {"bounds", "--input", path, "--p", "2", "--beta", "1"},
        {"slab", "--a", "1", "--beta", "1", "--lmax", "10"},
        {"ptrig", "--p", "1.5", "--fn", "cosh_p", "--t", "0.7"},
    };
    for (const auto& args : cases) {
        const auto r1 = invoke(args);
        const auto r2 = invoke(args);
        CHECK(r1.code == 0);
        CHECK(r1.out == r2.out);
    }
}

TEST_CASE("JSON reports re-parse to equal values") {
    const auto path = write_temp("cli_rt.json", kSquareJson);
    const auto r = invoke({"bounds", "--input", path, "--p", "3", "--beta", "0.5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    // %.17g guarantees exact double round-trips
    const double v = j["robin_theorem1"].get<double>();
    const std::string back = robinpolya::fmt_g17(v);
    CHECK(r.out.find(back) != std::string::npos);
}

TEST_CASE("missing subcommand and help") {
    const auto none = invoke({});
    CHECK(none.code == 2);
    const auto help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("ptrig") != std::string::npos);
}
