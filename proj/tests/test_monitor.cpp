#include <catch_amalgamated.hpp>

#include <filesystem>

#include "lpns/config.hpp"
#include "lpns/monitor.hpp"
#include "lpns/params.hpp"
#include "lpns/snapshot.hpp"

using namespace lpns;
using Catch::Approx;
namespace fs = std::filesystem;

TEST_CASE("parameter validation accepts the admissible ranges") {
    const auto a = validate_p_alpha(4.0, 0.0);
    CHECK(a.s_p == Approx(0.0));
    CHECK(a.s_val == Approx(0.0));
    const auto b = validate_p_alpha(2.0, 0.5);
    CHECK(b.s_p == Approx(0.5));
    CHECK(b.s_val == Approx(0.0));
    const auto c = validate_qp(3.0, 3.0);
    CHECK(c.exponent == Approx(-1.0 / 3.0));
    CHECK(validate_log_weight(10.0) == 10.0);
}

TEST_CASE("parameter validation names the violated constraint") {
    CHECK_THROWS_WITH(validate_p_alpha(4.0, 0.1),
                      Catch::Matchers::ContainsSubstring("[0, 2/p - 1/2]"));
    CHECK_THROWS_WITH(validate_p_alpha(5.0, 0.0), Catch::Matchers::ContainsSubstring("[2, 4]"));
    CHECK_THROWS_WITH(validate_qp(2.0, 3.0), Catch::Matchers::ContainsSubstring("[3, inf)"));
    CHECK_THROWS_WITH(validate_qp(3.0, 1.01), Catch::Matchers::ContainsSubstring("(1, 2)"));
    CHECK_THROWS(validate_log_weight(0.0));
}

TEST_CASE("config parser: values, lists, comments, errors") {
    const std::string text = R"(
# solver section
grid_n = 16
box_length = 1.0
viscosity = 1.0
dt = 0.01          # fixed step
t_end = 0.1
init = taylor_green(1.0)
criteria.logE_list = 1, 10
criteria.p_alpha_list = (2, 0.25), (4, 0)
criteria.qp_list = (3, 3)
)";
    const Config cfg = Config::parse_text(text);
    CHECK(cfg.get_long("grid_n") == 16);
    CHECK(cfg.get_double("dt") == Approx(0.01));
    CHECK(cfg.get_double_list("criteria.logE_list") == std::vector<double>{1.0, 10.0});
    const auto pairs = cfg.get_pair_list("criteria.p_alpha_list");
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].first == 2.0);
    CHECK(pairs[0].second == 0.25);
    CHECK(pairs[1].first == 4.0);
    CHECK(pairs[1].second == 0.0);

    CHECK_THROWS_WITH(Config::parse_text("bogus_key = 1"),
                      Catch::Matchers::ContainsSubstring("bogus_key"));
    CHECK_THROWS_WITH(Config::parse_text("grid_n = 16\ngrid_n = 8"),
                      Catch::Matchers::ContainsSubstring("duplicate"));
    CHECK_THROWS(Config::parse_text("grid_n"));
    CHECK_THROWS_WITH(Config::parse_text("dt = abc"), Catch::Matchers::ContainsSubstring("dt"));

    const Config cfg2 = Config::parse_text("grid_n = 16\ndt = 0.01");
    const Config cfg3 = Config::parse_text("dt = 0.01\ngrid_n = 16");
    CHECK(cfg2.hash() == cfg3.hash()); // canonical ordering
    CHECK(cfg.hash() != cfg2.hash());
}

TEST_CASE("initial-data selectors") {
    const FourierGrid g = make_grid(16, 1.0);
    const VectorField tg = make_initial_data("taylor_green(2.0)", g);
    CHECK(energy(tg) == Approx(4.0 * std::pow(2 * FourierGrid::pi(), 3) / 4).epsilon(1e-12));
    const VectorField rd = make_initial_data("random_divfree(5, 1:4, 1.0)", g);
    CHECK(energy(rd) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_WITH(make_initial_data("vortex(1)", g),
                      Catch::Matchers::ContainsSubstring("init"));
    CHECK_THROWS(make_initial_data("taylor_green", g));
}

TEST_CASE("snapshot round trip is exact") {
    const FourierGrid g = make_grid(16, 1.0);
    const VectorField u = random_divfree(g, 3, Band{1, 5}, 1.0);
    const fs::path tmp = fs::temp_directory_path() / "lpns_test_snap.lpns";
    snapshot::write_vector(tmp, u);
    const VectorField back = snapshot::read_vector(tmp, g);
    for (int c = 1; c <= 3; ++c) CHECK(l2_norm(back.comp(c) - u.comp(c)) == 0.0);
    const auto h = snapshot::probe(tmp);
    CHECK(h.n == g.n());
    CHECK(h.ncomp == 3);
    fs::remove(tmp);

    const fs::path bad = fs::temp_directory_path() / "lpns_test_bad.lpns";
    std::ofstream(bad) << "not a snapshot";
    CHECK_THROWS_WITH(snapshot::read_vector(bad, g),
                      Catch::Matchers::ContainsSubstring("LPNS1"));
    fs::remove(bad);
}

namespace {
CriteriaConfig small_criteria() {
    CriteriaConfig cc;
    cc.logE_list = {1.0, 10.0};
    cc.p_alpha_list = {{2.0, 0.25}};
    cc.m_beta_list = {{4.0, 0.0}};
    cc.qp_list = {{3.0, 3.0}};
    return cc;
}
} // namespace

TEST_CASE("criteria_series: zero data gives identically zero series") {
    const FourierGrid g = make_grid(16, 1.0);
    const DyadicFilterBank bank(g);
    const std::vector<double> times = {0.0, 0.1, 0.2};
    const std::vector<VectorField> snaps(3, VectorField(g));
    const CriterionReport rep = criteria_series(times, snaps, bank, small_criteria());
    for (const auto& s : rep.series) {
        for (double v : s.values) CHECK(v == 0.0);
        for (double v : s.running_integral) CHECK(v == 0.0);
    }
    CHECK(rep.gronwall_dominates);
}

TEST_CASE("criteria_series: component structure of a pure shear") {
    const FourierGrid g = make_grid(16, 1.0);
    const DyadicFilterBank bank(g);
    const ScalarField u1 = sample_field(g, [](double, double y, double) { return std::sin(y); });
    const VectorField shear(u1, ScalarField(g), ScalarField(g));
    const std::vector<double> times = {0.0, 0.5};
    const std::vector<VectorField> snaps = {shear, shear};
    const CriterionReport rep = criteria_series(times, snaps, bank, small_criteria());
    for (const auto& s : rep.series) {
        if (s.field == "u3" || s.field == "d3u3") {
            for (double v : s.values) CHECK(v == 0.0);
        } else {
            for (double v : s.values) CHECK(v > 0.0); // omega3 = -cos(y) is alive
        }
    }
    // running integrals nondecreasing
    for (const auto& s : rep.series)
        for (std::size_t i = 1; i < s.running_integral.size(); ++i)
            CHECK(s.running_integral[i] >= s.running_integral[i - 1]);
}

TEST_CASE("criteria_series validates its inputs") {
    const FourierGrid g = make_grid(16, 1.0);
    const DyadicFilterBank bank(g);
    CriteriaConfig cc = small_criteria();
    cc.p_alpha_list = {{4.0, 0.1}};
    const std::vector<double> times = {0.0};
    const std::vector<VectorField> snaps = {VectorField(g)};
    CHECK_THROWS_WITH(criteria_series(times, snaps, bank, cc),
                      Catch::Matchers::ContainsSubstring("alpha"));
    CHECK_THROWS_WITH(criteria_series({}, {}, bank, small_criteria()),
                      Catch::Matchers::ContainsSubstring("missing snapshots"));
    CHECK_THROWS(criteria_series({0.0, 0.0}, {VectorField(g), VectorField(g)}, bank,
                                 small_criteria()));
}

TEST_CASE("criteria report JSON is deterministic and carries the notices") {
    const FourierGrid g = make_grid(16, 1.0);
    const DyadicFilterBank bank(g);
    const VectorField u = random_divfree(g, 11, Band{1, 5}, 1.0);
    const std::vector<double> times = {0.0, 0.1};
    const std::vector<VectorField> snaps = {u, u};
    const CriteriaConfig cc = small_criteria();
    const CriterionReport r1 = criteria_series(times, snaps, bank, cc);
    const CriterionReport r2 = criteria_series(times, snaps, bank, cc);
    const json j1 = criteria_report_json(r1, g, "deadbeef", cc);
    const json j2 = criteria_report_json(r2, g, "deadbeef", cc);
    CHECK(j1.dump() == j2.dump());
    CHECK(j1["schema"] == "lpns-report/1");
    CHECK(j1["domain_notice"].get<std::string>().find("periodic box") != std::string::npos);
    CHECK(j1["monitor_notice"].get<std::string>().size() > 0);
    CHECK(j1["gronwall"]["dominates"].get<bool>());

    const std::string csv = criteria_series_csv(r1);
    CHECK(csv.rfind("t,", 0) == 0);
    CHECK(csv.find("gronwall_bound") != std::string::npos);
}

TEST_CASE("solver setup from config") {
    const Config cfg = Config::parse_text(
        "grid_n = 16\nviscosity = 0.5\ndt = 0.005\nt_end = 0.02\ninit = taylor_green(1)\n"
        "output_stride = 2\ncfl_safety = 0.9");
    const SolverSetup s = solver_setup_from_config(cfg);
    CHECK(s.n[0] == 16);
    CHECK(s.params.nu == 0.5);
    CHECK(s.params.dt == 0.005);
    CHECK(s.params.output_stride == 2);
    CHECK(s.params.cfl_safety == 0.9);
    CHECK(s.init == "taylor_green(1)");
}
