#include <doctest.h>

#include <cmath>
#include <string>

#include "iosnoma/config.hpp"
#include "iosnoma/csv.hpp"
#include "iosnoma/errors.hpp"
#include "iosnoma/experiments.hpp"

using namespace iosnoma;

namespace {

// Field and message of the ConfigError raised by `text`, or "" if none.
std::pair<std::string, std::string> rejection(const std::string& text) {
  try {
    parse_config(text).validate();
  } catch (const ConfigError& e) {
    return {e.field(), e.what()};
  }
  return {"", ""};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("shipped default file matches the built-in default") {
    const auto file = load_config(std::string(IOSNOMA_SOURCE_DIR) + "/configs/default.json");
    const RunConfig builtin;
    CHECK(canonical_json(file) == canonical_json(builtin));
    CHECK(scenario_digest(file) == scenario_digest(builtin));
    CHECK(parse_config("{}").scenario.budget.rho == builtin.scenario.budget.rho);
  }

  TEST_CASE("reference scenario") {
    const auto sc = Scenario::reference();
    CHECK(sc.surface.n_x == 32);
    CHECK(sc.surface.n_y == 32);
    CHECK(sc.surface.delta_x == doctest::Approx(0.3 / 4));
    CHECK(sc.feed.d0 == doctest::Approx(10 * 0.3));
    CHECK(linear_to_db(sc.transmit_snr(1)) == doctest::Approx(20.0));
    CHECK(linear_to_db(sc.transmit_snr(2)) == doctest::Approx(-20.0));
    CHECK(sc.beta(1) * sc.beta(1) + sc.beta(2) * sc.beta(2) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("dB keys and comments") {
    const auto cfg = parse_config(R"({"_note": "x", "budget": {"rho_db": 10, "sigma2_1_db": -3, "_why": 1},
                                      "user1": {"rho_large_db": 30}})");
    CHECK(cfg.scenario.budget.rho == doctest::Approx(10.0));
    CHECK(cfg.scenario.budget.sigma2_1 == doctest::Approx(std::pow(10.0, -0.3)));
    CHECK(cfg.scenario.user1.rho_large == doctest::Approx(1000.0));
    CHECK(db_to_linear(20.0) == doctest::Approx(100.0));
    CHECK(linear_to_db(1e-3) == doctest::Approx(-30.0));
    const auto e = parse_config(R"({"hardware": {"eps": 0.9}})").scenario.hq;
    CHECK(e.eps_v == 0.9);
    CHECK(e.eps_u1 == 0.9);
    CHECK(e.eps_u2 == 0.9);
  }

  TEST_CASE("specific rejections") {
    auto [f, m] = rejection(R"({"split_surface": {"beta1_sq": 0.5, "beta2_sq": 0.6}})");
    CHECK(f == "split_surface");
    CHECK(contains(m, "beta1_sq + beta2_sq must equal 1"));
    std::tie(f, m) = rejection(R"({"power_split": {"kappa1": 0.3, "kappa2": 0.6}})");
    CHECK(f == "power_split");
    CHECK(contains(m, "kappa1 + kappa2 must equal 1"));
    std::tie(f, m) = rejection(R"({"hardware": {"eps_u2": 1.5}})");
    CHECK(f == "hardware");
    CHECK(contains(m, "[0, 1]"));
    std::tie(f, m) = rejection(R"({"user2": {"m": 0.4}})");
    CHECK(f == "user2");
    CHECK(contains(m, "m must be >= 0.5"));
    std::tie(f, m) = rejection(R"({"feed": {"alpha": 1.0}})");
    CHECK(f == "feed");
    CHECK(contains(m, "alpha must be > 1"));
    CHECK(m.find("feed: feed") == std::string::npos);
    std::tie(f, m) = rejection(R"({"feed": {"d0": 3, "colour": 1}})");
    CHECK(f == "feed.colour");
    CHECK(contains(m, "unknown key"));
    std::tie(f, m) = rejection(R"({"budget": {"rho": 1, "rho_db": 0}})");
    CHECK(f == "budget.rho");
    std::tie(f, m) = rejection(R"({"rate_vs_n": {"n_elements": [64, 16]}})");
    CHECK(f == "rate_vs_n.n_elements");
    std::tie(f, m) = rejection(R"({"surface": {"n_x": 2.5}})");
    CHECK(f == "surface.n_x");
    std::tie(f, m) = rejection(R"({"user1": {"side": "sideways"}})");
    CHECK(contains(m, "reflect or refract"));
    CHECK(contains(rejection("{nope").second, "malformed JSON"));
    CHECK(contains(rejection("# tool: x\na,b\n1,2\n").second, "# config:"));
    CHECK_THROWS_AS(load_config("/nonexistent/dir/x.json"), IoError);
  }

  TEST_CASE("canonical form round-trips exactly") {
    RunConfig cfg;
    cfg.scenario.split_surface = {std::sqrt(0.3), std::sqrt(0.7)};
    cfg.scenario.hq = {0.97, 0.99, 0.9999};
    cfg.scenario.budget.rho = db_to_linear(-37.3);
    cfg.mc.seed = 123456789012345ULL;
    cfg.analysis.convention = Convention::paper_integral;
    cfg.optimizer.objective_source = ObjectiveSource::monte_carlo;
    const auto back = parse_config(canonical_json(cfg));
    CHECK(canonical_json(back) == canonical_json(cfg));
    CHECK(back.scenario.split_surface.beta1 == cfg.scenario.split_surface.beta1);
    CHECK(back.mc.seed == cfg.mc.seed);
    CHECK(parse_config(pretty_json(cfg)).scenario.budget.rho == cfg.scenario.budget.rho);
    CHECK(canonical_json(cfg).find('\n') == std::string::npos);
    CHECK(scenario_digest(back) == scenario_digest(cfg));
    RunConfig other = cfg;
    other.scenario.hq.eps_v = 0.96;
    CHECK(scenario_digest(other) != scenario_digest(cfg));
  }

  TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(format_number(NAN) == "nan");
  }

  TEST_CASE("CSV rendering and re-use as a config") {
    RunConfig cfg;
    cfg.mc.seed = 77;
    cfg.scenario.hq.eps_v = 0.999;
    CsvTable t({"a", "b", "c"});
    t.add_row({1.5, std::int64_t{3}, std::string("noma")});
    t.add_row({INFINITY, std::int64_t{-1}, std::string("oma")});
    CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);
    const std::string text = t.render(csv_meta(cfg, "rate-vs-n"));
    CHECK(text.rfind("# tool: iosnoma " + tool_version() + "\n", 0) == 0);
    CHECK(contains(text, "# command: rate-vs-n\n"));
    CHECK(contains(text, "# seed: 77\n"));
    CHECK(contains(text, "\na,b,c\n1.5,3,noma\ninf,-1,oma\n"));
    const auto back = parse_config(text);
    CHECK(canonical_json(back) == canonical_json(cfg));
  }

  TEST_CASE("element-count factorization") {
    const SurfaceGeometry base;
    auto s = surface_for_n(base, 4096);
    CHECK(s.n_x == 64);
    CHECK(s.n_y == 64);
    s = surface_for_n(base, 12);
    CHECK(s.n_x == 3);
    CHECK(s.n_y == 4);
    s = surface_for_n(base, 7);
    CHECK(s.n_x == 1);
    CHECK(s.n_y == 7);
    s = surface_for_n(base, 1);
    CHECK(s.size() == 1);
    CHECK_THROWS_AS(surface_for_n(base, 0), InvalidArgument);
  }
}
