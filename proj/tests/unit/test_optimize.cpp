#include <doctest.h>

#include <cmath>
#include <random>

#include "iosnoma/errors.hpp"
#include "iosnoma/experiments.hpp"
#include "iosnoma/optimize.hpp"
#include "iosnoma/theory.hpp"

using namespace iosnoma;

namespace {

Scenario sized(int n) {
  Scenario sc = Scenario::reference();
  sc.surface = surface_for_n(sc.surface, n);
  return sc;
}

}  // namespace

TEST_SUITE("optimize") {
  TEST_CASE("synthetic curves with known maximizers") {
    const RateCurve even = [](double k) { return RatePair{k, 1.0 - k}; };
    auto o = maximize_rgm_bisection(even, 1e-6, 1.0 - 1e-6, 1e-12, 1e-6);
    CHECK(o.interior);
    CHECK(o.kappa1 == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(o.rgm == doctest::Approx(0.5));
    CHECK(o.iterations > 30);

    // log: 2 ln k + ln(1 - k) peaks at k = 2/3
    const RateCurve skew = [](double k) { return RatePair{k * k, 1.0 - k}; };
    o = maximize_rgm_bisection(skew, 1e-6, 1.0 - 1e-6, 1e-12, 1e-6);
    CHECK(o.kappa1 == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

    const auto g = maximize_rgm_grid(skew, 0.0, 1.0, 3001);
    CHECK(g.kappa1 == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    CHECK(g.interior);
    CHECK_THROWS_AS(maximize_rgm_grid(skew, 0.0, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(maximize_rgm_bisection(skew, 0.5, 0.5, 1e-9, 1e-6), InvalidArgument);
  }

  TEST_CASE("monotone objective reports no interior maximum") {
    const RateCurve up = [](double k) { return RatePair{k, 1.0}; };
    auto o = maximize_rgm_bisection(up, 1e-6, 1.0 - 1e-6, 1e-10, 1e-6);
    CHECK_FALSE(o.interior);
    CHECK(o.kappa1 == 1.0 - 1e-6);
    const RateCurve down = [](double k) { return RatePair{1.0, 1.0 - k}; };
    o = maximize_rgm_bisection(down, 1e-6, 1.0 - 1e-6, 1e-10, 1e-6);
    CHECK_FALSE(o.interior);
    CHECK(o.kappa1 == 1e-6);
    CHECK(maximize_rgm_grid(up, 0.0, 1.0, 11).interior == false);
  }

  TEST_CASE("bisection agrees with a dense grid on random scenarios") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const OptimizerConfig cfg;
    for (int i = 0; i < 20; ++i) {
      Scenario sc = sized(16 << (2 * static_cast<int>(3 * u(gen))));
      sc.user1.m = 0.75 + 4 * u(gen);
      sc.user2.m = 0.75 + 4 * u(gen);
      sc.user1.rho_large = std::pow(10.0, 3 + 2 * u(gen));
      sc.user2.rho_large = std::pow(10.0, 1 * u(gen));
      sc.hq = {0.95 + 0.05 * u(gen), 0.95 + 0.05 * u(gen), 0.95 + 0.05 * u(gen)};
      sc = with_snr1_db(sc, 80 * u(gen));
      const SystemModel model(sc);
      const auto best = optimize_kappa_noma(model, cfg);
      const auto grid = maximize_rgm_grid(noma_rate_curve(model, cfg), cfg.kappa_floor, 1.0 - cfg.kappa_floor, 10001);
      CAPTURE(i);
      CHECK(best.interior == grid.interior);
      CHECK(std::abs(best.kappa1 - grid.kappa1) <= 2e-4);
      CHECK(best.rgm >= grid.rgm - 1e-12);
      CHECK(std::abs(best.rgm - grid.rgm) <= 1e-6);
    }
  }

  TEST_CASE("NOMA beats OMA with perfect hardware at every power") {
    const SystemModel model(sized(256));
    for (double db = 0; db <= 120; db += 5) {
      const SystemModel m = model.with(with_snr1_db(model.scenario(), db));
      const auto n = optimize_kappa_noma(m);
      const auto o = oma_baseline(m);
      CAPTURE(db);
      CHECK(n.rgm > o.rgm);
    }
  }

  TEST_CASE("equal OMA split is best for symmetric users") {
    Scenario sc = sized(64);
    sc.user2 = sc.user1;
    sc.budget.sigma2_2 = sc.budget.sigma2_1;
    sc.hq = {0.99, 0.98, 0.98};
    const SystemModel model(sc);
    const auto base = oma_baseline(model);
    CHECK(base.kappa == 0.5);
    CHECK(base.rates.r1 == doctest::Approx(base.rates.r2).epsilon(1e-14));
    for (double k : {0.25, 0.4, 0.6, 0.75}) {
      Scenario s = sc;
      s.oma_split = PowerSplit::from_kappa1(k);
      const auto r = oma_rate_lower_bounds(s, eta(model, 1), eta(model, 2));
      CHECK(geometric_mean_rate(r.r1, r.r2) < base.rgm);
    }
  }

  TEST_CASE("optimum grows with power and stays under the plateau") {
    const SystemModel model(with_quality(sized(256), 0.99));
    const auto plateau = optimize_plateau(model.scenario().hq);
    CHECK(plateau.interior);
    CHECK(std::isfinite(plateau.rgm));
    double prev = 0.0;
    for (double db = 0; db <= 120; db += 10) {
      const auto o = optimize_kappa_noma(model.with(with_snr1_db(model.scenario(), db)));
      CHECK(o.rgm >= prev - 1e-12);
      CHECK(o.rgm <= plateau.rgm + 1e-9);
      prev = o.rgm;
    }
    CHECK(prev == doctest::Approx(plateau.rgm).epsilon(1e-3));
    CHECK(is_unbounded(optimize_plateau({1.0, 1.0, 1.0}).rgm));
  }

  TEST_CASE("deterministic") {
    const SystemModel model(sized(64));
    const auto a = optimize_kappa_noma(model), b = optimize_kappa_noma(model);
    CHECK(a.kappa1 == b.kappa1);
    CHECK(a.rgm == b.rgm);
    OptimizerConfig mc_cfg;
    mc_cfg.objective_source = ObjectiveSource::monte_carlo;
    mc_cfg.mc = {500, 4, 128, 1};
    const auto c = optimize_kappa_noma(model, mc_cfg);
    mc_cfg.mc.workers = 4;
    const auto d = optimize_kappa_noma(model, mc_cfg);
    CHECK(c.kappa1 == d.kappa1);
    CHECK(c.rgm == d.rgm);
  }

  TEST_CASE("Monte Carlo objective") {
    const SystemModel model(sized(256));
    OptimizerConfig cfg;
    cfg.objective_source = ObjectiveSource::monte_carlo;
    cfg.mc = {2000, 6, 256, 1};
    const auto mc = optimize_kappa_noma(model, cfg);
    const auto th = optimize_kappa_noma(model);
    CHECK(mc.interior);
    // the MC curve lies above the bound at every kappa1, so its maximum does too
    CHECK(mc.rgm >= th.rgm);
    const auto curve = noma_rate_curve(model, cfg);
    CHECK(geometric_mean_rate(curve(mc.kappa1).r1, curve(mc.kappa1).r2) == mc.rgm);
    const auto grid = maximize_rgm_grid(curve, cfg.kappa_floor, 1.0 - cfg.kappa_floor, 2001);
    CHECK(std::abs(mc.kappa1 - grid.kappa1) <= 1e-3);
    CHECK(mc.rgm >= grid.rgm - 1e-12);
  }

  TEST_CASE("config and names") {
    OptimizerConfig cfg;
    cfg.kappa_floor = 0.6;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = {};
    cfg.tol_kappa = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    CHECK(parse_objective_source("monte-carlo") == ObjectiveSource::monte_carlo);
    CHECK(to_string(ObjectiveSource::theory_bound) == "theory-bound");
    CHECK_THROWS_AS(parse_objective_source("grid"), InvalidArgument);
  }
}
