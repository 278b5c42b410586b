#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "iosnoma/errors.hpp"
#include "iosnoma/experiments.hpp"
#include "iosnoma/mc.hpp"
#include "iosnoma/theory.hpp"

using namespace iosnoma;

namespace {

Scenario sized(int n) {
  Scenario sc = Scenario::reference();
  sc.surface = surface_for_n(sc.surface, n);
  return sc;
}

bool same(const McEstimate& a, const McEstimate& b) {
  return a.mean == b.mean && a.half_width_95 == b.half_width_95 && a.trials == b.trials &&
         a.sic_violations == b.sic_violations;
}

// ideal-hardware NOMA rates from first principles
RatePair ideal_rates(const Scenario& sc, double h1, double h2) {
  const double rho = sc.budget.rho, k1 = sc.power_split.kappa1, k2 = sc.power_split.kappa2;
  return {std::log2(1.0 + rho * k1 * h1 / sc.budget.sigma2_1),
          std::log2(1.0 + rho * k2 * h2 / (rho * k1 * h2 + sc.budget.sigma2_2))};
}

}  // namespace

TEST_SUITE("mc") {
  TEST_CASE("running stats against a two-pass oracle") {
    std::mt19937_64 gen(1);
    std::lognormal_distribution<double> d(0.0, 1.5);
    std::vector<double> x(10007);
    for (auto& v : x) v = 1e3 + d(gen);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double var = ss / (x.size() - 1);

    RunningStats whole;
    std::vector<RunningStats> parts(13);
    for (std::size_t i = 0; i < x.size(); ++i) {
      whole.add(x[i]);
      parts[(i * 7) % 13].add(x[i]);
    }
    RunningStats merged;
    for (const auto& p : parts) merged.merge(p);
    for (const auto* s : {&whole, &merged}) {
      CHECK(s->count() == x.size());
      CHECK(s->mean() == doctest::Approx(mean).epsilon(1e-14));
      CHECK(s->variance() == doctest::Approx(var).epsilon(1e-10));
    }
    CHECK(whole.half_width_95() == doctest::Approx(kZ95 * std::sqrt(var / x.size())).epsilon(1e-10));
    RunningStats one;
    one.add(3.0);
    CHECK(one.variance() == 0.0);
    CHECK(one.half_width_95() == 0.0);
    RunningStats empty;
    one.merge(empty);
    CHECK(one.count() == 1);
  }

  TEST_CASE("geometric mean estimate") {
    const McEstimate a{4.0, 0.2, 100, 0}, b{1.0, 0.1, 100, 3};
    const auto g = geometric_mean_estimate(a, b);
    CHECK(g.mean == doctest::Approx(2.0));
    // delta method: grad = (sqrt(b/a), sqrt(a/b)) / 2
    CHECK(g.half_width_95 == doctest::Approx(std::hypot(0.25 * 0.2, 1.0 * 0.1)));
    CHECK(g.sic_violations == 3);
    CHECK(geometric_mean_estimate({0.0, 0.0, 10, 0}, b).mean == 0.0);
  }

  TEST_CASE("near-deterministic fading reproduces the deterministic rates") {
    for (int n : {16, 64}) {
      Scenario sc = sized(n);
      sc.user1.m = sc.user2.m = 1e12;
      const SystemModel model(sc);
      const double a1 = model.discrete_sums().a1;
      const double h1 = sc.user1.rho_large * 0.5 * a1 * a1, h2 = sc.user2.rho_large * 0.5 * a1 * a1;
      const auto want = ideal_rates(sc, h1, h2);
      const auto got = ergodic_rates_mc(model, {2000, 3, 256, 1});
      CHECK(got.noma.r1.mean == doctest::Approx(want.r1).epsilon(1e-6));
      CHECK(got.noma.r2.mean == doctest::Approx(want.r2).epsilon(1e-6));
      CHECK(got.noma.r1.half_width_95 < 1e-6);

      sc.user1.m = sc.user2.m = 1e6;
      const auto loose = ergodic_rates_mc(model.with(sc), {2000, 3, 256, 1});
      CHECK(loose.noma.r1.mean == doctest::Approx(want.r1).epsilon(1e-4));
      CHECK(loose.noma.r2.mean == doctest::Approx(want.r2).epsilon(1e-4));
    }
  }

  TEST_CASE("results do not depend on the worker count") {
    const SystemModel model(sized(64));
    McConfig mc{3000, 42, 100, 1};
    const auto ref = ergodic_rates_mc(model, mc);
    const auto mref = channel_moments_mc(model, 2, mc);
    const auto sref = sample_channel_powers(model, mc);
    for (unsigned w : {2u, 3u, 8u}) {
      mc.workers = w;
      const auto r = ergodic_rates_mc(model, mc);
      CHECK(same(r.noma.r1, ref.noma.r1));
      CHECK(same(r.noma.r2, ref.noma.r2));
      CHECK(same(r.oma.r1, ref.oma.r1));
      CHECK(same(r.oma.rgm, ref.oma.rgm));
      const auto m = channel_moments_mc(model, 2, mc);
      CHECK(same(m.e_h2, mref.e_h2));
      CHECK(same(m.e_h4, mref.e_h4));
      const auto s = sample_channel_powers(model, mc);
      CHECK(s.h1_sq == sref.h1_sq);
      CHECK(s.h2_sq == sref.h2_sq);
    }
    // and each trial is addressable on its own
    std::vector<double> scratch;
    CHECK(sample_channel_power(model, 1, 42, 1234, scratch) == sref.h1_sq[1234]);
    mc.seed = 43;
    CHECK(ergodic_rates_mc(model, mc).noma.r1.mean != ref.noma.r1.mean);
  }

  TEST_CASE("single element moments") {
    const SystemModel model(sized(1));
    const double rho1 = model.scenario().user1.rho_large * 0.5 * model.discrete_sums().a2;
    const auto m = channel_moments_mc(model, 1, {200000, 5, 4096, 1});
    CHECK(std::abs(m.e_h2.mean - rho1) < 5.0 / kZ95 * m.e_h2.half_width_95);
    CHECK(std::abs(m.e_h4.mean - 2.0 * rho1 * rho1) < 5.0 / kZ95 * m.e_h4.half_width_95);
  }

  TEST_CASE("moments at N = 64 against the closed forms") {
    for (double m : {1.0, 2.0}) {
      Scenario sc = sized(64);
      sc.user2.m = m;
      const SystemModel model(sc);
      const auto est = channel_moments_mc(model, 2, {200000, 9, 4096, 1});
      const auto th = channel_moments(model.discrete_sums(), m, sc.user2.rho_large, sc.beta(2));
      CAPTURE(m);
      CHECK(std::abs(est.e_h2.mean / th.e_h2 - 1.0) < 0.005);
      CHECK(std::abs(est.e_h4.mean / th.e_h4 - 1.0) < 0.01);
      CHECK(std::abs(est.e_h2.mean - th.e_h2) < 5.0 / kZ95 * est.e_h2.half_width_95);
      CHECK(std::abs(est.e_h4.mean - th.e_h4) < 5.0 / kZ95 * est.e_h4.half_width_95);
      const double inv = inverse_mean(th);
      CHECK(std::abs(est.e_inv_h2.mean / inv - 1.0) < 0.02);
    }
  }

  TEST_CASE("near-deterministic moment ratio") {
    Scenario sc = sized(64);
    sc.user1.m = 1e6;
    const SystemModel model(sc);
    const auto est = channel_moments_mc(model, 1, {20000, 2, 4096, 1});
    const auto th = channel_moments(model.discrete_sums(), 1e6, sc.user1.rho_large, sc.beta(1));
    CHECK(std::abs(est.e_h2.mean / th.e_h2 - 1.0) < 1e-4);
    CHECK(std::abs(est.e_h4.mean / th.e_h4 - 1.0) < 1e-4);
  }

  TEST_CASE("confidence interval shrinks like 1/sqrt(n)") {
    const SystemModel model(sized(64));
    const auto a = ergodic_rates_mc(model, {2000, 8, 256, 1});
    const auto b = ergodic_rates_mc(model, {8000, 8, 256, 1});
    for (auto [x, y] : {std::pair{a.noma.r1, b.noma.r1}, std::pair{a.noma.r2, b.noma.r2}}) {
      const double ratio = y.half_width_95 / x.half_width_95;
      CHECK(ratio == doctest::Approx(0.5).epsilon(0.2));
    }
  }

  TEST_CASE("Jensen direction on the reference scenario") {
    const SystemModel model(sized(256));
    const auto mc = ergodic_rates_mc(model, {4000, 11, 256, 1});
    const auto lb = rate_lower_bounds(model);
    const auto olb = oma_rate_lower_bounds(model);
    CHECK(mc.noma.r1.mean + mc.noma.r1.half_width_95 >= lb.r1);
    CHECK(mc.noma.r2.mean + mc.noma.r2.half_width_95 >= lb.r2);
    CHECK(mc.oma.r1.mean + mc.oma.r1.half_width_95 >= olb.r1);
    CHECK(mc.oma.r2.mean + mc.oma.r2.half_width_95 >= olb.r2);
    CHECK(mc.noma.r1.sic_violations == 0);
  }

  TEST_CASE("Jensen direction with impaired hardware at N = 1024") {
    Scenario sc = with_quality(sized(1024), 0.99);
    const SystemModel model(sc);
    const auto mc = ergodic_rates_mc(model, {1000, 12, 256, 1});
    const auto lb = rate_lower_bounds(model);
    CHECK(mc.noma.r1.mean + mc.noma.r1.half_width_95 >= lb.r1);
    CHECK(mc.noma.r2.mean + mc.noma.r2.half_width_95 >= lb.r2);
  }

  TEST_CASE("errors") {
    const SystemModel model(sized(4));
    CHECK_THROWS_AS(ergodic_rates_mc(model, {0, 1, 256, 1}), InvalidArgument);
    CHECK_THROWS_AS(ergodic_rates_mc(model, {10, 1, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(channel_moments_mc(model, 3, {10, 1, 4, 1}), InvalidArgument);
    bool threw = false;
    try {
      detail::run_batches<int>(100, 10, 4, [](std::uint64_t b, std::uint64_t, std::uint64_t) -> int {
        if (b == 5) throw NumericalError("batch 5");
        return 0;
      });
    } catch (const NumericalError&) {
      threw = true;
    }
    CHECK(threw);
    const auto order = detail::run_batches<std::uint64_t>(
        1000, 7, 3, [](std::uint64_t b, std::uint64_t begin, std::uint64_t) { return b * 1000 + begin; });
    REQUIRE(order.size() == 143);
    for (std::uint64_t b = 0; b < order.size(); ++b) CHECK(order[b] == b * 1000 + b * 7);
  }
}
