#include "iosnoma/mc.hpp"

#include <cmath>

#include "iosnoma/errors.hpp"
#include "iosnoma/fading.hpp"
#include "iosnoma/rng.hpp"

namespace iosnoma {

void McConfig::validate() const {
  if (trials < 1) throw InvalidArgument("mc: trials must be >= 1");
  if (batch < 1) throw InvalidArgument("mc: batch must be >= 1");
}

McEstimate geometric_mean_estimate(const McEstimate& r1, const McEstimate& r2) {
  McEstimate g;
  g.trials = std::min(r1.trials, r2.trials);
  g.sic_violations = std::max(r1.sic_violations, r2.sic_violations);
  g.mean = geometric_mean_rate(std::max(r1.mean, 0.0), std::max(r2.mean, 0.0));
  if (g.mean > 0.0) {
    const double v = r2.mean / (4.0 * r1.mean) * r1.half_width_95 * r1.half_width_95 +
                     r1.mean / (4.0 * r2.mean) * r2.half_width_95 * r2.half_width_95;
    g.half_width_95 = std::sqrt(v);
  }
  return g;
}

double sample_channel_power(const SystemModel& model, int user, std::uint64_t seed, std::uint64_t trial,
                            std::vector<double>& scratch) {
  const auto sg = model.sqrt_gamma();
  scratch.resize(sg.size());
  const UserLinkParams& p = model.scenario().user(user);
  CounterRng rng(substream_key(seed, trial, static_cast<std::uint64_t>(user)));
  sample_amplitudes(p.m, scratch, rng);
  const double h = equivalent_gain(sg, model.scenario().beta(user), p.rho_large, scratch);
  return h * h;
}

namespace {

struct RatePartial {
  RunningStats n1, n2, o1, o2;
  std::uint64_t sic_violations = 0;
};

struct MomentPartial {
  RunningStats h2, h4, inv;
};

}  // namespace

ErgodicRatesMc ergodic_rates_mc(const SystemModel& model, const McConfig& mc) {
  mc.validate();
  const Scenario& sc = model.scenario();
  auto parts = detail::run_batches<RatePartial>(
      mc.trials, mc.batch, mc.workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        RatePartial p;
        std::vector<double> scratch;
        for (std::uint64_t t = begin; t < end; ++t) {
          const double g1 = sample_channel_power(model, 1, mc.seed, t, scratch);
          const double g2 = sample_channel_power(model, 2, mc.seed, t, scratch);
          const NomaRates nr = noma_rates(g1, g2, sc.power_split, sc.hq, sc.budget);
          const RatePair orr = oma_rates(g1, g2, sc.oma_split, sc.hq, sc.budget);
          p.n1.add(nr.r1);
          p.n2.add(nr.r2);
          p.o1.add(orr.r1);
          p.o2.add(orr.r2);
          if (!nr.sic_order_holds) ++p.sic_violations;
        }
        return p;
      });
  RatePartial total;
  for (const auto& p : parts) {
    total.n1.merge(p.n1);
    total.n2.merge(p.n2);
    total.o1.merge(p.o1);
    total.o2.merge(p.o2);
    total.sic_violations += p.sic_violations;
  }
  ErgodicRatesMc out;
  out.noma.r1 = total.n1.estimate(total.sic_violations);
  out.noma.r2 = total.n2.estimate(total.sic_violations);
  out.noma.rgm = geometric_mean_estimate(out.noma.r1, out.noma.r2);
  out.oma.r1 = total.o1.estimate();
  out.oma.r2 = total.o2.estimate();
  out.oma.rgm = geometric_mean_estimate(out.oma.r1, out.oma.r2);
  return out;
}

ErgodicRatesMc ergodic_rates_mc(const Scenario& scenario, const McConfig& mc) {
  return ergodic_rates_mc(SystemModel(scenario), mc);
}

ChannelMomentsMc channel_moments_mc(const SystemModel& model, int user, const McConfig& mc) {
  mc.validate();
  if (user != 1 && user != 2) throw InvalidArgument("channel_moments_mc: user must be 1 or 2");
  auto parts = detail::run_batches<MomentPartial>(
      mc.trials, mc.batch, mc.workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        MomentPartial p;
        std::vector<double> scratch;
        for (std::uint64_t t = begin; t < end; ++t) {
          const double x = sample_channel_power(model, user, mc.seed, t, scratch);
          p.h2.add(x);
          p.h4.add(x * x);
          p.inv.add(1.0 / x);
        }
        return p;
      });
  MomentPartial total;
  for (const auto& p : parts) {
    total.h2.merge(p.h2);
    total.h4.merge(p.h4);
    total.inv.merge(p.inv);
  }
  return {total.h2.estimate(), total.h4.estimate(), total.inv.estimate()};
}

ChannelPowerSamples sample_channel_powers(const SystemModel& model, const McConfig& mc) {
  mc.validate();
  ChannelPowerSamples s;
  s.h1_sq.resize(mc.trials);
  s.h2_sq.resize(mc.trials);
  // Each batch writes a disjoint slice.
  detail::run_batches<char>(mc.trials, mc.batch, mc.workers,
                            [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
                              std::vector<double> scratch;
                              for (std::uint64_t t = begin; t < end; ++t) {
                                s.h1_sq[t] = sample_channel_power(model, 1, mc.seed, t, scratch);
                                s.h2_sq[t] = sample_channel_power(model, 2, mc.seed, t, scratch);
                              }
                              return char{0};
                            });
  return s;
}

}  // namespace iosnoma
