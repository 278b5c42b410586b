#include "iosnoma/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "iosnoma/errors.hpp"
#include "iosnoma/summation.hpp"
#include "iosnoma/theory.hpp"

namespace iosnoma {

std::string_view to_string(ObjectiveSource s) {
  return s == ObjectiveSource::theory_bound ? "theory-bound" : "monte-carlo";
}

ObjectiveSource parse_objective_source(std::string_view s) {
  if (s == "theory-bound") return ObjectiveSource::theory_bound;
  if (s == "monte-carlo") return ObjectiveSource::monte_carlo;
  throw InvalidArgument("objective source must be theory-bound or monte-carlo");
}

void OptimizerConfig::validate() const {
  if (!(kappa_floor > 0.0 && kappa_floor < 0.5)) throw InvalidArgument("optimizer: kappa_floor must be in (0, 0.5)");
  if (!(tol_kappa > 0.0)) throw InvalidArgument("optimizer: tol_kappa must be > 0");
  if (!(diff_step > 0.0)) throw InvalidArgument("optimizer: diff_step must be > 0");
  mc.validate();
}

namespace {

double rgm_of(const RatePair& r) { return geometric_mean_rate(r.r1, r.r2); }

double log_rgm(const RateCurve& curve, double k) {
  const RatePair r = curve(k);
  return 0.5 * (std::log(r.r1) + std::log(r.r2));
}

// Central difference, shrunk near the ends of (0, 1).
double dlog_rgm(const RateCurve& curve, double k, double step) {
  const double h = std::min(step, 0.5 * std::min(k, 1.0 - k));
  const double d = (log_rgm(curve, k + h) - log_rgm(curve, k - h)) / (2.0 * h);
  return std::isnan(d) ? 0.0 : d;
}

KappaOptimum at(const RateCurve& curve, double k) {
  KappaOptimum o;
  o.kappa1 = k;
  o.rates = curve(k);
  o.rgm = rgm_of(o.rates);
  return o;
}

}  // namespace

KappaOptimum maximize_rgm_bisection(const RateCurve& curve, double lo, double hi, double tol, double step) {
  if (!(lo < hi)) throw InvalidArgument("bisection: empty interval");
  const double dlo = dlog_rgm(curve, lo, step);
  const double dhi = dlog_rgm(curve, hi, step);
  if (!(dlo > 0.0 && dhi < 0.0)) {
    KappaOptimum a = at(curve, lo), b = at(curve, hi);
    KappaOptimum& best = b.rgm > a.rgm ? b : a;
    best.interior = false;
    return best;
  }
  int it = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    if (dlog_rgm(curve, mid, step) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++it;
  }
  KappaOptimum o = at(curve, 0.5 * (lo + hi));
  o.iterations = it;
  return o;
}

KappaOptimum maximize_rgm_grid(const RateCurve& curve, double lo, double hi, int points) {
  if (points < 2) throw InvalidArgument("grid search: need at least 2 points");
  KappaOptimum best;
  best.rgm = -1.0;
  for (int i = 0; i < points; ++i) {
    const double k = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    KappaOptimum o = at(curve, k);
    if (o.rgm > best.rgm) best = o;
  }
  best.interior = best.kappa1 > lo && best.kappa1 < hi;
  return best;
}

RateCurve noma_rate_curve(const SystemModel& model, const OptimizerConfig& cfg) {
  const Scenario sc = model.scenario();
  if (cfg.objective_source == ObjectiveSource::theory_bound) {
    const double eta1 = eta(model, 1), eta2 = eta(model, 2);
    return [sc, eta1, eta2](double k1) {
      Scenario s = sc;
      s.power_split = PowerSplit::from_kappa1(k1);
      return rate_lower_bounds(s, eta1, eta2);
    };
  }
  auto samples = std::make_shared<const ChannelPowerSamples>(sample_channel_powers(model, cfg.mc));
  return [sc, samples](double k1) {
    const PowerSplit split = PowerSplit::from_kappa1(k1);
    CompensatedSum s1, s2;
    for (std::size_t t = 0; t < samples->h1_sq.size(); ++t) {
      const NomaRates r = noma_rates(samples->h1_sq[t], samples->h2_sq[t], split, sc.hq, sc.budget);
      s1 += r.r1;
      s2 += r.r2;
    }
    const double n = static_cast<double>(samples->h1_sq.size());
    return RatePair{s1.value() / n, s2.value() / n};
  };
}

KappaOptimum optimize_kappa_noma(const SystemModel& model, const OptimizerConfig& cfg) {
  cfg.validate();
  return maximize_rgm_bisection(noma_rate_curve(model, cfg), cfg.kappa_floor, 1.0 - cfg.kappa_floor, cfg.tol_kappa,
                                cfg.diff_step);
}

KappaOptimum optimize_kappa_noma(const Scenario& scenario, const OptimizerConfig& cfg) {
  return optimize_kappa_noma(SystemModel(scenario), cfg);
}

OmaBaseline oma_baseline(const SystemModel& model) {
  Scenario s = model.scenario();
  s.oma_split = PowerSplit{0.5, 0.5};
  OmaBaseline b;
  b.rates = oma_rate_lower_bounds(s, eta(model, 1), eta(model, 2));
  b.rgm = rgm_of(b.rates);
  return b;
}

KappaOptimum optimize_plateau(const HardwareQuality& hq, const OptimizerConfig& cfg) {
  cfg.validate();
  const RateCurve curve = [hq](double k1) { return asymptotic_rho(PowerSplit::from_kappa1(k1), hq); };
  if (is_unbounded(curve(0.5).r1)) {
    KappaOptimum o = at(curve, 0.5);
    o.rgm = kUnbounded;
    o.interior = false;
    return o;
  }
  return maximize_rgm_bisection(curve, cfg.kappa_floor, 1.0 - cfg.kappa_floor, cfg.tol_kappa, cfg.diff_step);
}

}  // namespace iosnoma
