#include "iosnoma/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "iosnoma/errors.hpp"
#include "iosnoma/theory.hpp"

namespace iosnoma {

using nlohmann::json;

SurfaceGeometry surface_for_n(const SurfaceGeometry& base, int n) {
  if (n < 1) throw InvalidArgument("surface_for_n: N must be >= 1");
  int nx = 1;
  for (int d = 1; static_cast<long long>(d) * d <= n; ++d) {
    if (n % d == 0) nx = d;
  }
  SurfaceGeometry s = base;
  s.n_x = nx;
  s.n_y = n / nx;
  return s;
}

Scenario with_snr1_db(const Scenario& base, double snr1_db) {
  Scenario s = base;
  s.budget.rho = db_to_linear(snr1_db) * s.budget.sigma2_1 / s.user1.rho_large;
  return s;
}

Scenario with_quality(const Scenario& base, double eps) {
  Scenario s = base;
  s.hq = HardwareQuality{eps, eps, eps};
  return s;
}

CsvMeta csv_meta(const RunConfig& cfg, const std::string& command) {
  CsvMeta m;
  m.command = command;
  m.seed = cfg.mc.seed;
  m.trials = cfg.mc.trials;
  m.convention = std::string(to_string(cfg.analysis.convention));
  m.a1_variant = std::string(to_string(cfg.analysis.a1_variant));
  m.objective = std::string(to_string(cfg.optimizer.objective_source));
  m.digest = scenario_digest(cfg);
  m.config_json = canonical_json(cfg);
  return m;
}

std::vector<RateVsNRow> run_rate_vs_n(const RunConfig& cfg, unsigned workers) {
  cfg.validate();
  McConfig mc = cfg.mc;
  mc.workers = workers;
  std::vector<RateVsNRow> rows;
  for (int n : cfg.n_elements) {
    Scenario sc = cfg.scenario;
    sc.surface = surface_for_n(sc.surface, n);
    const SystemModel model(sc, cfg.analysis);
    const ErgodicRatesMc est = ergodic_rates_mc(model, mc);
    const RatePair lb = rate_lower_bounds(model);
    const RatePair olb = oma_rate_lower_bounds(model);
    const RatePair plat = asymptotic_n(sc, cfg.analysis.convention, cfg.analysis.a1_variant);
    const RatePair oplat = oma_asymptotic_n(sc, cfg.analysis.convention, cfg.analysis.a1_variant);
    const auto push = [&](const char* scheme, int user, const McEstimate& e, double bound, double plateau) {
      rows.push_back({n, sc.surface.n_x, sc.surface.n_y, scheme, user, e, bound, plateau});
    };
    push("noma", 1, est.noma.r1, lb.r1, plat.r1);
    push("noma", 2, est.noma.r2, lb.r2, plat.r2);
    push("oma", 1, est.oma.r1, olb.r1, oplat.r1);
    push("oma", 2, est.oma.r2, olb.r2, oplat.r2);
  }
  return rows;
}

std::vector<RgmVsPowerRow> run_rgm_vs_power(const RunConfig& cfg, unsigned workers) {
  cfg.validate();
  const SystemModel base(cfg.scenario, cfg.analysis);
  OptimizerConfig oc = cfg.optimizer;
  oc.mc.seed = cfg.mc.seed;
  oc.mc.batch = cfg.mc.batch;
  oc.mc.workers = 1;  // parallelism is across sweep points

  const std::size_t n_snr = cfg.snr1_db.size();
  const std::size_t n_points = cfg.eps_panels.size() * n_snr;

  struct PointRows {
    RgmVsPowerRow noma, oma;
  };
  // The plateau depends on the panel only.
  std::vector<KappaOptimum> noma_plateau;
  std::vector<double> oma_plateau;
  for (double eps : cfg.eps_panels) {
    const HardwareQuality hq{eps, eps, eps};
    noma_plateau.push_back(optimize_plateau(hq, oc));
    const RatePair o = oma_asymptotic_rho(PowerSplit{0.5, 0.5}, hq);
    oma_plateau.push_back(geometric_mean_rate(o.r1, o.r2));
  }

  auto points = detail::run_batches<PointRows>(
      n_points, 1, workers, [&](std::uint64_t idx, std::uint64_t, std::uint64_t) {
        const std::size_t panel = idx / n_snr;
        const double eps = cfg.eps_panels[panel];
        const double snr = cfg.snr1_db[idx % n_snr];
        const SystemModel model = base.with(with_snr1_db(with_quality(cfg.scenario, eps), snr));
        const KappaOptimum opt = optimize_kappa_noma(model, oc);
        const OmaBaseline oma = oma_baseline(model);
        PointRows p;
        p.noma = {snr, model.scenario().budget.rho, eps, "noma", opt.kappa1, opt.rgm,
                  opt.rates.r1, opt.rates.r2, noma_plateau[panel].rgm, opt.interior};
        p.oma = {snr, model.scenario().budget.rho, eps, "oma", oma.kappa, oma.rgm,
                 oma.rates.r1, oma.rates.r2, oma_plateau[panel], true};
        return p;
      });
  std::vector<RgmVsPowerRow> rows;
  rows.reserve(2 * n_points);
  for (const auto& p : points) {
    rows.push_back(p.noma);
    rows.push_back(p.oma);
  }
  return rows;
}

CsvTable rate_vs_n_table(const std::vector<RateVsNRow>& rows) {
  CsvTable t({"n_elements", "n_x", "n_y", "scheme", "user", "mc_mean", "mc_ci95", "lower_bound", "plateau_n_inf",
              "sic_violations", "trials"});
  for (const auto& r : rows) {
    t.add_row({std::int64_t{r.n}, std::int64_t{r.n_x}, std::int64_t{r.n_y}, r.scheme, std::int64_t{r.user}, r.mc.mean,
               r.mc.half_width_95, r.lower_bound, r.plateau, static_cast<std::int64_t>(r.mc.sic_violations),
               static_cast<std::int64_t>(r.mc.trials)});
  }
  return t;
}

CsvTable rgm_vs_power_table(const std::vector<RgmVsPowerRow>& rows) {
  CsvTable t({"snr1_db", "rho", "eps", "scheme", "kappa1", "rgm", "r1", "r2", "plateau_rgm", "interior"});
  for (const auto& r : rows) {
    t.add_row({r.snr1_db, r.rho, r.eps, r.scheme, r.kappa1, r.rgm, r.r1, r.r2, r.plateau_rgm,
               std::int64_t{r.interior ? 1 : 0}});
  }
  return t;
}

namespace {

// JSON has no infinity; unbounded rates are written as the string "inf".
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json sums_json(const ApertureSums& s) {
  return {{"form", std::string(to_string(s.form))}, {"a1", num(s.a1)}, {"a2", num(s.a2)}, {"a3", num(s.a3)},
          {"a4", num(s.a4)}};
}

json pair_json(const RatePair& r) { return {{"r1", num(r.r1)}, {"r2", num(r.r2)}}; }

json estimate_json(const McEstimate& e) {
  return {{"mean", num(e.mean)}, {"ci95", num(e.half_width_95)}, {"trials", e.trials},
          {"sic_violations", e.sic_violations}};
}

json user_theory_json(const SystemModel& model, int user) {
  const Scenario& sc = model.scenario();
  const UserLinkParams& u = sc.user(user);
  json j;
  const MomentSet mom = channel_moments(model.sums(), u.m, u.rho_large, sc.beta(user));
  j["e_h2"] = num(mom.e_h2);
  j["e_h4"] = num(mom.e_h4);
  try {
    const GammaFit fit = gamma_fit(mom);
    j["gamma_fit"] = {{"nu", num(fit.nu)}, {"varsigma", num(fit.varsigma)}, {"nu_inv", num(fit.nu_inv)},
                      {"varsigma_inv", num(fit.varsigma_inv)}};
  } catch (const DegenerateDistribution&) {
    j["gamma_fit"] = "degenerate";
  }
  j["e_inv_h2"] = num(inverse_mean(mom));
  const EtaCoefficients c = eta_coefficient(model.sums(), u.m);
  j["eta"] = {{"iota1", num(c.iota1)}, {"iota2", num(c.iota2)}, {"iota3", num(c.iota3)}, {"iota4", num(c.iota4)},
              {"eta", num(c.eta)}};
  j["eta_n_inf"] = num(eta_infinite(sc, user, model.options().convention, model.options().a1_variant));
  j["noise_coeff_continuous"] =
      num(continuous_noise_coefficient(sc, user, model.options().convention, model.options().a1_variant));
  return j;
}

}  // namespace

std::string run_single(const RunConfig& cfg, bool with_mc, unsigned workers) {
  cfg.validate();
  const SystemModel model(cfg.scenario, cfg.analysis);
  const Scenario& sc = model.scenario();
  json j;
  j["tool"] = "iosnoma " + tool_version();
  j["seed"] = cfg.mc.seed;
  j["convention"] = std::string(to_string(cfg.analysis.convention));
  j["a1_variant"] = std::string(to_string(cfg.analysis.a1_variant));
  j["objective"] = std::string(to_string(cfg.optimizer.objective_source));
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(scenario_digest(cfg)));
  j["scenario_digest"] = std::string("fnv1a64:") + digest;
  j["config"] = json::parse(canonical_json(cfg));
  j["transmit_snr_db"] = {{"user1", num(linear_to_db(sc.transmit_snr(1)))},
                          {"user2", num(linear_to_db(sc.transmit_snr(2)))}};
  j["aperture_sums"] = {
      {"selected", sums_json(model.sums())},
      {"discrete", sums_json(model.discrete_sums())},
      {"plane", sums_json(aperture_sums_infinite(sc.surface, sc.feed, cfg.analysis.a1_variant,
                                                 cfg.analysis.convention))}};
  j["user1"] = user_theory_json(model, 1);
  j["user2"] = user_theory_json(model, 2);

  const BoundReport br = bound_report(model);
  j["noma"] = {{"lower_bound", pair_json({br.r1_lb, br.r2_lb})},
               {"limit_rho_inf", pair_json({br.r1_inf_rho, br.r2_inf_rho})},
               {"limit_n_inf", pair_json({br.r1_inf_n, br.r2_inf_n})},
               {"limit_continuous", pair_json({br.r1_cont, br.r2_cont})},
               {"snr_slope", {{"user1", br.s1}, {"user2", br.s2}}},
               {"rgm_lower_bound", num(geometric_mean_rate(br.r1_lb, br.r2_lb))}};
  j["oma"] = {{"lower_bound", pair_json(oma_rate_lower_bounds(model))},
              {"limit_rho_inf", pair_json(oma_asymptotic_rho(sc.oma_split, sc.hq))},
              {"limit_n_inf", pair_json(oma_asymptotic_n(sc, cfg.analysis.convention, cfg.analysis.a1_variant))}};

  OptimizerConfig oc = cfg.optimizer;
  oc.mc.seed = cfg.mc.seed;
  oc.mc.batch = cfg.mc.batch;
  oc.mc.workers = workers;
  const KappaOptimum opt = optimize_kappa_noma(model, oc);
  const OmaBaseline oma = oma_baseline(model);
  j["optimum"] = {{"kappa1", num(opt.kappa1)}, {"rgm", num(opt.rgm)}, {"rates", pair_json(opt.rates)},
                  {"interior", opt.interior}, {"oma_rgm_equal_split", num(oma.rgm)},
                  {"plateau_rgm", num(optimize_plateau(sc.hq, oc).rgm)}};

  if (with_mc) {
    McConfig mc = cfg.mc;
    mc.workers = workers;
    const ErgodicRatesMc est = ergodic_rates_mc(model, mc);
    j["mc"] = {{"noma",
                {{"r1", estimate_json(est.noma.r1)},
                 {"r2", estimate_json(est.noma.r2)},
                 {"rgm", estimate_json(est.noma.rgm)}}},
               {"oma",
                {{"r1", estimate_json(est.oma.r1)},
                 {"r2", estimate_json(est.oma.r2)},
                 {"rgm", estimate_json(est.oma.rgm)}}}};
  }
  return j.dump(2) + "\n";
}

namespace {

std::string fmt(double x) { return format_number(x); }

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& cfg, unsigned workers) {
  cfg.validate();
  const SystemModel model(cfg.scenario, cfg.analysis);
  const Scenario& sc = model.scenario();
  std::vector<CheckResult> out;
  const auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };

  // Moment ordering and the eta identity, per user.
  for (int u = 1; u <= 2; ++u) {
    const UserLinkParams& p = sc.user(u);
    const MomentSet mom = channel_moments(model.sums(), p.m, p.rho_large, sc.beta(u));
    add("moments-jensen-user" + std::to_string(u), mom.e_h4 >= mom.e_h2 * mom.e_h2,
        "E|h|^4=" + fmt(mom.e_h4) + " E^2|h|^2=" + fmt(mom.e_h2 * mom.e_h2));
    const double via_moments = p.rho_large * sc.beta(u) * sc.beta(u) * inverse_mean(mom);
    const double direct = eta_coefficient(model.sums(), p.m).eta;
    const double rel = std::abs(direct - via_moments) / via_moments;
    add("eta-identity-user" + std::to_string(u), rel < 1e-10, "relative difference " + fmt(rel));
  }

  // Jensen direction against MC.
  McConfig mc = cfg.mc;
  mc.workers = workers;
  const ErgodicRatesMc est = ergodic_rates_mc(model, mc);
  const RatePair lb = rate_lower_bounds(model);
  const RatePair olb = oma_rate_lower_bounds(model);
  const auto jensen = [&](const std::string& name, const McEstimate& e, double bound) {
    add(name, e.mean >= bound - 3.0 * e.half_width_95,
        "mc=" + fmt(e.mean) + " ci95=" + fmt(e.half_width_95) + " bound=" + fmt(bound));
  };
  jensen("jensen-noma-user1", est.noma.r1, lb.r1);
  jensen("jensen-noma-user2", est.noma.r2, lb.r2);
  jensen("jensen-oma-user1", est.oma.r1, olb.r1);
  jensen("jensen-oma-user2", est.oma.r2, olb.r2);
  add("sic-order-violations", true, std::to_string(est.noma.r1.sic_violations) + " of " + std::to_string(mc.trials));

  // high-SNR ceiling and monotonicity in rho.
  const RatePair lim = asymptotic_rho(sc.power_split, sc.hq);
  add("bounds-below-rho-limit", lb.r1 <= lim.r1 && lb.r2 <= lim.r2,
      "r1=" + fmt(lb.r1) + "/" + fmt(lim.r1) + " r2=" + fmt(lb.r2) + "/" + fmt(lim.r2));
  {
    Scenario up = sc;
    up.budget.rho *= 2.0;
    const RatePair lb2 = rate_lower_bounds(model.with(up));
    add("bounds-monotone-in-rho", lb2.r1 >= lb.r1 && lb2.r2 >= lb.r2,
        "doubling rho: r1 " + fmt(lb.r1) + "->" + fmt(lb2.r1) + ", r2 " + fmt(lb.r2) + "->" + fmt(lb2.r2));
  }

  // High-SNR slopes between +100 dB and +110 dB of the configured rho.
  {
    Scenario a = sc, b = sc;
    a.budget.rho *= 1e10;
    b.budget.rho *= 1e11;
    const RatePair ra = rate_lower_bounds(model.with(a));
    const RatePair rb = rate_lower_bounds(model.with(b));
    const double dlog = std::log2(10.0);
    const double s1 = (rb.r1 - ra.r1) / dlog, s2 = (rb.r2 - ra.r2) / dlog;
    add("snr-slope-user1", std::abs(s1 - snr_slope(1, sc.hq)) < 0.05,
        "measured " + fmt(s1) + " expected " + std::to_string(snr_slope(1, sc.hq)));
    add("snr-slope-user2", std::abs(s2 - snr_slope(2, sc.hq)) < 0.05,
        "measured " + fmt(s2) + " expected " + std::to_string(snr_slope(2, sc.hq)));
  }

  // Optimizer against brute force, and against the OMA baseline.
  {
    OptimizerConfig oc = cfg.optimizer;
    oc.objective_source = ObjectiveSource::theory_bound;
    const RateCurve curve = noma_rate_curve(model, oc);
    const KappaOptimum bis = optimize_kappa_noma(model, oc);
    const KappaOptimum grid = maximize_rgm_grid(curve, oc.kappa_floor, 1.0 - oc.kappa_floor, 10000);
    const bool ok = std::abs(bis.kappa1 - grid.kappa1) <= 2e-4 && bis.rgm >= grid.rgm - 1e-12 &&
                    std::abs(bis.rgm - grid.rgm) <= 1e-6;
    add("optimizer-vs-grid", ok,
        "bisection " + fmt(bis.kappa1) + "/" + fmt(bis.rgm) + " grid " + fmt(grid.kappa1) + "/" + fmt(grid.rgm));
    const OmaBaseline oma = oma_baseline(model);
    add("noma-geq-oma", bis.rgm >= oma.rgm, "noma " + fmt(bis.rgm) + " oma " + fmt(oma.rgm));
  }

  // Power bookkeeping of the received signal.
  {
    bool ok = true;
    double worst = 0.0;
    for (int u = 1; u <= 2; ++u) {
      const double h_sq = channel_moment2(model.sums(), sc.user(u).m, sc.user(u).rho_large, sc.beta(u));
      const HwiPowerBudget b = hwi_power_budget(h_sq, u, sc.power_split, sc.hq, sc.budget);
      const double expect = sc.budget.rho * h_sq + sc.budget.sigma2(u);
      const double rel = std::abs(b.total() - expect) / expect;
      worst = std::max(worst, rel);
      ok = ok && rel < 1e-10;
    }
    add("power-budget-identity", ok, "worst relative error " + fmt(worst));
  }
  return out;
}

}  // namespace iosnoma
