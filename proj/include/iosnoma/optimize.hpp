#pragma once

#include <functional>
#include <string_view>

#include "iosnoma/mc.hpp"
#include "iosnoma/rates.hpp"
#include "iosnoma/scenario.hpp"

namespace iosnoma {

enum class ObjectiveSource { theory_bound, monte_carlo };

std::string_view to_string(ObjectiveSource s);
ObjectiveSource parse_objective_source(std::string_view s);

struct OptimizerConfig {
  // Tight by default: near a high-SNR plateau the NOMA optimum exceeds the
  // OMA value by ~1e-10 bits, and a loose bracket can lose that margin.
  double tol_kappa = 1e-10;
  double kappa_floor = 1e-6;
  double diff_step = 1e-6;  // central-difference step on log R_GM
  ObjectiveSource objective_source = ObjectiveSource::theory_bound;
  McConfig mc{2000, 1, 256, 1};  // used by the monte-carlo objective

  void validate() const;
};

struct KappaOptimum {
  double kappa1 = 0.0;
  double rgm = 0.0;
  RatePair rates;
  // false when d log R_GM / d kappa1 has one sign on the whole interval; the
  // better endpoint is returned instead.
  bool interior = true;
  int iterations = 0;
};

// Rates as a function of kappa1.
using RateCurve = std::function<RatePair(double)>;

// Bisection on the sign of the central-difference derivative of
// log sqrt(R1 R2) over [lo, hi].
KappaOptimum maximize_rgm_bisection(const RateCurve& curve, double lo, double hi, double tol, double step);

// Brute-force oracle: best of `points` equally spaced kappa1 in [lo, hi].
KappaOptimum maximize_rgm_grid(const RateCurve& curve, double lo, double hi, int points);

// NOMA rate curve of the configured objective. The monte-carlo curve reuses
// one set of channel draws for every kappa1.
RateCurve noma_rate_curve(const SystemModel& model, const OptimizerConfig& cfg);

KappaOptimum optimize_kappa_noma(const SystemModel& model, const OptimizerConfig& cfg = {});
KappaOptimum optimize_kappa_noma(const Scenario& scenario, const OptimizerConfig& cfg = {});

struct OmaBaseline {
  double kappa = 0.5;
  double rgm = 0.0;
  RatePair rates;
};

// OMA geometric-mean rate at the equal resource split (theory bound).
OmaBaseline oma_baseline(const SystemModel& model);

// max over kappa1 of sqrt(R1_inf R2_inf) from the rho -> infinity limits.
// kUnbounded with perfect hardware.
KappaOptimum optimize_plateau(const HardwareQuality& hq, const OptimizerConfig& cfg = {});

}  // namespace iosnoma
