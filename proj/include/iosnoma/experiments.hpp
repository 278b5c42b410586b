#pragma once

#include <string>
#include <vector>

#include "iosnoma/config.hpp"
#include "iosnoma/csv.hpp"
#include "iosnoma/mc.hpp"
#include "iosnoma/optimize.hpp"

namespace iosnoma {

// N elements on an n_x by n_y grid with n_x the largest divisor of N not
// above sqrt(N). Spacing and wavelength are kept.
SurfaceGeometry surface_for_n(const SurfaceGeometry& base, int n);

// Scenario with rho set so that rho * rho_large_1 / sigma_1^2 = snr1_db.
Scenario with_snr1_db(const Scenario& base, double snr1_db);

// Scenario with eps_v = eps_u1 = eps_u2 = eps.
Scenario with_quality(const Scenario& base, double eps);

struct RateVsNRow {
  int n = 0, n_x = 0, n_y = 0;
  std::string scheme;  // "noma" | "oma"
  int user = 0;
  McEstimate mc;
  double lower_bound = 0.0;
  double plateau = 0.0;  // N -> infinity limit of the lower bound
};

struct RgmVsPowerRow {
  double snr1_db = 0.0;
  double rho = 0.0;
  double eps = 0.0;
  std::string scheme;
  double kappa1 = 0.0;
  double rgm = 0.0;
  double r1 = 0.0, r2 = 0.0;
  double plateau_rgm = 0.0;  // rho -> infinity, kUnbounded with perfect hardware
  bool interior = true;
};

std::vector<RateVsNRow> run_rate_vs_n(const RunConfig& cfg, unsigned workers = 1);
std::vector<RgmVsPowerRow> run_rgm_vs_power(const RunConfig& cfg, unsigned workers = 1);

CsvTable rate_vs_n_table(const std::vector<RateVsNRow>& rows);
CsvTable rgm_vs_power_table(const std::vector<RgmVsPowerRow>& rows);

CsvMeta csv_meta(const RunConfig& cfg, const std::string& command);

// Every theory quantity of one scenario, plus MC estimates unless
// with_mc is false, as an indented JSON document.
std::string run_single(const RunConfig& cfg, bool with_mc = true, unsigned workers = 1);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Oracle and invariant checks on one scenario.
std::vector<CheckResult> run_validation(const RunConfig& cfg, unsigned workers = 1);

}  // namespace iosnoma
