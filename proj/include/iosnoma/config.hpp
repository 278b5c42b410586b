#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iosnoma/mc.hpp"
#include "iosnoma/optimize.hpp"
#include "iosnoma/scenario.hpp"

namespace iosnoma {

// Everything a run needs. Worker count is deliberately not part of it: it
// cannot change any output.
struct RunConfig {
  Scenario scenario = Scenario::reference();
  AnalysisOptions analysis;
  McConfig mc;
  OptimizerConfig optimizer;
  // rate-vs-n
  std::vector<int> n_elements{16, 64, 256, 1024, 4096};
  // rgm-vs-power: UE-1 transmit SNR rho * rho_large_1 / sigma_1^2 in dB
  std::vector<double> snr1_db;
  std::vector<double> eps_panels{1.0, 1.0 - 1e-4, 1.0 - 1e-2};

  RunConfig();
  void validate() const;
};

// Parses a JSON document. A CSV written by this tool is accepted as well:
// its "# config:" header line is used. Throws ConfigError.
RunConfig parse_config(std::string_view text);

// Throws IoError when the file cannot be read, ConfigError otherwise.
RunConfig load_config(const std::string& path);

// Sorted-key, whitespace-free JSON of the full resolved configuration.
std::string canonical_json(const RunConfig& cfg);

// Same, indented, for shipping as a file.
std::string pretty_json(const RunConfig& cfg);

// FNV-1a 64 of canonical_json.
std::uint64_t scenario_digest(const RunConfig& cfg);
std::uint64_t fnv1a64(std::string_view bytes);

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace iosnoma
