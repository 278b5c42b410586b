#pragma once

#include <span>
#include <vector>

#include "iosnoma/fading.hpp"
#include "iosnoma/geometry.hpp"
#include "iosnoma/rates.hpp"

namespace iosnoma {

// One complete downlink instance.
struct Scenario {
  SurfaceGeometry surface;
  FeedGeometry feed;
  SurfaceSplit split_surface;
  UserLinkParams user1{1.0, 1e4, Side::reflect};
  UserLinkParams user2{1.0, 1.0, Side::refract};
  HardwareQuality hq;
  LinkBudget budget{0.01, 1.0, 1.0};
  PowerSplit power_split{0.2, 0.8};
  PowerSplit oma_split{0.5, 0.5};

  const UserLinkParams& user(int i) const { return i == 1 ? user1 : user2; }
  double beta(int i) const { return split_surface.beta(i); }
  // rho * rho_large_i / sigma_i^2
  double transmit_snr(int i) const;

  void validate() const;

  // 32x32 elements of lambda/4 at lambda = 0.3 m, d0 = 10 lambda, alpha = 2,
  // beta1^2 = beta2^2 = 0.5, Rayleigh links (m = 1), rho_large/sigma^2 of
  // 40 dB and 0 dB, rho = -20 dB, ideal hardware, kappa1 = 0.2, OMA 0.5/0.5.
  static Scenario reference();
};

struct AnalysisOptions {
  // Source of the A-functionals for the finite-N pipeline.
  Convention convention = Convention::discrete;
  // Plane form of A1 used by the N -> infinity and continuous-aperture limits.
  A1Variant a1_variant = A1Variant::as_printed;
};

// A scenario with its element grid and A-functionals evaluated once.
class SystemModel {
 public:
  explicit SystemModel(Scenario scenario, AnalysisOptions options = {});

  const Scenario& scenario() const { return scenario_; }
  const AnalysisOptions& options() const { return options_; }
  const ElementGrid& grid() const { return grid_; }
  std::span<const double> sqrt_gamma() const { return sqrt_gamma_; }
  const ApertureSums& discrete_sums() const { return discrete_; }
  // A-functionals under options().convention.
  const ApertureSums& sums() const { return selected_; }

  // Same geometry, different link/power/hardware parameters.
  SystemModel with(const Scenario& updated) const;

 private:
  SystemModel() = default;

  Scenario scenario_;
  AnalysisOptions options_;
  ElementGrid grid_;
  std::vector<double> sqrt_gamma_;
  ApertureSums discrete_;
  ApertureSums selected_;
};

}  // namespace iosnoma
