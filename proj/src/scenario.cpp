#include "iosnoma/scenario.hpp"

#include <cmath>

#include "iosnoma/errors.hpp"

namespace iosnoma {

double Scenario::transmit_snr(int i) const { return budget.rho * user(i).rho_large / budget.sigma2(i); }

void Scenario::validate() const {
  surface.validate();
  feed.validate();
  split_surface.validate();
  user1.validate();
  user2.validate();
  hq.validate();
  budget.validate();
  power_split.validate();
  oma_split.validate();
}

Scenario Scenario::reference() {
  Scenario s;
  s.surface = SurfaceGeometry{32, 32, 0.075, 0.075, 0.3};
  s.feed = FeedGeometry{3.0, 2.0};
  s.split_surface = SurfaceSplit{std::sqrt(0.5), std::sqrt(0.5)};
  s.user1 = UserLinkParams{1.0, 1e4, Side::reflect};
  s.user2 = UserLinkParams{1.0, 1.0, Side::refract};
  s.hq = HardwareQuality{};
  s.budget = LinkBudget{0.01, 1.0, 1.0};
  s.power_split = PowerSplit{0.2, 0.8};
  s.oma_split = PowerSplit{0.5, 0.5};
  return s;
}

SystemModel::SystemModel(Scenario scenario, AnalysisOptions options)
    : scenario_(std::move(scenario)), options_(options) {
  scenario_.validate();
  grid_ = make_element_grid(scenario_.surface, scenario_.feed);
  sqrt_gamma_.resize(grid_.size());
  for (std::size_t n = 0; n < grid_.size(); ++n) sqrt_gamma_[n] = std::sqrt(grid_.energies[n]);
  discrete_ = aperture_sums_discrete(grid_);
  selected_ = options_.convention == Convention::discrete ? discrete_
                                                          : aperture_sums_integral(scenario_.surface, scenario_.feed);
}

SystemModel SystemModel::with(const Scenario& updated) const {
  const auto& a = scenario_.surface;
  const auto& b = updated.surface;
  const bool same_geometry = a.n_x == b.n_x && a.n_y == b.n_y && a.delta_x == b.delta_x &&
                             a.delta_y == b.delta_y && a.wavelength == b.wavelength &&
                             scenario_.feed.d0 == updated.feed.d0 && scenario_.feed.alpha == updated.feed.alpha;
  if (!same_geometry) return SystemModel(updated, options_);
  updated.validate();
  SystemModel m;
  m.scenario_ = updated;
  m.options_ = options_;
  m.grid_ = grid_;
  m.sqrt_gamma_ = sqrt_gamma_;
  m.discrete_ = discrete_;
  m.selected_ = selected_;
  return m;
}

}  // namespace iosnoma
