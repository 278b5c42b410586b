#pragma once

#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "iosnoma/geometry.hpp"
#include "iosnoma/rng.hpp"

namespace iosnoma {

enum class Side { reflect, refract };

std::string_view to_string(Side s);

// IOS-to-user far-field link. Small-scale amplitudes have unit power.
struct UserLinkParams {
  double m = 1.0;           // Nakagami shape, >= 0.5
  double rho_large = 1.0;   // large-scale gain (linear)
  Side side = Side::reflect;

  void validate() const;
};

struct NakagamiMoments {
  double mu1 = 0.0;
  double mu2 = 1.0;
  double mu3 = 0.0;
  double mu4 = 0.0;
};

// Reflection/refraction amplitude split; beta1^2 + beta2^2 = 1.
struct SurfaceSplit {
  double beta1 = 0.70710678118654752;
  double beta2 = 0.70710678118654752;

  double beta(int user) const { return user == 1 ? beta1 : beta2; }
  void validate() const;
};

struct SmallScaleDraw {
  std::vector<double> q;    // amplitudes
  std::vector<double> psi;  // phases in [0, 2 pi)
};

// Raw moment E[q^k], k in 1..4. Throws InvalidShape / InvalidOrder.
double nakagami_moment(double m, int k);
NakagamiMoments nakagami_moments(double m);

// Gamma(shape, scale) by Marsaglia-Tsang squeeze/rejection, with the
// U^(1/shape) boost for shape < 1. Holds normal-variate state, so use one
// sampler per stream.
class GammaSampler {
 public:
  GammaSampler(double shape, double scale);

  double operator()(CounterRng& rng);

 private:
  double shape_, scale_;
  double d_ = 0.0, c_ = 0.0;
  bool boosted_;
  std::normal_distribution<double> normal_;
};

// Fills `out` with i.i.d. Nakagami-m amplitudes q = sqrt(G), G ~ Gamma(m, 1/m).
void sample_amplitudes(double m, std::span<double> out, CounterRng& rng);

// Draws n amplitudes, then n phases, from the stream.
SmallScaleDraw sample_small_scale(const UserLinkParams& params, std::size_t n, CounterRng& rng);

// IOS phase that cancels both the feed path phase and the user-link phase,
// reduced to [0, 2 pi).
double aligned_phase(Point2 center, const FeedGeometry& feed, const SurfaceGeometry& surface, double psi);

// |h_i| = sqrt(rho_i) * beta_i * sum_n sqrt(gamma_n) q_n under aligned phases.
double equivalent_gain(const ElementGrid& grid, double beta, const UserLinkParams& params,
                       const SmallScaleDraw& draw);

// Hot-path form over precomputed sqrt(gamma_n).
double equivalent_gain(std::span<const double> sqrt_gamma, double beta, double rho_large,
                       std::span<const double> q);

}  // namespace iosnoma
