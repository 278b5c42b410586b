#include "iosnoma/fading.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "iosnoma/errors.hpp"

namespace iosnoma {

using std::numbers::pi;

std::string_view to_string(Side s) { return s == Side::reflect ? "reflect" : "refract"; }

void UserLinkParams::validate() const {
  if (!(m >= 0.5)) throw InvalidShape("Nakagami shape m must be >= 0.5 (got " + std::to_string(m) + ")");
  if (!(rho_large > 0.0)) throw InvalidArgument("large-scale gain must be > 0");
}

void SurfaceSplit::validate() const {
  if (!(beta1 >= 0.0) || !(beta2 >= 0.0)) throw InvalidArgument("surface split: beta1, beta2 must be >= 0");
  if (std::abs(beta1 * beta1 + beta2 * beta2 - 1.0) > 1e-12) {
    throw InvalidArgument("surface split: beta1^2 + beta2^2 must equal 1");
  }
}

NakagamiMoments nakagami_moments(double m) {
  if (!(m >= 0.5)) throw InvalidShape("Nakagami shape m must be >= 0.5 (got " + std::to_string(m) + ")");
  // Gamma(m + 1/2) / Gamma(m) without forming either factor.
  const double ratio = 1.0 / boost::math::tgamma_delta_ratio(m, 0.5);
  NakagamiMoments mu;
  mu.mu1 = ratio / std::sqrt(m);
  mu.mu2 = 1.0;
  mu.mu3 = mu.mu1 * (1.0 + 0.5 / m);  // Gamma(m + 3/2) = (m + 1/2) Gamma(m + 1/2)
  mu.mu4 = 1.0 + 1.0 / m;
  return mu;
}

double nakagami_moment(double m, int k) {
  if (k < 1 || k > 4) throw InvalidOrder("Nakagami moment order must be in 1..4 (got " + std::to_string(k) + ")");
  const NakagamiMoments mu = nakagami_moments(m);
  switch (k) {
    case 1: return mu.mu1;
    case 2: return mu.mu2;
    case 3: return mu.mu3;
    default: return mu.mu4;
  }
}

GammaSampler::GammaSampler(double shape, double scale)
    : shape_(shape), scale_(scale), boosted_(shape < 1.0) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw InvalidShape("Gamma sampler needs shape > 0 and scale > 0");
  d_ = (boosted_ ? shape + 1.0 : shape) - 1.0 / 3.0;
  c_ = 1.0 / std::sqrt(9.0 * d_);
}

double GammaSampler::operator()(CounterRng& rng) {
  double v = 0.0;
  for (;;) {
    double z = 0.0;
    do {
      z = normal_(rng);
      v = 1.0 + c_ * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) break;
    if (std::log(u) < 0.5 * z2 + d_ * (1.0 - v + std::log(v))) break;
  }
  double x = d_ * v * scale_;
  if (boosted_) x *= std::pow(rng.uniform_open(), 1.0 / shape_);
  return x;
}

void sample_amplitudes(double m, std::span<double> out, CounterRng& rng) {
  if (!(m >= 0.5)) throw InvalidShape("Nakagami shape m must be >= 0.5 (got " + std::to_string(m) + ")");
  GammaSampler power(m, 1.0 / m);
  for (double& q : out) q = std::sqrt(power(rng));
}

SmallScaleDraw sample_small_scale(const UserLinkParams& params, std::size_t n, CounterRng& rng) {
  params.validate();
  SmallScaleDraw draw;
  draw.q.resize(n);
  draw.psi.resize(n);
  sample_amplitudes(params.m, draw.q, rng);
  for (double& p : draw.psi) p = 2.0 * pi * rng.uniform();
  return draw;
}

double aligned_phase(Point2 center, const FeedGeometry& feed, const SurfaceGeometry& surface, double psi) {
  const double cycles = feed_distance(center, feed) / surface.wavelength;
  double theta = std::fmod(2.0 * pi * (cycles - std::floor(cycles)) - psi, 2.0 * pi);
  if (theta < 0.0) theta += 2.0 * pi;
  if (theta >= 2.0 * pi) theta = 0.0;
  return theta;
}

double equivalent_gain(std::span<const double> sqrt_gamma, double beta, double rho_large,
                       std::span<const double> q) {
  if (sqrt_gamma.size() != q.size()) {
    throw DimensionMismatch("equivalent_gain: " + std::to_string(sqrt_gamma.size()) + " elements but " +
                            std::to_string(q.size()) + " amplitudes");
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < q.size(); ++n) acc += sqrt_gamma[n] * q[n];
  return std::sqrt(rho_large) * beta * acc;
}

double equivalent_gain(const ElementGrid& grid, double beta, const UserLinkParams& params,
                       const SmallScaleDraw& draw) {
  std::vector<double> sg(grid.energies.size());
  for (std::size_t n = 0; n < sg.size(); ++n) sg[n] = std::sqrt(grid.energies[n]);
  return equivalent_gain(sg, beta, params.rho_large, draw.q);
}

}  // namespace iosnoma
