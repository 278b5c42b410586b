#pragma once

#include <cmath>
#include <limits>

#include "iosnoma/fading.hpp"
#include "iosnoma/geometry.hpp"
#include "iosnoma/rates.hpp"
#include "iosnoma/scenario.hpp"

namespace iosnoma {

// First two moments of the channel power |h|^2.
struct MomentSet {
  double e_h2 = 0.0;
  double e_h4 = 0.0;
};

// Gamma law matched to a MomentSet, and the inverse-Gamma law of 1/|h|^2.
struct GammaFit {
  double nu = 0.0;            // shape
  double varsigma = 0.0;      // scale
  double nu_inv = 0.0;        // inverse-Gamma shape (= nu)
  double varsigma_inv = 0.0;  // inverse-Gamma scale (= 1 / varsigma)
};

// Central-moment combinations of the amplitude and the normalized noise
// coefficient eta = rho_large * beta^2 * E[1/|h|^2].
struct EtaCoefficients {
  double iota1 = 0.0;  // mean
  double iota2 = 0.0;  // variance
  double iota3 = 0.0;  // third central moment
  double iota4 = 0.0;  // fourth cumulant
  double eta = 0.0;
};

struct BoundReport {
  double r1_lb = 0.0, r2_lb = 0.0;            // finite rho, finite N
  double r1_inf_rho = 0.0, r2_inf_rho = 0.0;  // rho -> infinity
  double r1_inf_n = 0.0, r2_inf_n = 0.0;      // N -> infinity
  double r1_cont = 0.0, r2_cont = 0.0;        // continuous aperture
  int s1 = 0, s2 = 0;                         // high-SNR slopes
};

// Rates that grow without bound are represented by +infinity.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();
inline bool is_unbounded(double r) { return std::isinf(r) && r > 0.0; }

// 2 E^2[|h|^2] - E[|h|^4] at or below this fraction of E^2[|h|^2] is treated
// as a non-integrable inverse moment.
inline constexpr double kInverseMomentGuard = 1e-12;

double channel_moment2(const ApertureSums& sums, const NakagamiMoments& mu, double rho_large, double beta);
double channel_moment2(const ApertureSums& sums, double m, double rho_large, double beta);
double channel_moment4(const ApertureSums& sums, const NakagamiMoments& mu, double rho_large, double beta);
double channel_moment4(const ApertureSums& sums, double m, double rho_large, double beta);
MomentSet channel_moments(const ApertureSums& sums, double m, double rho_large, double beta);

// Throws DegenerateDistribution when E[|h|^4] <= E^2[|h|^2].
GammaFit gamma_fit(const MomentSet& mom);

// E[1/|h|^2] = E[|h|^2] / (2 E^2[|h|^2] - E[|h|^4]).
// Throws NonIntegrableInverseMoment when the matched shape is <= 1.
double inverse_mean(const MomentSet& mom);

EtaCoefficients eta_coefficient(const ApertureSums& sums, const NakagamiMoments& mu);
EtaCoefficients eta_coefficient(const ApertureSums& sums, double m);

// eta for user 1 or 2 under the model's convention.
double eta(const SystemModel& model, int user);

// Jensen lower bounds on the NOMA ergodic rates for given eta_1, eta_2.
RatePair rate_lower_bounds(const Scenario& scenario, double eta1, double eta2);
RatePair rate_lower_bounds(const SystemModel& model);

// The same bound construction applied to the OMA rates.
RatePair oma_rate_lower_bounds(const Scenario& scenario, double eta1, double eta2);
RatePair oma_rate_lower_bounds(const SystemModel& model);

// rho -> infinity limits of the bounds. kUnbounded where the impairment
// term vanishes.
RatePair asymptotic_rho(const PowerSplit& split, const HardwareQuality& hq);
RatePair oma_asymptotic_rho(const PowerSplit& resource_split, const HardwareQuality& hq);

// lim R / log2(rho): 1 for UE-1 with ideal hardware, else 0.
int snr_slope(int user, const HardwareQuality& hq);

// eta with the A-functionals replaced by their whole-plane closed forms.
double eta_infinite(const Scenario& scenario, int user, Convention convention = Convention::paper_integral,
                    A1Variant a1_variant = A1Variant::as_printed);

// N -> infinity bounds. The defaults reproduce the printed closed form.
RatePair asymptotic_n(const Scenario& scenario, Convention convention = Convention::paper_integral,
                      A1Variant a1_variant = A1Variant::as_printed);
RatePair oma_asymptotic_n(const Scenario& scenario, Convention convention = Convention::paper_integral,
                          A1Variant a1_variant = A1Variant::as_printed);

// Noise coefficient of the continuous-aperture limit, 1 / (iota1^2 A1^2),
// which for the defaults is (dx dy / lambda^2) / (8 pi (alpha+1)(alpha-1)^2 d0^2 mu1^2).
double continuous_noise_coefficient(const Scenario& scenario, int user,
                                    Convention convention = Convention::paper_integral,
                                    A1Variant a1_variant = A1Variant::as_printed);

RatePair continuous_aperture(const Scenario& scenario, Convention convention = Convention::paper_integral,
                             A1Variant a1_variant = A1Variant::as_printed);

// Everything above for one model. Non-integrable inverse moments propagate.
BoundReport bound_report(const SystemModel& model);

}  // namespace iosnoma
