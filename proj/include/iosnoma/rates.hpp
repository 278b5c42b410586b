#pragma once

namespace iosnoma {

// Transceiver hardware quality factors: 1 is ideal, 0 is useless.
struct HardwareQuality {
  double eps_v = 1.0;   // BS
  double eps_u1 = 1.0;  // UE-1
  double eps_u2 = 1.0;  // UE-2

  double eps_u(int user) const { return user == 1 ? eps_u1 : eps_u2; }
  // Fraction of a symbol's power that arrives undistorted at the given UE.
  double clean_fraction(int user) const { return eps_u(user) * eps_v; }
  bool ideal() const { return eps_v == 1.0 && eps_u1 == 1.0 && eps_u2 == 1.0; }
  void validate() const;
};

// NOMA power coefficients, or OMA resource shares; kappa1 + kappa2 = 1.
struct PowerSplit {
  double kappa1 = 0.5;
  double kappa2 = 0.5;

  static PowerSplit from_kappa1(double k1) { return {k1, 1.0 - k1}; }
  double kappa(int user) const { return user == 1 ? kappa1 : kappa2; }
  void validate() const;
};

struct LinkBudget {
  double rho = 1.0;       // total transmit power
  double sigma2_1 = 1.0;  // noise power at UE-1
  double sigma2_2 = 1.0;  // noise power at UE-2

  double sigma2(int user) const { return user == 1 ? sigma2_1 : sigma2_2; }
  void validate() const;
};

// Power of each labeled term of the received signal at one UE.
struct HwiPowerBudget {
  double desired_s1 = 0.0;
  double bs_distortion_s1 = 0.0;
  double ue_distortion_s1 = 0.0;
  double desired_s2 = 0.0;
  double bs_distortion_s2 = 0.0;
  double ue_distortion_s2 = 0.0;
  double noise = 0.0;

  double total() const;
};

struct NomaRates {
  double r1 = 0.0;
  double r2 = 0.0;
  bool sic_order_holds = true;
};

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

// Received-signal decomposition at UE `user` (1 or 2) for channel power h_sq.
HwiPowerBudget hwi_power_budget(double h_sq, int user, const PowerSplit& split, const HardwareQuality& hq,
                                const LinkBudget& budget);

// SIC rates with the fixed role assignment (UE-1 strong). A violated order
// is flagged, not corrected.
NomaRates noma_rates(double h1_sq, double h2_sq, const PowerSplit& split, const HardwareQuality& hq,
                     const LinkBudget& budget);

RatePair oma_rates(double h1_sq, double h2_sq, const PowerSplit& resource_split, const HardwareQuality& hq,
                   const LinkBudget& budget);

double geometric_mean_rate(double r1, double r2);

bool sic_order_holds(double h1_sq, double h2_sq, const LinkBudget& budget);

// log2(1 + x) without cancellation for small x.
double log2_1p(double x);

}  // namespace iosnoma
