#include "iosnoma/rates.hpp"

#include <cmath>
#include <numbers>

#include "iosnoma/errors.hpp"
#include "iosnoma/summation.hpp"

namespace iosnoma {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void HardwareQuality::validate() const {
  if (!in_unit_interval(eps_v) || !in_unit_interval(eps_u1) || !in_unit_interval(eps_u2)) {
    throw InvalidArgument("hardware quality factors must lie in [0, 1]");
  }
}

void PowerSplit::validate() const {
  if (!(kappa1 >= 0.0) || !(kappa2 >= 0.0)) throw InvalidArgument("kappa1, kappa2 must be >= 0");
  if (std::abs(kappa1 + kappa2 - 1.0) > 1e-12) throw InvalidArgument("kappa1 + kappa2 must equal 1");
}

void LinkBudget::validate() const {
  if (!(rho > 0.0) || !(sigma2_1 > 0.0) || !(sigma2_2 > 0.0)) {
    throw InvalidArgument("link budget: rho and noise powers must be > 0");
  }
}

double HwiPowerBudget::total() const {
  CompensatedSum s;
  for (double v : {desired_s1, bs_distortion_s1, ue_distortion_s1, desired_s2, bs_distortion_s2,
                   ue_distortion_s2, noise}) {
    s += v;
  }
  return s.value();
}

double log2_1p(double x) { return std::log1p(x) * std::numbers::log2e; }

HwiPowerBudget hwi_power_budget(double h_sq, int user, const PowerSplit& split, const HardwareQuality& hq,
                                const LinkBudget& budget) {
  if (user != 1 && user != 2) throw InvalidArgument("hwi_power_budget: user must be 1 or 2");
  if (!(h_sq >= 0.0)) throw InvalidArgument("hwi_power_budget: channel power must be >= 0");
  const double eu = hq.eps_u(user), ev = hq.eps_v;
  const double p = budget.rho * h_sq;
  HwiPowerBudget b;
  b.desired_s1 = p * split.kappa1 * eu * ev;
  b.bs_distortion_s1 = p * split.kappa1 * eu * (1.0 - ev);
  b.ue_distortion_s1 = p * split.kappa1 * (1.0 - eu);
  b.desired_s2 = p * split.kappa2 * eu * ev;
  b.bs_distortion_s2 = p * split.kappa2 * eu * (1.0 - ev);
  b.ue_distortion_s2 = p * split.kappa2 * (1.0 - eu);
  b.noise = budget.sigma2(user);
  return b;
}

bool sic_order_holds(double h1_sq, double h2_sq, const LinkBudget& budget) {
  return h1_sq / budget.sigma2_1 > h2_sq / budget.sigma2_2;
}

NomaRates noma_rates(double h1_sq, double h2_sq, const PowerSplit& split, const HardwareQuality& hq,
                     const LinkBudget& budget) {
  const double e1 = hq.clean_fraction(1), e2 = hq.clean_fraction(2);
  const double rho = budget.rho, k1 = split.kappa1, k2 = split.kappa2;
  NomaRates out;
  out.sic_order_holds = sic_order_holds(h1_sq, h2_sq, budget);
  // Channel power factored out of every SINR: signal / (impairment + sigma^2 / |h|^2).
  if (h1_sq > 0.0) {
    const double sinr1 = rho * k1 * e1 / (rho * (k1 * (1.0 - e1) + k2 * (1.0 - e2)) + budget.sigma2_1 / h1_sq);
    out.r1 = log2_1p(sinr1);
  }
  if (h2_sq > 0.0) {
    const double sinr2 = rho * k2 * e2 / (rho * (k2 * (1.0 - e2) + k1) + budget.sigma2_2 / h2_sq);
    out.r2 = log2_1p(sinr2);
  }
  return out;
}

RatePair oma_rates(double h1_sq, double h2_sq, const PowerSplit& resource_split, const HardwareQuality& hq,
                   const LinkBudget& budget) {
  const auto single = [&](double h_sq, int user) {
    if (!(h_sq > 0.0)) return 0.0;
    const double e = hq.clean_fraction(user);
    const double sinr = budget.rho * e / (budget.rho * (1.0 - e) + budget.sigma2(user) / h_sq);
    return resource_split.kappa(user) * log2_1p(sinr);
  };
  return {single(h1_sq, 1), single(h2_sq, 2)};
}

double geometric_mean_rate(double r1, double r2) {
  if (!(r1 >= 0.0) || !(r2 >= 0.0)) throw InvalidArgument("geometric_mean_rate: rates must be >= 0");
  if (r1 == 0.0 || r2 == 0.0) return 0.0;  // also covers inf * 0
  return std::sqrt(r1 * r2);
}

}  // namespace iosnoma
