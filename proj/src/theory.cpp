#include "iosnoma/theory.hpp"

#include <string>

#include "iosnoma/errors.hpp"
#include "iosnoma/summation.hpp"

namespace iosnoma {

double channel_moment2(const ApertureSums& s, const NakagamiMoments& mu, double rho_large, double beta) {
  CompensatedSum acc;
  acc += mu.mu2 * s.a2;
  acc += mu.mu1 * mu.mu1 * s.a1 * s.a1;
  acc -= mu.mu1 * mu.mu1 * s.a2;
  return rho_large * beta * beta * acc.value();
}

double channel_moment2(const ApertureSums& s, double m, double rho_large, double beta) {
  return channel_moment2(s, nakagami_moments(m), rho_large, beta);
}

double channel_moment4(const ApertureSums& s, const NakagamiMoments& mu, double rho_large, double beta) {
  const double a1 = s.a1, a2 = s.a2, a3 = s.a3, a4 = s.a4;
  const double a1sq = a1 * a1;
  const double a3a1 = a3 * a1;
  const double c2 = 4.0 * mu.mu3 * mu.mu1;
  const double c3 = 3.0 * mu.mu2 * mu.mu2;
  const double c4 = 6.0 * mu.mu2 * mu.mu1 * mu.mu1;
  const double c5 = mu.mu1 * mu.mu1 * mu.mu1 * mu.mu1;

  // Each bracket expanded into signed monomials; the A4 and A3*A1 terms of
  // different brackets largely cancel, so they go through one compensated sum.
  CompensatedSum acc;
  acc += mu.mu4 * a4;
  acc += c2 * a3a1;
  acc -= c2 * a4;
  acc += c3 * a2 * a2;
  acc -= c3 * a4;
  acc += c4 * a2 * a1sq;
  acc -= c4 * 2.0 * a3a1;
  acc -= c4 * a2 * a2;
  acc += c4 * 2.0 * a4;
  acc += c5 * a1sq * a1sq;
  acc -= c5 * 6.0 * a2 * a1sq;
  acc += c5 * 3.0 * a2 * a2;
  acc += c5 * 8.0 * a3a1;
  acc -= c5 * 6.0 * a4;
  const double rb = rho_large * beta * beta;
  return rb * rb * acc.value();
}

double channel_moment4(const ApertureSums& s, double m, double rho_large, double beta) {
  return channel_moment4(s, nakagami_moments(m), rho_large, beta);
}

MomentSet channel_moments(const ApertureSums& s, double m, double rho_large, double beta) {
  const NakagamiMoments mu = nakagami_moments(m);
  return {channel_moment2(s, mu, rho_large, beta), channel_moment4(s, mu, rho_large, beta)};
}

GammaFit gamma_fit(const MomentSet& mom) {
  const double var = mom.e_h4 - mom.e_h2 * mom.e_h2;
  if (!(mom.e_h2 > 0.0) || !(var > 0.0)) {
    throw DegenerateDistribution("gamma_fit: E[|h|^4] must exceed E^2[|h|^2] (variance " + std::to_string(var) +
                                 ")");
  }
  GammaFit fit;
  fit.nu = mom.e_h2 * mom.e_h2 / var;
  fit.varsigma = var / mom.e_h2;
  fit.nu_inv = fit.nu;
  fit.varsigma_inv = 1.0 / fit.varsigma;
  return fit;
}

double inverse_mean(const MomentSet& mom) {
  const double sq = mom.e_h2 * mom.e_h2;
  const double den = 2.0 * sq - mom.e_h4;
  if (!(den > kInverseMomentGuard * sq)) {
    throw NonIntegrableInverseMoment("inverse_mean: matched Gamma shape <= 1, E[1/|h|^2] does not exist");
  }
  return mom.e_h2 / den;
}

EtaCoefficients eta_coefficient(const ApertureSums& s, const NakagamiMoments& mu) {
  EtaCoefficients c;
  const double m1 = mu.mu1, m2 = mu.mu2, m3 = mu.mu3, m4 = mu.mu4;
  c.iota1 = m1;
  c.iota2 = m2 - m1 * m1;
  c.iota3 = m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
  {
    CompensatedSum k4;
    k4 += m4;
    k4 -= 4.0 * m3 * m1;
    k4 -= 3.0 * m2 * m2;
    k4 += 12.0 * m2 * m1 * m1;
    k4 -= 6.0 * m1 * m1 * m1 * m1;
    c.iota4 = k4.value();
  }
  const double i1sq = c.iota1 * c.iota1;
  const double a1sq = s.a1 * s.a1;

  const double num = i1sq * a1sq + c.iota2 * s.a2;
  CompensatedSum den;
  den += i1sq * i1sq * a1sq * a1sq;
  den -= 2.0 * c.iota2 * i1sq * s.a2 * a1sq;
  den -= c.iota2 * c.iota2 * s.a2 * s.a2;
  den -= 4.0 * c.iota3 * c.iota1 * s.a3 * s.a1;
  den -= c.iota4 * s.a4;
  if (!(den.value() > kInverseMomentGuard * num * num)) {
    throw NonIntegrableInverseMoment("eta_coefficient: denominator <= 0, E[1/|h|^2] does not exist");
  }
  c.eta = num / den.value();
  return c;
}

EtaCoefficients eta_coefficient(const ApertureSums& s, double m) { return eta_coefficient(s, nakagami_moments(m)); }

double eta(const SystemModel& model, int user) {
  return eta_coefficient(model.sums(), model.scenario().user(user).m).eta;
}

RatePair rate_lower_bounds(const Scenario& sc, double eta1, double eta2) {
  const double e1 = sc.hq.clean_fraction(1), e2 = sc.hq.clean_fraction(2);
  const double k1 = sc.power_split.kappa1, k2 = sc.power_split.kappa2;
  const double g1 = sc.budget.rho * sc.user1.rho_large * sc.beta(1) * sc.beta(1);
  const double g2 = sc.budget.rho * sc.user2.rho_large * sc.beta(2) * sc.beta(2);
  RatePair r;
  r.r1 = log2_1p(g1 * k1 * e1 / (g1 * (k1 * (1.0 - e1) + k2 * (1.0 - e2)) + eta1 * sc.budget.sigma2_1));
  r.r2 = log2_1p(g2 * k2 * e2 / (g2 * (k1 + k2 * (1.0 - e2)) + eta2 * sc.budget.sigma2_2));
  return r;
}

RatePair rate_lower_bounds(const SystemModel& model) {
  return rate_lower_bounds(model.scenario(), eta(model, 1), eta(model, 2));
}

RatePair oma_rate_lower_bounds(const Scenario& sc, double eta1, double eta2) {
  const auto one = [&](int u, double eta_u) {
    const double e = sc.hq.clean_fraction(u);
    const double g = sc.budget.rho * sc.user(u).rho_large * sc.beta(u) * sc.beta(u);
    return sc.oma_split.kappa(u) * log2_1p(g * e / (g * (1.0 - e) + eta_u * sc.budget.sigma2(u)));
  };
  return {one(1, eta1), one(2, eta2)};
}

RatePair oma_rate_lower_bounds(const SystemModel& model) {
  return oma_rate_lower_bounds(model.scenario(), eta(model, 1), eta(model, 2));
}

namespace {

double saturated(double num, double den) {
  if (den > 0.0) return log2_1p(num / den);
  return num > 0.0 ? kUnbounded : 0.0;
}

}  // namespace

RatePair asymptotic_rho(const PowerSplit& split, const HardwareQuality& hq) {
  const double e1 = hq.clean_fraction(1), e2 = hq.clean_fraction(2);
  const double k1 = split.kappa1, k2 = split.kappa2;
  return {saturated(k1 * e1, k1 * (1.0 - e1) + k2 * (1.0 - e2)), saturated(k2 * e2, k1 + k2 * (1.0 - e2))};
}

RatePair oma_asymptotic_rho(const PowerSplit& resource_split, const HardwareQuality& hq) {
  const auto one = [&](int u) {
    const double k = resource_split.kappa(u);
    if (k == 0.0) return 0.0;
    return k * saturated(hq.clean_fraction(u), 1.0 - hq.clean_fraction(u));
  };
  return {one(1), one(2)};
}

int snr_slope(int user, const HardwareQuality& hq) {
  if (user != 1 && user != 2) throw InvalidArgument("snr_slope: user must be 1 or 2");
  return user == 1 && hq.ideal() ? 1 : 0;
}

double eta_infinite(const Scenario& sc, int user, Convention convention, A1Variant a1_variant) {
  const ApertureSums plane = aperture_sums_infinite(sc.surface, sc.feed, a1_variant, convention);
  return eta_coefficient(plane, sc.user(user).m).eta;
}

RatePair asymptotic_n(const Scenario& sc, Convention convention, A1Variant a1_variant) {
  return rate_lower_bounds(sc, eta_infinite(sc, 1, convention, a1_variant),
                           eta_infinite(sc, 2, convention, a1_variant));
}

RatePair oma_asymptotic_n(const Scenario& sc, Convention convention, A1Variant a1_variant) {
  return oma_rate_lower_bounds(sc, eta_infinite(sc, 1, convention, a1_variant),
                               eta_infinite(sc, 2, convention, a1_variant));
}

double continuous_noise_coefficient(const Scenario& sc, int user, Convention convention, A1Variant a1_variant) {
  const ApertureSums plane = aperture_sums_infinite(sc.surface, sc.feed, a1_variant, convention);
  const double mu1 = nakagami_moment(sc.user(user).m, 1);
  return 1.0 / (mu1 * mu1 * plane.a1 * plane.a1);
}

RatePair continuous_aperture(const Scenario& sc, Convention convention, A1Variant a1_variant) {
  return rate_lower_bounds(sc, continuous_noise_coefficient(sc, 1, convention, a1_variant),
                           continuous_noise_coefficient(sc, 2, convention, a1_variant));
}

BoundReport bound_report(const SystemModel& model) {
  const Scenario& sc = model.scenario();
  const Convention plane_conv = model.options().convention;
  const A1Variant variant = model.options().a1_variant;
  BoundReport r;
  const RatePair lb = rate_lower_bounds(model);
  r.r1_lb = lb.r1;
  r.r2_lb = lb.r2;
  const RatePair inf_rho = asymptotic_rho(sc.power_split, sc.hq);
  r.r1_inf_rho = inf_rho.r1;
  r.r2_inf_rho = inf_rho.r2;
  const RatePair inf_n = asymptotic_n(sc, plane_conv, variant);
  r.r1_inf_n = inf_n.r1;
  r.r2_inf_n = inf_n.r2;
  const RatePair cont = continuous_aperture(sc, plane_conv, variant);
  r.r1_cont = cont.r1;
  r.r2_cont = cont.r2;
  r.s1 = snr_slope(1, sc.hq);
  r.s2 = snr_slope(2, sc.hq);
  return r;
}

}  // namespace iosnoma
