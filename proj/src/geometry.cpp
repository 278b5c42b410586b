#include "iosnoma/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "iosnoma/errors.hpp"
#include "iosnoma/quadrature.hpp"
#include "iosnoma/summation.hpp"

namespace iosnoma {

using std::numbers::pi;

void SurfaceGeometry::validate() const {
  if (n_x < 1 || n_y < 1) throw InvalidArgument("surface: n_x and n_y must be >= 1");
  if (!(delta_x > 0.0) || !(delta_y > 0.0)) throw InvalidArgument("surface: element sizes must be > 0");
  if (!(wavelength > 0.0)) throw InvalidArgument("surface: wavelength must be > 0");
}

void FeedGeometry::validate() const {
  if (!(d0 > 0.0)) throw InvalidArgument("feed: d0 must be > 0");
  if (!(alpha > 1.0)) throw InvalidAlpha("feed: alpha must be > 1 (got " + std::to_string(alpha) + ")");
}

double ApertureSums::operator[](int k) const {
  switch (k) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    case 4: return a4;
    default: throw InvalidOrder("ApertureSums: index must be in 1..4");
  }
}

std::string_view to_string(ApertureForm f) {
  switch (f) {
    case ApertureForm::discrete: return "discrete";
    case ApertureForm::finite_integral: return "finite-integral";
    case ApertureForm::infinite_plane: return "infinite-plane";
  }
  return "?";
}

std::string_view to_string(Convention c) {
  return c == Convention::discrete ? "discrete" : "paper-integral";
}

std::string_view to_string(A1Variant v) {
  return v == A1Variant::as_printed ? "as-printed" : "re-derived";
}

Convention parse_convention(std::string_view s) {
  if (s == "discrete") return Convention::discrete;
  if (s == "paper-integral") return Convention::paper_integral;
  throw InvalidArgument("unknown convention '" + std::string(s) + "' (expected discrete or paper-integral)");
}

A1Variant parse_a1_variant(std::string_view s) {
  if (s == "as-printed") return A1Variant::as_printed;
  if (s == "re-derived") return A1Variant::re_derived;
  throw InvalidArgument("unknown A1 variant '" + std::string(s) + "' (expected as-printed or re-derived)");
}

std::vector<Point2> element_centers(const SurfaceGeometry& surface) {
  surface.validate();
  std::vector<Point2> centers;
  centers.reserve(surface.size());
  const double ox = 0.5 * (surface.n_x - 1);
  const double oy = 0.5 * (surface.n_y - 1);
  for (int j = 0; j < surface.n_y; ++j) {
    for (int i = 0; i < surface.n_x; ++i) {
      centers.push_back({(i - ox) * surface.delta_x, (j - oy) * surface.delta_y});
    }
  }
  return centers;
}

double feed_distance(Point2 c, const FeedGeometry& feed) {
  return std::sqrt(c.x * c.x + c.y * c.y + feed.d0 * feed.d0);
}

double feed_density(double x, double y, const FeedGeometry& feed) {
  // (alpha+1) d0^(alpha+1) / (2 pi) * (d0^2 + r^2)^(-(alpha+3)/2), scaled by d0
  const double d2 = feed.d0 * feed.d0;
  const double u = 1.0 + (x * x + y * y) / d2;
  return (feed.alpha + 1.0) / (2.0 * pi * d2) * std::pow(u, -0.5 * (feed.alpha + 3.0));
}

double element_energy(Point2 c, const SurfaceGeometry& surface, const FeedGeometry& feed) {
  const Rect cell{c.x - 0.5 * surface.delta_x, c.x + 0.5 * surface.delta_x, c.y - 0.5 * surface.delta_y,
                  c.y + 0.5 * surface.delta_y};
  const auto f = [&feed](double x, double y) { return std::array<double, 1>{feed_density(x, y, feed)}; };
  return integrate_rect_checked<1>(f, cell, "element_energy")[0];
}

std::complex<double> feed_channel(Point2 c, const SurfaceGeometry& surface, const FeedGeometry& feed) {
  const double gamma = element_energy(c, surface, feed);
  // Reduce the path length in wavelengths before forming the phase.
  const double cycles = feed_distance(c, feed) / surface.wavelength;
  const double frac = cycles - std::floor(cycles);
  return std::polar(std::sqrt(gamma), -2.0 * pi * frac);
}

ElementGrid make_element_grid(const SurfaceGeometry& surface, const FeedGeometry& feed) {
  surface.validate();
  feed.validate();
  ElementGrid grid;
  grid.centers = element_centers(surface);
  grid.energies.reserve(grid.centers.size());
  for (const Point2& c : grid.centers) grid.energies.push_back(element_energy(c, surface, feed));
  return grid;
}

ApertureSums aperture_sums_discrete(const ElementGrid& grid) {
  CompensatedSum s1, s2, s3, s4;
  for (double g : grid.energies) {
    const double r = std::sqrt(g);
    s1 += r;
    s2 += g;
    s3 += g * r;
    s4 += g * g;
  }
  return {s1.value(), s2.value(), s3.value(), s4.value(), ApertureForm::discrete};
}

namespace {

// Integrand {omega^(1/2), omega, omega^(3/2), omega^2}.
auto density_powers(const FeedGeometry& feed) {
  return [&feed](double x, double y) {
    const double w = feed_density(x, y, feed);
    const double r = std::sqrt(w);
    return std::array<double, 4>{r, w, w * r, w * w};
  };
}

ApertureSums normalize(const std::array<double, 4>& raw, double cell_ratio, ApertureForm form) {
  return {raw[0] / std::sqrt(cell_ratio), raw[1], raw[2] * std::sqrt(cell_ratio), raw[3] * cell_ratio, form};
}

}  // namespace

ApertureSums aperture_sums_integral(const SurfaceGeometry& surface, const FeedGeometry& feed) {
  surface.validate();
  feed.validate();
  const double hx = surface.half_width_x(), hy = surface.half_width_y();
  const auto raw = integrate_graded<4>(density_powers(feed), Rect{-hx, hx, -hy, hy}, feed.d0,
                                       "aperture_sums_integral");
  return normalize(raw, surface.cell_ratio(), ApertureForm::finite_integral);
}

ApertureSums aperture_sums_infinite(const SurfaceGeometry& surface, const FeedGeometry& feed,
                                    A1Variant a1_variant, Convention convention) {
  surface.validate();
  feed.validate();
  const double r = surface.cell_ratio();
  const double a = feed.alpha, d0 = feed.d0;
  const double a1_core = std::sqrt(8.0 * pi) * std::sqrt(a + 1.0) * d0;
  ApertureSums s;
  s.form = ApertureForm::infinite_plane;
  s.a1 = a1_core / std::sqrt(r) * (a1_variant == A1Variant::as_printed ? (a - 1.0) : 1.0 / (a - 1.0));
  s.a2 = 1.0;
  s.a3 = std::sqrt(r) * std::sqrt(2.0 / (9.0 * pi)) * std::pow(a + 1.0, 1.5) / (a + 5.0 / 3.0) / d0;
  s.a4 = r * (a + 1.0) * (a + 1.0) / (4.0 * pi * (a + 2.0) * d0 * d0);
  return to_convention(s, surface, convention);
}

ApertureSums to_convention(const ApertureSums& s, const SurfaceGeometry& surface, Convention target) {
  if (target == Convention::paper_integral) return s;
  const double lam = surface.wavelength;
  ApertureSums out = s;
  out.a1 = s.a1 / lam;
  out.a3 = s.a3 * lam;
  out.a4 = s.a4 * lam * lam;
  return out;
}

double plane_exterior_integral(const FeedGeometry& feed, double p, double half_side) {
  feed.validate();
  const double d0 = feed.d0, L = half_side;
  const double s = 0.5 * p * (feed.alpha + 3.0);
  if (!(s > 1.0)) throw InvalidAlpha("plane_exterior_integral: integral of omega^p diverges");
  const double kp = std::pow((feed.alpha + 1.0) / (2.0 * pi * d0 * d0), p);
  const auto radial = [&](double r) { return kp * std::pow(1.0 + r * r / (d0 * d0), -s); };

  // Beyond the circumscribed circle every direction is outside the square.
  const double R = std::sqrt(2.0) * L;
  const double outer = pi * kp * d0 * d0 * std::pow(1.0 + R * R / (d0 * d0), 1.0 - s) / (s - 1.0);

  // Between the inscribed and circumscribed circles the exterior arc is
  // 8 acos(L / r); substitute r = L sec(phi) so the arc is 8 phi.
  const auto corner = [&](double phi) {
    const double sec = 1.0 / std::cos(phi);
    return 8.0 * phi * radial(L * sec) * L * L * sec * sec * std::tan(phi);
  };
  const double c16 = integrate_line(corner, 0.0, pi / 4.0, gauss_legendre(16));
  const double c32 = integrate_line(corner, 0.0, pi / 4.0, gauss_legendre(32));
  if (!(std::abs(c16 - c32) <= kQuadratureRelTol * std::abs(c32) + 1e-300)) {
    throw QuadratureNotConverged("plane_exterior_integral: corner term did not converge");
  }
  return outer + c32;
}

ApertureSums aperture_sums_plane_numeric(const SurfaceGeometry& surface, const FeedGeometry& feed,
                                         double half_side) {
  surface.validate();
  feed.validate();
  const double L = half_side > 0.0 ? half_side : 20.0 * feed.d0;
  auto raw = integrate_graded<4>(density_powers(feed), Rect{-L, L, -L, L}, feed.d0, "aperture_sums_plane_numeric");
  for (int k = 0; k < 4; ++k) raw[k] += plane_exterior_integral(feed, 0.5 * (k + 1), L);
  return normalize(raw, surface.cell_ratio(), ApertureForm::infinite_plane);
}

}  // namespace iosnoma
