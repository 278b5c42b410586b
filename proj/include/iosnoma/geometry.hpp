#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace iosnoma {

// Uniform rectangular planar array in the xoy plane, centered on the origin.
struct SurfaceGeometry {
  int n_x = 1;
  int n_y = 1;
  double delta_x = 0.075;    // m
  double delta_y = 0.075;    // m
  double wavelength = 0.3;   // m

  std::size_t size() const { return static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y); }
  double half_width_x() const { return 0.5 * n_x * delta_x; }
  double half_width_y() const { return 0.5 * n_y * delta_y; }
  // delta_x * delta_y / wavelength^2
  double cell_ratio() const { return delta_x * delta_y / (wavelength * wavelength); }

  void validate() const;
};

// Feed on the surface normal at (0, 0, -d0) with gain 2(alpha + 1).
struct FeedGeometry {
  double d0 = 3.0;     // m
  double alpha = 2.0;

  void validate() const;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct ElementGrid {
  std::vector<Point2> centers;   // row-major: index = j * n_x + i
  std::vector<double> energies;  // captured energy fraction per element

  std::size_t size() const { return centers.size(); }
};

// Which functional family an ApertureSums value belongs to.
enum class ApertureForm { discrete, finite_integral, infinite_plane };

// Normalization of the A-functionals. The discrete sums sum_n gamma_n^(k/2)
// carry (dx*dy)^((k-2)/2); the integral forms printed with the closed-form
// limits carry (dx*dy/lambda^2)^((k-2)/2). They differ by lambda^(k-2).
enum class Convention { discrete, paper_integral };

// The plane integral of sqrt(omega) is printed with (alpha - 1) as a factor;
// evaluating the integral gives it as a divisor. Equal at alpha = 2.
enum class A1Variant { as_printed, re_derived };

struct ApertureSums {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  ApertureForm form = ApertureForm::discrete;

  double operator[](int k) const;
};

std::string_view to_string(ApertureForm f);
std::string_view to_string(Convention c);
std::string_view to_string(A1Variant v);
Convention parse_convention(std::string_view s);
A1Variant parse_a1_variant(std::string_view s);

std::vector<Point2> element_centers(const SurfaceGeometry& surface);

double feed_distance(Point2 center, const FeedGeometry& feed);

// Normalized feed power density omega(x, y) on the surface plane; integrates
// to one over the whole plane.
double feed_density(double x, double y, const FeedGeometry& feed);

// Energy captured by the element centered at `center` (8x8 Gauss-Legendre,
// cross-checked against 16x16).
double element_energy(Point2 center, const SurfaceGeometry& surface, const FeedGeometry& feed);

// Near-field feed-to-element coefficient sqrt(gamma_n) exp(-j 2 pi d_n / lambda).
std::complex<double> feed_channel(Point2 center, const SurfaceGeometry& surface, const FeedGeometry& feed);

ElementGrid make_element_grid(const SurfaceGeometry& surface, const FeedGeometry& feed);

// a_k = sum_n gamma_n^(k/2).
ApertureSums aperture_sums_discrete(const ElementGrid& grid);

// a_k = (dx dy / lambda^2)^((k-2)/2) * integral over the surface region of omega^(k/2).
ApertureSums aperture_sums_integral(const SurfaceGeometry& surface, const FeedGeometry& feed);

// Closed-form whole-plane limits. Throws InvalidAlpha for alpha <= 1.
// Convention::discrete rescales the printed (paper_integral) values by lambda^(k-2).
ApertureSums aperture_sums_infinite(const SurfaceGeometry& surface, const FeedGeometry& feed,
                                    A1Variant a1_variant = A1Variant::as_printed,
                                    Convention convention = Convention::paper_integral);

// Numerical whole-plane functionals in the paper_integral normalization:
// graded quadrature over the square |x|, |y| <= half_side plus the exact
// contribution of the exterior (radial integral with a corner correction).
// half_side defaults to 20 * d0.
ApertureSums aperture_sums_plane_numeric(const SurfaceGeometry& surface, const FeedGeometry& feed,
                                         double half_side = 0.0);

// Exterior of the square |x|, |y| <= half_side for the integrand omega^p.
double plane_exterior_integral(const FeedGeometry& feed, double p, double half_side);

// Rescale between conventions: discrete a_k = lambda^(k-2) * integral a_k.
ApertureSums to_convention(const ApertureSums& integral_form, const SurfaceGeometry& surface, Convention target);

}  // namespace iosnoma
