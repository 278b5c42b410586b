#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "iosnoma/errors.hpp"
#include "iosnoma/summation.hpp"

namespace iosnoma {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Supported orders: 8, 16, 32.
const GaussRule& gauss_legendre(unsigned order);

struct Rect {
  double x0, x1, y0, y1;
  double area() const { return (x1 - x0) * (y1 - y0); }
};

// Relative agreement required between the 8x8 and 16x16 tensor rules.
inline constexpr double kQuadratureRelTol = 1e-9;

// Tensor-product rule over a rectangle for a vector-valued integrand
// f(x, y) -> std::array<double, K>.
template <std::size_t K, class F>
std::array<double, K> integrate_tensor(const F& f, const Rect& r, const GaussRule& rule) {
  const double cx = 0.5 * (r.x0 + r.x1), hx = 0.5 * (r.x1 - r.x0);
  const double cy = 0.5 * (r.y0 + r.y1), hy = 0.5 * (r.y1 - r.y0);
  std::array<CompensatedSum, K> acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = cx + hx * rule.nodes[i];
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double y = cy + hy * rule.nodes[j];
      const double w = rule.weights[i] * rule.weights[j];
      const std::array<double, K> v = f(x, y);
      for (std::size_t k = 0; k < K; ++k) acc[k] += w * v[k];
    }
  }
  std::array<double, K> out{};
  for (std::size_t k = 0; k < K; ++k) out[k] = acc[k].value() * hx * hy;
  return out;
}

template <class F>
double integrate_line(const F& f, double a, double b, const GaussRule& rule) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  CompensatedSum acc;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(c + h * rule.nodes[i]);
  return acc.value() * h;
}

namespace detail {

template <std::size_t K>
void check_converged(const std::array<double, K>& coarse, const std::array<double, K>& fine,
                     const char* what) {
  for (std::size_t k = 0; k < K; ++k) {
    const double scale = std::abs(fine[k]);
    if (!(std::abs(coarse[k] - fine[k]) <= kQuadratureRelTol * scale)) {
      throw QuadratureNotConverged(std::string(what) + ": 8x8 and 16x16 Gauss-Legendre disagree (component " +
                                   std::to_string(k) + ", " + std::to_string(coarse[k]) + " vs " +
                                   std::to_string(fine[k]) + ")");
    }
  }
}

}  // namespace detail

// 8x8 rule, verified against 16x16.
template <std::size_t K, class F>
std::array<double, K> integrate_rect_checked(const F& f, const Rect& r, const char* what = "rectangle") {
  const auto coarse = integrate_tensor<K>(f, r, gauss_legendre(8));
  const auto fine = integrate_tensor<K>(f, r, gauss_legendre(16));
  detail::check_converged<K>(coarse, fine, what);
  return coarse;
}

// Breakpoints covering [lo, hi] such that every panel is at most
// 0.25 * max(scale, |x|) wide. Suited to integrands that vary on the length
// scale max(scale, distance from the origin).
std::vector<double> graded_breakpoints(double lo, double hi, double scale);

// Panelled version of integrate_rect_checked for regions much larger than
// `scale`. The 8x8/16x16 comparison is applied to the panel totals.
template <std::size_t K, class F>
std::array<double, K> integrate_graded(const F& f, const Rect& r, double scale, const char* what = "region") {
  const std::vector<double> bx = graded_breakpoints(r.x0, r.x1, scale);
  const std::vector<double> by = graded_breakpoints(r.y0, r.y1, scale);
  std::array<CompensatedSum, K> coarse_acc{}, fine_acc{};
  for (std::size_t i = 0; i + 1 < bx.size(); ++i) {
    for (std::size_t j = 0; j + 1 < by.size(); ++j) {
      const Rect panel{bx[i], bx[i + 1], by[j], by[j + 1]};
      const auto c = integrate_tensor<K>(f, panel, gauss_legendre(8));
      const auto fi = integrate_tensor<K>(f, panel, gauss_legendre(16));
      for (std::size_t k = 0; k < K; ++k) {
        coarse_acc[k] += c[k];
        fine_acc[k] += fi[k];
      }
    }
  }
  std::array<double, K> coarse{}, fine{};
  for (std::size_t k = 0; k < K; ++k) {
    coarse[k] = coarse_acc[k].value();
    fine[k] = fine_acc[k].value();
  }
  detail::check_converged<K>(coarse, fine, what);
  return coarse;
}

}  // namespace iosnoma
