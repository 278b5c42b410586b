#include "iosnoma/quadrature.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss.hpp>

namespace iosnoma {

namespace {

template <unsigned N>
GaussRule make_rule() {
  using boost::math::quadrature::gauss;
  // Boost stores the non-negative half of the symmetric rule.
  const auto& x = gauss<double, N>::abscissa();
  const auto& w = gauss<double, N>::weights();
  GaussRule rule;
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back(x[i]);
    rule.weights.push_back(w[i]);
    if (x[i] != 0.0) {
      rule.nodes.push_back(-x[i]);
      rule.weights.push_back(w[i]);
    }
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(unsigned order) {
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r16 = make_rule<16>();
  static const GaussRule r32 = make_rule<32>();
  switch (order) {
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    default: throw InvalidArgument("gauss_legendre: unsupported order " + std::to_string(order));
  }
}

std::vector<double> graded_breakpoints(double lo, double hi, double scale) {
  if (!(hi > lo) || !(scale > 0.0)) throw InvalidArgument("graded_breakpoints: empty interval or bad scale");
  const auto step = [scale](double x) { return 0.25 * std::max(scale, std::abs(x)); };

  std::vector<double> pts{lo, hi};
  for (double x = 0.0; x < hi; x += step(x)) {
    if (x > lo) pts.push_back(x);
  }
  for (double x = 0.0; x > lo; x -= step(x)) {
    if (x < hi) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());

  // Drop slivers created where the outward walk lands just short of an end.
  std::vector<double> out{pts.front()};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double tiny = 1e-6 * step(pts[i]);
    if (pts[i] - out.back() > tiny) {
      out.push_back(pts[i]);
    } else if (i + 1 == pts.size()) {
      out.back() = pts[i];
    }
  }
  if (out.size() < 2) out = {lo, hi};
  out.back() = hi;
  return out;
}

}  // namespace iosnoma
