#include "mersquad/regression.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "mersquad/errors.hpp"

namespace mersquad {

ExpModel fit_points(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DomainError("fit: x and y lengths differ");
  const std::size_t n = xs.size();
  if (n < 3) throw DomainError(fmt::format("fit: need >= 3 points, got {}", n));

  std::vector<double> ly(n);
  double mean_x = 0, mean_ly = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ys[i] > 0)) throw DomainError("fit: y values must be positive");
    ly[i] = std::log(ys[i]);
    mean_x += xs[i];
    mean_ly += ly[i];
  }
  mean_x /= static_cast<double>(n);
  mean_ly /= static_cast<double>(n);

  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ly[i] - mean_ly;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw DomainError("fit: x values are all equal");

  ExpModel m;
  m.label = "fitted";
  m.rate = sxy / sxx;
  const double intercept = mean_ly - m.rate * mean_x;
  m.amplitude = std::exp(intercept);

  double ss_res_log = 0, ss_res_lin = 0, ss_tot_lin = 0, mean_y = 0;
  for (double y : ys) mean_y += y;
  mean_y /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fitted_log = intercept + m.rate * xs[i];
    ss_res_log += (ly[i] - fitted_log) * (ly[i] - fitted_log);
    const double r = ys[i] - std::exp(fitted_log);
    ss_res_lin += r * r;
    ss_tot_lin += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  // A perfectly constant ln y leaves R^2 undefined; report 1 for a perfect fit.
  m.r_squared_log = syy > 0 ? 1.0 - ss_res_log / syy : 1.0;
  m.r_squared_linear = ss_tot_lin > 0 ? 1.0 - ss_res_lin / ss_tot_lin : 1.0;
  return m;
}

ExpModel fit(const Dataset& ds, int x_lo, int x_hi) {
  const Dataset sub = select_range(ds, x_lo, x_hi);
  std::vector<double> xs, ys;
  for (const auto& r : sub.records()) {
    xs.push_back(r.index);
    ys.push_back(static_cast<double>(r.exponent));
  }
  ExpModel m = fit_points(xs, ys);
  m.fit_range = {x_lo, x_hi};
  return m;
}

std::uint64_t predict(const ExpModel& m, int x) {
  const double y = m.amplitude * std::exp(m.rate * x);
  if (!(y >= 0) || y >= 9.0e18) throw std::overflow_error("predict: value out of range");
  return static_cast<std::uint64_t>(std::llround(y));
}

ExpModel published_model() {
  ExpModel m;
  m.amplitude = 11111.14;
  m.rate = 0.1787;
  m.label = "published";
  return m;
}

}  // namespace mersquad
