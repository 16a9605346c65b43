#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "mersquad/dataset.hpp"

namespace mersquad {

/// Exponential growth model p ~ amplitude * exp(rate * x).
struct ExpModel {
  double amplitude = 1.0;
  double rate = 0.0;
  std::string label;                          // "fitted" or "published"
  std::optional<std::pair<int, int>> fit_range;
  std::optional<double> r_squared_log;        // OLS R^2 of ln p on x
  std::optional<double> r_squared_linear;     // 1 - SS_res/SS_tot on raw p; may be negative
};

/// Log-linear OLS: ln y = ln a + b x. Requires >= 3 points with y > 0 and
/// at least two distinct x; throws DomainError otherwise.
ExpModel fit_points(std::span<const double> xs, std::span<const double> ys);

/// fit_points over the records x_lo..x_hi of ds.
ExpModel fit(const Dataset& ds, int x_lo, int x_hi);

/// a * e^(b x) rounded to nearest, halves away from zero.
std::uint64_t predict(const ExpModel& m, int x);

/// The fixed model y = 11111.14 * e^(0.1787 x); R^2 fields are unset.
ExpModel published_model();

}  // namespace mersquad
