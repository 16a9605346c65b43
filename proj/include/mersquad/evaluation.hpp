#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mersquad/dataset.hpp"
#include "mersquad/quadratic.hpp"
#include "mersquad/regression.hpp"

namespace mersquad {

enum class MatchClass { Exact, Close, Miss };

std::string_view to_string(MatchClass c);

inline constexpr double kDefaultThreshold = 0.1;
inline constexpr std::string_view kExpModelName = "exp";

/// Models participating in an evaluation. Quadratics are classified by d;
/// the exponential model only by exact equality.
struct ModelSet {
  std::vector<QuadraticModel> quadratics;
  std::optional<ExpModel> exponential;

  /// euler, quad-n2p1, quad-n2pn17 and the published exponential model.
  static ModelSet standard();
  /// Builds a set from names: euler, quad-n2p1, quad-n2pn17, exp.
  static ModelSet from_names(const std::vector<std::string>& names, const ExpModel& exp_model);

  std::vector<std::string> names() const;
};

struct ModelEntry {
  std::string model;
  std::optional<long double> n_exact;     // quadratics only
  std::optional<std::uint64_t> n_closest; // quadratics only
  std::optional<double> d;                // quadratics only
  std::uint64_t predicted = 0;
  std::uint64_t abs_diff = 0;
  MatchClass match = MatchClass::Miss;
  std::optional<std::string> error;       // set when the model cannot evaluate p
};

struct PredictionRow {
  int x = 0;
  std::uint64_t p_actual = 0;
  std::vector<ModelEntry> entries;

  /// Entry for the named model, or nullptr.
  const ModelEntry* find(std::string_view model) const;
};

struct ModelSummary {
  std::string model;
  std::size_t evaluated = 0; // rows without a domain error
  std::size_t exact_count = 0;
  std::size_t close_count = 0;
  double mae = 0;
};

struct EvaluationReport {
  int x_lo = 0;
  int x_hi = 0;
  double threshold = kDefaultThreshold;
  std::vector<PredictionRow> rows;
  std::vector<ModelSummary> summaries;

  const ModelSummary* summary(std::string_view model) const;
};

/// Classifies one exponent against every model in the set.
PredictionRow evaluate_exponent(int x, std::uint64_t p, const ModelSet& models, double threshold);

/// One row per record in [x_lo, x_hi] plus per-model summaries.
EvaluationReport evaluate_range(const Dataset& ds, int x_lo, int x_hi, const ModelSet& models,
                                double threshold, unsigned threads = 1);

/// Euler only, threshold 0: counts exponents that are exactly n^2 + n + 41.
EvaluationReport integer_only_mode(const Dataset& ds, int x_lo, int x_hi);

/// 1 - (exact + close) / rows for the given model. Throws on an empty report.
double search_reduction(const EvaluationReport& report, std::string_view model = "euler");

}  // namespace mersquad
