#include "mersquad/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "mersquad/errors.hpp"

namespace mersquad {

namespace {

std::uint64_t abs_difference(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

ModelEntry quadratic_entry(const QuadraticModel& m, std::uint64_t p, double threshold) {
  ModelEntry e;
  e.model = m.name;
  try {
    const RootSolution sol = invert(m, p);
    e.n_exact = sol.n_exact;
    e.n_closest = sol.n_closest;
    e.d = sol.d;
    e.predicted = evaluate(m, sol.n_closest);
    e.abs_diff = abs_difference(p, e.predicted);
    if (e.abs_diff == 0) {
      e.match = MatchClass::Exact;
    } else if (sol.d < threshold) {
      e.match = MatchClass::Close;
    }
  } catch (const DomainError& err) {
    e.error = err.what();
  }
  return e;
}

}  // namespace

std::string_view to_string(MatchClass c) {
  switch (c) {
    case MatchClass::Exact: return "exact";
    case MatchClass::Close: return "close";
    case MatchClass::Miss: return "miss";
  }
  return "unknown";
}

ModelSet ModelSet::standard() {
  return {{QuadraticModel::euler(), QuadraticModel::n2_plus_1(), QuadraticModel::n2_plus_n_17()},
          published_model()};
}

ModelSet ModelSet::from_names(const std::vector<std::string>& names, const ExpModel& exp_model) {
  ModelSet set;
  for (const auto& name : names) {
    if (name == "euler") {
      set.quadratics.push_back(QuadraticModel::euler());
    } else if (name == "quad-n2p1") {
      set.quadratics.push_back(QuadraticModel::n2_plus_1());
    } else if (name == "quad-n2pn17") {
      set.quadratics.push_back(QuadraticModel::n2_plus_n_17());
    } else if (name == kExpModelName) {
      set.exponential = exp_model;
    } else {
      throw ValidationError(fmt::format("unknown model '{}'", name));
    }
  }
  return set;
}

std::vector<std::string> ModelSet::names() const {
  std::vector<std::string> out;
  for (const auto& q : quadratics) out.push_back(q.name);
  if (exponential) out.emplace_back(kExpModelName);
  return out;
}

const ModelEntry* PredictionRow::find(std::string_view model) const {
  for (const auto& e : entries) {
    if (e.model == model) return &e;
  }
  return nullptr;
}

const ModelSummary* EvaluationReport::summary(std::string_view model) const {
  for (const auto& s : summaries) {
    if (s.model == model) return &s;
  }
  return nullptr;
}

PredictionRow evaluate_exponent(int x, std::uint64_t p, const ModelSet& models, double threshold) {
  PredictionRow row;
  row.x = x;
  row.p_actual = p;
  for (const auto& q : models.quadratics) row.entries.push_back(quadratic_entry(q, p, threshold));
  if (models.exponential) {
    ModelEntry e;
    e.model = std::string(kExpModelName);
    try {
      e.predicted = predict(*models.exponential, x);
      e.abs_diff = abs_difference(p, e.predicted);
      e.match = e.abs_diff == 0 ? MatchClass::Exact : MatchClass::Miss;
    } catch (const std::overflow_error& err) {
      e.error = err.what();
    }
    row.entries.push_back(std::move(e));
  }
  return row;
}

EvaluationReport evaluate_range(const Dataset& ds, int x_lo, int x_hi, const ModelSet& models,
                                double threshold, unsigned threads) {
  const Dataset sub = select_range(ds, x_lo, x_hi);
  EvaluationReport report;
  report.x_lo = x_lo;
  report.x_hi = x_hi;
  report.threshold = threshold;
  report.rows.resize(sub.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < sub.size(); i = next.fetch_add(1)) {
      const auto& r = sub.records()[i];
      report.rows[i] = evaluate_exponent(r.index, r.exponent, models, threshold);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(threads, 1u); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& name : models.names()) {
    ModelSummary s;
    s.model = name;
    double total = 0;
    for (const auto& row : report.rows) {
      const ModelEntry* e = row.find(name);
      if (e == nullptr || e->error) continue;
      ++s.evaluated;
      total += static_cast<double>(e->abs_diff);
      if (e->match == MatchClass::Exact) ++s.exact_count;
      if (e->match == MatchClass::Close) ++s.close_count;
    }
    s.mae = s.evaluated > 0 ? total / static_cast<double>(s.evaluated) : 0.0;
    report.summaries.push_back(std::move(s));
  }
  return report;
}

EvaluationReport integer_only_mode(const Dataset& ds, int x_lo, int x_hi) {
  ModelSet euler_only;
  euler_only.quadratics.push_back(QuadraticModel::euler());
  return evaluate_range(ds, x_lo, x_hi, euler_only, 0.0);
}

double search_reduction(const EvaluationReport& report, std::string_view model) {
  if (report.rows.empty()) throw DomainError("search_reduction: empty report");
  const ModelSummary* s = report.summary(model);
  if (s == nullptr) {
    throw DomainError(fmt::format("search_reduction: model '{}' not in report", model));
  }
  const double matched = static_cast<double>(s->exact_count + s->close_count);
  return 1.0 - matched / static_cast<double>(report.rows.size());
}

}  // namespace mersquad
