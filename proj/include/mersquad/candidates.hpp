#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mersquad/regression.hpp"

namespace mersquad {

/// A scanned n whose Euler value C(n) = n^2 + n + 41 is prime.
struct Candidate {
  std::uint64_t n = 0;
  std::uint64_t c_value = 0;
  bool prime = false;
  bool in_window = true;
  std::optional<double> d_candidate;   // distance to the nearest index target root
  std::optional<int> assigned_index;   // index whose target root is nearest
  std::vector<std::string> flags;

  bool operator==(const Candidate&) const = default;
};

struct ScanConfig {
  std::uint64_t n_lo = 362;
  std::uint64_t n_hi = 35000;
  double d_threshold = 0.1;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> window =
      std::pair<std::uint64_t, std::uint64_t>{140'000'000, 200'000'000};
  std::vector<int> indices{53, 54, 55, 56, 57};
  ExpModel projection_model = published_model();
  unsigned threads = 1;

  /// Throws ValidationError on n_lo > n_hi or a malformed window.
  void validate() const;
};

/// Where an exponential model places a prospective index on the Euler curve.
struct IndexTarget {
  int index = 0;
  std::uint64_t target_p = 0;  // predict(model, index)
  long double n_hat = 0;       // invert(euler, target_p).n_exact
};

/// The candidate chosen for one prospective index.
struct Selection {
  IndexTarget target;
  Candidate candidate;
  double d = 0;          // |n_hat - candidate.n|
  bool relaxed = false;  // no in-window candidate had d < threshold
};

/// Outcome of re-evaluating one published candidate row.
struct PublishedCandidateCheck {
  int index = 0;
  std::uint64_t n = 0;
  std::uint64_t published_c_value = 0;
  std::uint64_t c_value = 0;
  bool prime_miller_rabin = false;
  bool prime_trial_division = false;
  double published_d = 0;
  bool divergent = false;  // c_value != published_c_value
};

/// Every n in [n_lo, n_hi] with C(n) prime, ascending by n. Output does not
/// depend on cfg.threads.
std::vector<Candidate> scan(const ScanConfig& cfg);

std::vector<IndexTarget> index_targets(const ExpModel& model, const std::vector<int>& indices);

/// Annotates each candidate with the index whose target root lies nearest
/// and that distance. An empty index list leaves the candidates unchanged.
std::vector<Candidate> assign_deviation(std::vector<Candidate> cands, const ExpModel& model,
                                        const std::vector<int>& indices);

/// One selection per index in cfg.indices: the in-window candidate nearest
/// to that index's target root. Flagged relaxed when that distance is not
/// below cfg.d_threshold. Throws ValidationError if nothing is in the window.
std::vector<Selection> select_top(const std::vector<Candidate>& cands, const ScanConfig& cfg);

/// Recomputes C(n) and primality (both oracles) for the published rows.
std::vector<PublishedCandidateCheck> check_published_candidates();

/// CSV with header n,c_value,prime,d_candidate,assigned_index,in_window,flags.
std::string candidates_csv(const std::vector<Candidate>& cands);
std::string candidates_json(const std::vector<Candidate>& cands);

std::string selections_csv(const std::vector<Selection>& sel);
std::string published_candidates_csv(const std::vector<PublishedCandidateCheck>& checks);

}  // namespace mersquad
