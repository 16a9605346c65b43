#include "mersquad/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "mersquad/errors.hpp"
#include "mersquad/primality.hpp"
#include "mersquad/published.hpp"
#include "mersquad/quadratic.hpp"
#include "mersquad/report.hpp"

namespace mersquad {

namespace {

std::vector<Candidate> scan_block(const ScanConfig& cfg, std::uint64_t lo, std::uint64_t hi) {
  const auto euler = QuadraticModel::euler();
  std::vector<Candidate> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const std::uint64_t c = evaluate(euler, n);
    if (!is_prime(c)) continue;
    Candidate cand;
    cand.n = n;
    cand.c_value = c;
    cand.prime = true;
    cand.in_window = !cfg.window || (c >= cfg.window->first && c <= cfg.window->second);
    out.push_back(std::move(cand));
  }
  return out;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) s += (s.empty() ? "" : ";") + f;
  return s;
}

}  // namespace

void ScanConfig::validate() const {
  if (n_lo > n_hi) {
    throw ValidationError(fmt::format("scan: n_lo={} exceeds n_hi={}", n_lo, n_hi));
  }
  if (window && (window->first == 0 || window->first > window->second)) {
    throw ValidationError(
        fmt::format("scan: window [{}, {}] is not ordered and positive", window->first,
                    window->second));
  }
  if (!(d_threshold >= 0)) throw ValidationError("scan: d threshold must be non-negative");
}

std::vector<Candidate> scan(const ScanConfig& cfg) {
  cfg.validate();
  const std::uint64_t count = cfg.n_hi - cfg.n_lo + 1;
  const std::uint64_t parts = std::clamp<std::uint64_t>(cfg.threads, 1, count);

  std::vector<std::vector<Candidate>> blocks(parts);
  std::vector<std::thread> pool;
  for (std::uint64_t i = 0; i < parts; ++i) {
    const std::uint64_t lo = cfg.n_lo + count * i / parts;
    const std::uint64_t hi = cfg.n_lo + count * (i + 1) / parts - 1;
    pool.emplace_back([&, i, lo, hi] { blocks[i] = scan_block(cfg, lo, hi); });
  }
  for (auto& t : pool) t.join();

  std::vector<Candidate> out;
  for (auto& b : blocks) std::move(b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<IndexTarget> index_targets(const ExpModel& model, const std::vector<int>& indices) {
  const auto euler = QuadraticModel::euler();
  std::vector<IndexTarget> targets;
  for (int x : indices) {
    IndexTarget t;
    t.index = x;
    t.target_p = predict(model, x);
    t.n_hat = invert(euler, t.target_p).n_exact;
    targets.push_back(t);
  }
  return targets;
}

std::vector<Candidate> assign_deviation(std::vector<Candidate> cands, const ExpModel& model,
                                        const std::vector<int>& indices) {
  if (indices.empty()) return cands;
  const auto targets = index_targets(model, indices);
  for (auto& c : cands) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : targets) {
      const auto d = static_cast<double>(std::fabs(t.n_hat - static_cast<long double>(c.n)));
      if (d < best) {
        best = d;
        c.assigned_index = t.index;
      }
    }
    c.d_candidate = best;
  }
  return cands;
}

std::vector<Selection> select_top(const std::vector<Candidate>& cands, const ScanConfig& cfg) {
  if (cands.empty()) throw ValidationError("select_top: empty candidate pool");
  const auto in_window = [](const Candidate& c) { return c.in_window; };
  if (std::none_of(cands.begin(), cands.end(), in_window)) {
    throw ValidationError("select_top: no candidate lies inside the exponent window");
  }

  std::vector<Selection> out;
  for (const auto& target : index_targets(cfg.projection_model, cfg.indices)) {
    const Candidate* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) {
      if (!c.in_window) continue;
      const auto d = static_cast<double>(std::fabs(target.n_hat - static_cast<long double>(c.n)));
      if (d < best_d) {  // strict: ties keep the smaller n
        best_d = d;
        best = &c;
      }
    }
    Selection s;
    s.target = target;
    s.candidate = *best;
    s.d = best_d;
    s.relaxed = !(best_d < cfg.d_threshold);
    if (s.relaxed) s.candidate.flags.push_back("relaxed");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PublishedCandidateCheck> check_published_candidates() {
  const auto euler = QuadraticModel::euler();
  std::vector<PublishedCandidateCheck> out;
  for (const auto& row : published::kCandidateRows) {
    PublishedCandidateCheck c;
    c.index = row.index;
    c.n = row.n;
    c.published_c_value = row.c_value;
    c.published_d = row.d;
    c.c_value = evaluate(euler, row.n);
    c.prime_miller_rabin = is_prime(c.c_value);
    c.prime_trial_division = trial_division(c.c_value);
    c.divergent = c.c_value != c.published_c_value;
    out.push_back(c);
  }
  return out;
}

std::string candidates_csv(const std::vector<Candidate>& cands) {
  std::string out = "n,c_value,prime,d_candidate,assigned_index,in_window,flags\n";
  for (const auto& c : cands) {
    out += fmt::format("{},{},{},{},{},{},{}\n", c.n, c.c_value, c.prime ? "true" : "false",
                       c.d_candidate ? fixed(*c.d_candidate, 3) : "",
                       c.assigned_index ? std::to_string(*c.assigned_index) : "",
                       c.in_window ? "true" : "false", join_flags(c.flags));
  }
  return out;
}

std::string candidates_json(const std::vector<Candidate>& cands) {
  using json = nlohmann::ordered_json;
  json rows = json::array();
  for (const auto& c : cands) {
    json r;
    r["n"] = c.n;
    r["c_value"] = c.c_value;
    r["prime"] = c.prime;
    r["d_candidate"] = c.d_candidate ? json(std::round(*c.d_candidate * 1000) / 1000) : json();
    r["assigned_index"] = c.assigned_index ? json(*c.assigned_index) : json();
    r["in_window"] = c.in_window;
    r["flags"] = c.flags;
    rows.push_back(std::move(r));
  }
  return json{{"candidates", std::move(rows)}}.dump(2) + '\n';
}

std::string selections_csv(const std::vector<Selection>& sel) {
  std::string out = "index,target_p,n_hat,n,c_value,d,in_window,relaxed,flags\n";
  for (const auto& s : sel) {
    std::vector<std::string> flags = s.candidate.flags;
    flags.push_back("d-reconstructed");
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", s.target.index, s.target.target_p,
                       fixed(static_cast<double>(s.target.n_hat), 3), s.candidate.n,
                       s.candidate.c_value, fixed(s.d, 3), s.candidate.in_window ? "true" : "false",
                       s.relaxed ? "true" : "false", join_flags(flags));
  }
  return out;
}

std::string published_candidates_csv(const std::vector<PublishedCandidateCheck>& checks) {
  std::string out =
      "index,n,c_value,published_c_value,prime_miller_rabin,prime_trial_division,published_d,"
      "divergence\n";
  for (const auto& c : checks) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", c.index, c.n, c.c_value, c.published_c_value,
                       c.prime_miller_rabin ? "true" : "false",
                       c.prime_trial_division ? "true" : "false", fixed(c.published_d, 3),
                       c.divergent ? fmt::format("c_value:{}", c.published_c_value) : "");
  }
  return out;
}

}  // namespace mersquad
