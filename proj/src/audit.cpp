#include "mersquad/audit.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "mersquad/evaluation.hpp"
#include "mersquad/published.hpp"
#include "mersquad/quadratic.hpp"
#include "mersquad/regression.hpp"

namespace mersquad {

namespace {

ClaimCheck real_claim(std::string claim, double printed, double recomputed, int decimals,
                      std::string note) {
  ClaimCheck c;
  c.claim = std::move(claim);
  c.published = fixed(printed, decimals);
  c.recomputed = fixed(recomputed, decimals);
  c.consistent = c.published == c.recomputed;
  c.note = std::move(note);
  return c;
}

ClaimCheck count_claim(std::string claim, std::uint64_t printed, std::uint64_t recomputed,
                       std::string note) {
  ClaimCheck c;
  c.claim = std::move(claim);
  c.published = std::to_string(printed);
  c.recomputed = std::to_string(recomputed);
  c.consistent = printed == recomputed;
  c.note = std::move(note);
  return c;
}

}  // namespace

AuditReport audit(const Dataset& ds) {
  AuditReport out;
  const ModelSet models = ModelSet::standard();

  const auto first_rows = evaluate_range(ds, 30, 35, models, kDefaultThreshold);
  const auto late = evaluate_range(ds, 30, 52, models, kDefaultThreshold);
  const auto known = evaluate_range(ds, 10, 52, models, kDefaultThreshold);
  const auto integer_only = integer_only_mode(ds, 10, 52);

  double printed_diff_sum = 0;
  for (const auto& r : published::kComparisonRows) printed_diff_sum += r.euler_diff;
  const double printed_diff_mean = printed_diff_sum / published::kComparisonRows.size();

  auto& checks = out.checks;
  checks.push_back(real_claim("euler_mae_30_35_printed_diffs", printed_diff_mean,
                              first_rows.summary("euler")->mae, 2,
                              "mean of the six printed euler diffs vs recomputation"));
  checks.push_back(real_claim("euler_mae_30_52_text", published::kEulerMaeText,
                              late.summary("euler")->mae, 1, "MAE stated in the running text"));
  checks.push_back(real_claim("euler_mae_30_52_table_note", published::kEulerMaeTableNote,
                              late.summary("euler")->mae, 1, "MAE stated under the comparison table"));
  checks.push_back(real_claim("n2_plus_1_mae_30_52", published::kN2Plus1Mae,
                              late.summary("quad-n2p1")->mae, 1, ""));
  checks.push_back(real_claim("n2_plus_n_17_mae_30_52", published::kN2PlusN17Mae,
                              late.summary("quad-n2pn17")->mae, 1, ""));
  checks.push_back(real_claim("exp_mae_30_52_table_note", published::kExpMaeTableNote,
                              late.summary("exp")->mae, 0, ""));
  checks.push_back(real_claim("exp_mae_30_52_text", published::kExpMaeText,
                              late.summary("exp")->mae, 0, ""));
  checks.push_back(count_claim("exact_matches_10_52", published::kExactMatches,
                               known.summary("euler")->exact_count,
                               "exact = p equals n^2 + n + 41 for integer n"));
  checks.push_back(count_claim("integer_only_matches_10_52", published::kIntegerOnlyMatches,
                               integer_only.summary("euler")->exact_count, ""));
  checks.push_back(count_claim("close_matches_10_52", published::kCloseMatches,
                               known.summary("euler")->close_count,
                               fmt::format("close = not exact and d < {}", kDefaultThreshold)));
  checks.push_back(real_claim("search_reduction_10_52", published::kSearchReduction,
                              search_reduction(known), 2,
                              "1 - (exact + close) / rows"));

  const auto full_fit = fit(ds, 1, 52);
  const auto known_fit = fit(ds, 10, 52);
  checks.push_back(real_claim("exp_r_squared_log_1_52", published::kExpRSquared,
                              *full_fit.r_squared_log, 3, "fit range not stated in the source"));
  checks.push_back(real_claim("exp_r_squared_log_10_52", published::kExpRSquared,
                              *known_fit.r_squared_log, 3, "fit range not stated in the source"));
  const auto published_exp = published_model();
  checks.push_back(count_claim("exp_prediction_x30", published::kComparisonRows[0].exp_prediction,
                               predict(published_exp, 30),
                               "direct evaluation of 11111.14 * e^(0.1787 * 30)"));

  for (const auto& row : known.rows) {
    const ModelEntry* e = row.find("euler");
    if (e->match == MatchClass::Exact) out.exact_indices.push_back(row.x);
    if (e->match == MatchClass::Close) out.close_indices.push_back(row.x);
  }

  for (int x : published::kClaimedExactIndices) {
    ExactClaimCheck c;
    c.x = x;
    c.p = ds.at_index(x).exponent;
    c.discriminant = 4 * c.p - 163;
    c.isqrt_discriminant = isqrt(c.discriminant);
    c.perfect_square = c.isqrt_discriminant * c.isqrt_discriminant == c.discriminant;
    out.claimed_exact.push_back(c);
  }
  return out;
}

std::string emit_audit(const AuditReport& report, Format format) {
  auto join = [](const std::vector<int>& xs) {
    std::string s;
    for (int x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
  };

  if (format == Format::Json) {
    using json = nlohmann::ordered_json;
    json doc;
    json checks = json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"claim", c.claim},
                        {"published", c.published},
                        {"recomputed", c.recomputed},
                        {"consistent", c.consistent},
                        {"note", c.note}});
    }
    doc["checks"] = std::move(checks);
    doc["exact_indices"] = report.exact_indices;
    doc["close_indices"] = report.close_indices;
    json claimed = json::array();
    for (const auto& c : report.claimed_exact) {
      claimed.push_back({{"x", c.x},
                         {"p", c.p},
                         {"discriminant", c.discriminant},
                         {"isqrt", c.isqrt_discriminant},
                         {"perfect_square", c.perfect_square},
                         {"flag", c.perfect_square ? "" : "claimed-exact-not-perfect-square"}});
    }
    doc["claimed_exact"] = std::move(claimed);
    return doc.dump(2) + '\n';
  }

  std::string out;
  if (format == Format::Markdown) {
    out += "| claim | published | recomputed | consistent | note |\n|---|---|---|---|---|\n";
    for (const auto& c : report.checks) {
      out += fmt::format("| {} | {} | {} | {} | {} |\n", c.claim, c.published, c.recomputed,
                         c.consistent ? "yes" : "no", c.note);
    }
    out += fmt::format("\nExact indices (x=10..52): {}\n", join(report.exact_indices));
    out += fmt::format("Close indices (x=10..52): {}\n\n", join(report.close_indices));
    out += "| x | p | 4p-163 | isqrt | perfect_square | flag |\n|---|---|---|---|---|---|\n";
    for (const auto& c : report.claimed_exact) {
      out += fmt::format("| {} | {} | {} | {} | {} | {} |\n", c.x, c.p, c.discriminant,
                         c.isqrt_discriminant, c.perfect_square ? "yes" : "no",
                         c.perfect_square ? "" : "claimed-exact-not-perfect-square");
    }
    return out;
  }

  out += "section,claim,published,recomputed,consistent,note\n";
  for (const auto& c : report.checks) {
    out += fmt::format("check,{},{},{},{},{}\n", c.claim, c.published, c.recomputed,
                       c.consistent ? "true" : "false", c.note);
  }
  out += fmt::format("indices,exact_10_52,,{},,\n", join(report.exact_indices));
  out += fmt::format("indices,close_10_52,,{},,\n", join(report.close_indices));
  for (const auto& c : report.claimed_exact) {
    out += fmt::format("claimed_exact,x={},exact,{},{},4p-163={} isqrt={}{}\n", c.x,
                       c.perfect_square ? "perfect-square" : "not-perfect-square",
                       c.perfect_square ? "true" : "false", c.discriminant,
                       c.isqrt_discriminant,
                       c.perfect_square ? "" : " claimed-exact-not-perfect-square");
  }
  return out;
}

}  // namespace mersquad
