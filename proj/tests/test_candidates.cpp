#include <gtest/gtest.h>

#include <cmath>

#include "mersquad/candidates.hpp"
#include "mersquad/errors.hpp"
#include "mersquad/primality.hpp"
#include "mersquad/quadratic.hpp"
#include "oracles.hpp"

using namespace mersquad;

namespace {

ScanConfig config(std::uint64_t lo, std::uint64_t hi) {
  ScanConfig cfg;
  cfg.n_lo = lo;
  cfg.n_hi = hi;
  return cfg;
}

Candidate make(std::uint64_t n, bool in_window = true) {
  Candidate c;
  c.n = n;
  c.c_value = n * n + n + 41;
  c.prime = true;
  c.in_window = in_window;
  return c;
}

}  // namespace

TEST(Candidates, EulerRangeIsAllPrime) {
  const auto cands = scan(config(0, 39));
  ASSERT_EQ(cands.size(), 40u);
  for (std::uint64_t n = 0; n < 40; ++n) {
    EXPECT_EQ(cands[n].n, n);
    EXPECT_TRUE(cands[n].prime);
  }
  EXPECT_TRUE(scan(config(40, 40)).empty());
}

TEST(Candidates, PublishedCandidateIsScreened) {
  const auto cands = scan(config(13190, 13210));
  const bool has_13200 =
      std::any_of(cands.begin(), cands.end(), [](const Candidate& c) { return c.n == 13200; });
  // 174253241 = 53 * 71 * 46307, so n = 13200 must not survive the scan.
  EXPECT_EQ(53ull * 71 * 46307, 174253241ull);
  EXPECT_FALSE(is_prime(174253241));
  EXPECT_FALSE(has_13200);
}

TEST(Candidates, ScanInvariants) {
  const auto cands = scan(config(0, 5000));
  std::uint64_t prev = 0;
  for (const auto& c : cands) {
    if (c.n > 0) EXPECT_GT(c.n, prev);
    prev = c.n;
    EXPECT_EQ(std::to_string(c.c_value), oracle::euler_decimal(c.n));
    EXPECT_EQ(c.c_value % 2, 1u);
    EXPECT_TRUE(trial_division(c.c_value));
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) EXPECT_NE(c.c_value % q, 0u);
    if (c.c_value > 41) EXPECT_NE(c.c_value % 41, 0u);
  }
  // C(n) = 0 mod 41 exactly when n = 0 or 40 mod 41; those n > 0 are absent.
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    const bool divisible = (n * n + n + 41) % 41 == 0;
    EXPECT_EQ(divisible, n % 41 == 0 || n % 41 == 40) << n;
    if (divisible && n > 0) {
      EXPECT_FALSE(std::any_of(cands.begin(), cands.end(), [n](const Candidate& c) { return c.n == n; }));
    }
  }
}

TEST(Candidates, CountMatchesNaiveRescan) {
  const auto cands = scan(ScanConfig{});
  std::size_t naive = 0;
  for (std::uint64_t n = 362; n <= 35000; ++n) naive += oracle::naive_prime(n * n + n + 41);
  EXPECT_EQ(cands.size(), naive);
  for (const auto& c : cands) ASSERT_EQ(is_prime(c.c_value), trial_division(c.c_value));
}

TEST(Candidates, ScanIsPartitionIndependent) {
  auto cfg = config(362, 12000);
  const auto base = scan(cfg);
  for (unsigned t : {2u, 3u, 7u, 16u}) {
    cfg.threads = t;
    EXPECT_EQ(scan(cfg), base) << t;
  }
  EXPECT_EQ(candidates_csv(base), candidates_csv(scan(config(362, 12000))));
}

TEST(Candidates, WindowMembership) {
  auto cfg = config(11830, 14145);
  for (const auto& c : scan(cfg)) {
    EXPECT_EQ(c.in_window, c.c_value >= 140'000'000 && c.c_value <= 200'000'000) << c.n;
  }
  cfg.window.reset();
  for (const auto& c : scan(cfg)) EXPECT_TRUE(c.in_window);
}

TEST(Candidates, ConfigValidation) {
  EXPECT_THROW(scan(config(10, 9)), ValidationError);
  auto cfg = config(0, 10);
  cfg.window = {{200, 100}};
  EXPECT_THROW(scan(cfg), ValidationError);
  cfg.window = {{0, 100}};
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Candidates, AssignDeviationExactTarget) {
  ExpModel constant;
  constant.amplitude = 10141;  // C(100)
  constant.rate = 0;
  const auto out = assign_deviation({make(99), make(100), make(101)}, constant, {53});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(*out[1].d_candidate, 0.0);
  EXPECT_EQ(*out[1].assigned_index, 53);
  EXPECT_EQ(*out[0].d_candidate, 1.0);
}

TEST(Candidates, AssignDeviationPicksNearestIndex) {
  // A model whose x=56 and x=57 targets invert near 14000.03 and 14500.04.
  const auto euler = QuadraticModel::euler();
  auto c_of = [](double n) { return n * n + n + 41; };
  const double p56 = c_of(14000.03), p57 = c_of(14500.04);
  ExpModel m;
  m.rate = std::log(p57 / p56);
  m.amplitude = p56 / std::exp(56 * m.rate);
  const auto out = assign_deviation({make(14000), make(14500)}, m, {55, 56, 57});
  EXPECT_EQ(*out[0].assigned_index, 56);
  EXPECT_NEAR(*out[0].d_candidate, 0.03, 1e-3);
  EXPECT_EQ(*out[1].assigned_index, 57);
  EXPECT_NEAR(*out[1].d_candidate, 0.04, 1e-3);
  EXPECT_NEAR(static_cast<double>(invert(euler, predict(m, 56)).n_exact), 14000.03, 1e-3);
}

TEST(Candidates, AssignDeviationWithoutIndices) {
  const std::vector<Candidate> in{make(5), make(6)};
  EXPECT_EQ(assign_deviation(in, published_model(), {}), in);
  EXPECT_FALSE(assign_deviation(in, published_model(), {})[0].d_candidate.has_value());
}

TEST(Candidates, SelectTop) {
  ExpModel constant;
  constant.amplitude = 10141;
  constant.rate = 0;
  ScanConfig cfg;
  cfg.projection_model = constant;
  cfg.indices = {53};

  auto sel = select_top({make(98), make(100, false), make(103)}, cfg);
  ASSERT_EQ(sel.size(), 1u);
  EXPECT_EQ(sel[0].candidate.n, 98u);  // 100 is outside the window
  EXPECT_TRUE(sel[0].relaxed);
  EXPECT_EQ(sel[0].d, 2.0);

  sel = select_top({make(100)}, cfg);
  EXPECT_FALSE(sel[0].relaxed);
  EXPECT_EQ(sel[0].d, 0.0);

  EXPECT_THROW(select_top({}, cfg), ValidationError);
  EXPECT_THROW(select_top({make(100, false)}, cfg), ValidationError);
}

TEST(Candidates, PublishedRows) {
  const auto checks = check_published_candidates();
  ASSERT_EQ(checks.size(), 5u);
  for (const auto& c : checks) {
    EXPECT_EQ(std::to_string(c.c_value), oracle::euler_decimal(c.n));
    EXPECT_EQ(c.prime_miller_rabin, c.prime_trial_division) << c.n;
    EXPECT_EQ(c.divergent, c.n == 15477) << c.n;
  }
  EXPECT_EQ(checks[1].c_value, 239553047u);
  EXPECT_EQ(checks[1].published_c_value, 239553049u);
  EXPECT_FALSE(checks[0].prime_miller_rabin);  // 13200
  const auto csv = published_candidates_csv(checks);
  EXPECT_NE(csv.find("54,15477,239553047,239553049,true,true,0.019,c_value:239553049"),
            std::string::npos)
      << csv;
}

TEST(Candidates, CsvLayout) {
  auto c = make(100);
  c.d_candidate = 0.0314;
  c.assigned_index = 53;
  c.flags = {"selected-53", "relaxed-53"};
  EXPECT_EQ(candidates_csv({c}),
            "n,c_value,prime,d_candidate,assigned_index,in_window,flags\n"
            "100,10141,true,0.031,53,true,selected-53;relaxed-53\n");
  EXPECT_NE(candidates_json({c}).find("\"assigned_index\": 53"), std::string::npos);
}
