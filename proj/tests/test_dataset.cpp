#include <gtest/gtest.h>

#include "mersquad/dataset.hpp"
#include "mersquad/errors.hpp"
#include "mersquad/primality.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace mersquad;

TEST(Dataset, EmbeddedAnchors) {
  const Dataset& ds = load_embedded();
  ASSERT_EQ(ds.size(), 52u);
  EXPECT_EQ(ds.source(), "embedded");
  EXPECT_EQ(ds.at_index(1).exponent, 2u);
  EXPECT_EQ(ds.at_index(30).exponent, 132049u);
  EXPECT_EQ(ds.at_index(34).exponent, 1257787u);
  EXPECT_EQ(ds.at_index(35).exponent, 1398269u);
  EXPECT_EQ(ds.at_index(38).exponent, 6972593u);
  EXPECT_EQ(ds.at_index(52).exponent, 136279841u);
  EXPECT_EQ(ds.at_index(52).year, 2024);
  EXPECT_TRUE(ds.has_years());
}

TEST(Dataset, EmbeddedInvariants) {
  const Dataset& ds = load_embedded();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& r = ds.records()[i];
    EXPECT_EQ(r.index, static_cast<int>(i) + 1);
    EXPECT_TRUE(is_prime(r.exponent)) << r.exponent;
    if (i > 0) EXPECT_GT(r.exponent, ds.records()[i - 1].exponent);
  }
}

TEST(Dataset, SmallExponentsAreLucasLehmerPrimes) {
  for (const auto& r : load_embedded().records()) {
    if (r.exponent < 3 || r.exponent > 10000) continue;
    EXPECT_TRUE(oracle::naive_lucas_lehmer(static_cast<unsigned>(r.exponent))) << r.exponent;
  }
}

TEST(Dataset, CsvRoundTrip) {
  const Dataset& ds = load_embedded();
  testutil::TempDir tmp;
  const auto path = tmp.write("list.csv", to_csv(ds));
  const Dataset back = load_csv(path);
  EXPECT_EQ(back, ds);
  EXPECT_EQ(back.source(), path.string());
  EXPECT_EQ(to_csv(back), to_csv(ds));
}

TEST(Dataset, HeaderIsOptionalAndYearMayBeMissing) {
  const Dataset ds = parse_csv("1,2\n2,3,\n3,5,1900\n", "inline");
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_FALSE(ds.at_index(1).year.has_value());
  EXPECT_FALSE(ds.has_years());
  EXPECT_EQ(ds.at_index(3).year, 1900);
}

TEST(Dataset, OutOfOrderRowsAreRejected) {
  try {
    parse_csv("x,p,year\n1,2,0\n3,5,0\n2,3,0\n", "bad");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-contiguous index"), std::string::npos) << e.what();
  }
}

TEST(Dataset, NonMonotoneExponentIsRejected) {
  try {
    parse_csv("1,3\n2,2\n", "bad", {.check_primality = false});
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-monotone p"), std::string::npos) << e.what();
  }
}

TEST(Dataset, CompositeExponentFailsPrimalityCheck) {
  std::string csv = to_csv(load_embedded());
  const auto at = csv.find("30,132049,");
  ASSERT_NE(at, std::string::npos);
  csv.replace(at, 10, "30,132050,");
  try {
    parse_csv(csv, "bad");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("primality"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(parse_csv(csv, "bad", {.check_primality = false}));
}

TEST(Dataset, ParseErrorCarriesLineNumber) {
  try {
    parse_csv("x,p,year\n1,2,0\n2,three,0\n", "bad");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_csv("1,2,3,4\n", "bad"), ParseError);
  EXPECT_THROW(parse_csv("", "empty"), ValidationError);
}

TEST(Dataset, MissingFileIsAnError) {
  EXPECT_THROW(load_csv("/nonexistent/mersquad.csv"), Error);
}

TEST(Dataset, SelectRange) {
  const Dataset& ds = load_embedded();
  const Dataset t1 = select_range(ds, 30, 35);
  ASSERT_EQ(t1.size(), 6u);
  EXPECT_EQ(t1.records().front().exponent, 132049u);
  EXPECT_EQ(t1.records().back().exponent, 1398269u);
  EXPECT_EQ(select_range(ds, 10, 52).size(), 43u);

  const Dataset one = select_range(ds, 5, 5);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.records()[0].exponent, 13u);
  EXPECT_TRUE(oracle::naive_lucas_lehmer(13));
}

TEST(Dataset, SelectRangeIsIdempotent) {
  const Dataset& ds = load_embedded();
  for (int a = 1; a <= 52; a += 7) {
    for (int b = a; b <= 52; b += 5) {
      const Dataset once = select_range(ds, a, b);
      EXPECT_EQ(select_range(once, a, b), once);
    }
  }
}

TEST(Dataset, SelectRangeBoundsAreNamed) {
  const Dataset& ds = load_embedded();
  try {
    select_range(ds, 60, 70);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("x_hi=70"), std::string::npos);
  }
  try {
    select_range(select_range(ds, 10, 20), 5, 12);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("x_lo=5"), std::string::npos);
  }
  EXPECT_THROW(select_range(ds, 9, 8), ValidationError);
}
