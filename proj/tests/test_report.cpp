#include <gtest/gtest.h>

#include <json.hpp>

#include "mersquad/audit.hpp"
#include "mersquad/dataset.hpp"
#include "mersquad/errors.hpp"
#include "mersquad/report.hpp"
#include "test_util.hpp"

using namespace mersquad;

namespace {

EvaluationReport standard_report(int lo, int hi) {
  return evaluate_range(load_embedded(), lo, hi, ModelSet::standard(), kDefaultThreshold);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto eol = text.find('\n', start);
    out.push_back(text.substr(start, eol - start));
    start = eol + 1;
  }
  return out;
}

}  // namespace

TEST(Report, Table1EulerColumnsMatchGolden) {
  const auto report = evaluate_range(load_embedded(), 30, 35,
                                     ModelSet::from_names({"euler"}, published_model()), 0.1);
  const auto golden =
      testutil::read_file(std::string(MERSQUAD_GOLDEN_DIR) + "/table1_euler_30_35.csv");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(emit_table(report, 1, Format::Csv), golden);
}

TEST(Report, Table1FlagsExponentialColumn) {
  const auto csv = lines(emit_table(standard_report(30, 35), 1, Format::Csv));
  ASSERT_EQ(csv.size(), 7u);
  EXPECT_EQ(csv[0], "x,p_actual,n_exact,n_closest,c_n_closest,exp_prediction,we_diff,exp_diff,divergence");
  EXPECT_EQ(csv[1], "30,132049,362.829,363,132173,2365981,124,2233932,exp_prediction:174337;exp_diff:42288");
}

TEST(Report, Table2FlagsFractionalPartRows) {
  const auto csv = lines(emit_table(standard_report(30, 35), 2, Format::Csv));
  ASSERT_EQ(csv.size(), 7u);
  EXPECT_EQ(csv[0], "x,p_actual,d,divergence");
  EXPECT_EQ(csv[1], "30,132049,0.171,d:0.829");
  EXPECT_EQ(csv[2], "31,216091,0.312,");
  EXPECT_EQ(csv[3], "32,756839,0.442,");
  EXPECT_EQ(csv[4], "33,859433,0.466,d:0.534");
  EXPECT_EQ(csv[5], "34,1257787,0.007,");
  EXPECT_EQ(csv[6], "35,1398269,0.033,");
}

TEST(Report, Table3AlternativeQuadraticsDiverge) {
  const auto csv = lines(emit_table(standard_report(30, 35), 3, Format::Csv));
  ASSERT_EQ(csv.size(), 7u);
  // round(sqrt(132048)) = 363 and 363^2 + 1 = 131770; the printed 131769 is 363^2.
  EXPECT_NE(csv[1].find(",131770,"), std::string::npos) << csv[1];
  EXPECT_NE(csv[1].find("n2_plus_1:131769"), std::string::npos) << csv[1];
  EXPECT_NE(csv[1].find("n2_plus_n_plus_17:132017"), std::string::npos) << csv[1];
  for (std::size_t i = 1; i < csv.size(); ++i) {
    EXPECT_EQ(csv[i].find("we_c_n:"), std::string::npos) << csv[i];
    EXPECT_EQ(csv[i].find("we_diff:"), std::string::npos) << csv[i];
  }
}

TEST(Report, TableNeedsItsModels) {
  const auto euler_only = evaluate_range(load_embedded(), 30, 35,
                                         ModelSet::from_names({"euler"}, published_model()), 0.1);
  EXPECT_THROW(emit_table(euler_only, 3, Format::Csv), ValidationError);
  const auto exp_only = evaluate_range(load_embedded(), 30, 35,
                                       ModelSet::from_names({"exp"}, published_model()), 0.1);
  EXPECT_THROW(emit_table(exp_only, 1, Format::Csv), ValidationError);
  EXPECT_THROW(emit_table(euler_only, 4, Format::Csv), ValidationError);
  EXPECT_THROW(emit_table(EvaluationReport{}, 1, Format::Csv), ValidationError);
}

TEST(Report, JsonTable) {
  const auto doc = nlohmann::json::parse(emit_table(standard_report(30, 30), 1, Format::Json));
  EXPECT_EQ(doc["table"], 1);
  ASSERT_EQ(doc["rows"].size(), 1u);
  EXPECT_EQ(doc["rows"][0]["we_diff"], 124);
  EXPECT_EQ(doc["rows"][0]["n_exact"], 362.829);
  EXPECT_EQ(doc["summary"]["euler"]["mae"], 124.0);
  EXPECT_EQ(doc["summary"]["euler"]["exact_count"], 0);
}

TEST(Report, MarkdownTableHasSummaryFooter) {
  const auto md = emit_table(standard_report(30, 35), 3, Format::Markdown);
  EXPECT_NE(md.find("| x | p_actual | we_c_n |"), std::string::npos);
  EXPECT_NE(md.find("MAE: euler 356.7;"), std::string::npos);
  EXPECT_NE(md.find("Exact matches: euler 0/6;"), std::string::npos);
}

TEST(Report, EmissionIsDeterministic) {
  for (auto f : {Format::Csv, Format::Json, Format::Markdown}) {
    for (int t : {1, 2, 3}) {
      EXPECT_EQ(emit_table(standard_report(10, 52), t, f), emit_table(standard_report(10, 52), t, f));
    }
  }
}

TEST(Report, Summary) {
  const auto csv = lines(emit_summary(standard_report(30, 52), Format::Csv));
  EXPECT_EQ(csv[0], "model,rows,evaluated,exact_count,close_count,mae,search_reduction");
  EXPECT_EQ(csv[1].rfind("euler,23,23,", 0), 0u) << csv[1];
  EXPECT_NE(csv[1].find(",2604.7,"), std::string::npos) << csv[1];
}

TEST(Report, FigureFour) {
  const auto report = standard_report(30, 35);
  FigureInputs in;
  in.report = &report;
  const auto csv = lines(emit_figure_data(in, 4));
  ASSERT_EQ(csv.size(), 7u);
  EXPECT_EQ(csv[0], "x,d");
  EXPECT_EQ(csv[5], "34,0.007");
}

TEST(Report, FigureThreeTimeline) {
  FigureInputs in;
  in.dataset = &load_embedded();
  const auto csv = lines(emit_figure_data(in, 3));
  ASSERT_EQ(csv.size(), 53u);
  EXPECT_EQ(csv.back(), "52,2024,136279841");

  const Dataset no_years({{1, 2, {}}, {2, 3, {}}}, "synthetic");
  in.dataset = &no_years;
  EXPECT_THROW(emit_figure_data(in, 3), ValidationError);
}

TEST(Report, FigureOneAndErrors) {
  const auto report = standard_report(30, 52);
  FigureInputs in;
  in.report = &report;
  const auto csv = lines(emit_figure_data(in, 1));
  EXPECT_EQ(csv[0], "x,p_actual,we_prediction,exp_prediction,we_match");
  EXPECT_EQ(csv.size(), 24u);

  const EvaluationReport empty;
  in.report = &empty;
  EXPECT_THROW(emit_figure_data(in, 1), ValidationError);
  EXPECT_THROW(emit_figure_data(FigureInputs{}, 2), ValidationError);
  EXPECT_THROW(emit_figure_data(in, 9), ValidationError);
}

TEST(Report, FixedFormatting) {
  EXPECT_EQ(fixed(356.6666, 1), "356.7");
  EXPECT_EQ(fixed(0.0004, 3), "0.000");
  EXPECT_EQ(fixed(-0.0001, 3), "0.000");
  EXPECT_EQ(parse_format("md"), Format::Markdown);
  EXPECT_THROW(parse_format("xml"), ValidationError);
}

TEST(Audit, FlagsEveryInconsistentHeadline) {
  const auto a = audit(load_embedded());
  EXPECT_EQ(a.exact_indices, (std::vector<int>{16, 22}));
  EXPECT_EQ(a.close_indices, (std::vector<int>{34, 35, 38, 42}));
  ASSERT_EQ(a.claimed_exact.size(), 2u);
  EXPECT_EQ(a.claimed_exact[0].x, 38);
  EXPECT_FALSE(a.claimed_exact[0].perfect_square);
  EXPECT_EQ(a.claimed_exact[1].x, 52);
  EXPECT_FALSE(a.claimed_exact[1].perfect_square);

  auto find = [&](const std::string& id) -> const ClaimCheck& {
    for (const auto& c : a.checks) {
      if (c.claim == id) return c;
    }
    throw std::runtime_error("missing " + id);
  };
  EXPECT_TRUE(find("euler_mae_30_35_printed_diffs").consistent);
  EXPECT_EQ(find("euler_mae_30_35_printed_diffs").recomputed, "356.67");
  EXPECT_FALSE(find("euler_mae_30_52_text").consistent);
  EXPECT_EQ(find("euler_mae_30_52_text").published, "614.0");
  EXPECT_TRUE(find("euler_mae_30_52_table_note").consistent);
  EXPECT_FALSE(find("exact_matches_10_52").consistent);
  EXPECT_EQ(find("exact_matches_10_52").recomputed, "2");
  EXPECT_FALSE(find("exp_prediction_x30").consistent);

  const auto csv = emit_audit(a, Format::Csv);
  EXPECT_NE(csv.find("claimed_exact,x=38"), std::string::npos);
  EXPECT_NE(csv.find("claimed-exact-not-perfect-square"), std::string::npos);
  const auto json = nlohmann::json::parse(emit_audit(a, Format::Json));
  EXPECT_EQ(json["claimed_exact"][1]["x"], 52);
  EXPECT_EQ(json["claimed_exact"][1]["perfect_square"], false);
}
