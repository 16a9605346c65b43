#include "mersquad/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "mersquad/errors.hpp"
#include "mersquad/published.hpp"

namespace mersquad {

namespace {

using json = nlohmann::ordered_json;

struct Cell {
  std::string text;
  json value;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> footer;  // markdown only
  json meta = json::object();        // json only
};

double rounded(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

Cell int_cell(std::uint64_t v) { return {std::to_string(v), v}; }
Cell int_cell(int v) { return {std::to_string(v), v}; }
Cell real_cell(double v, int decimals) { return {fixed(v, decimals), rounded(v, decimals)}; }
Cell text_cell(std::string s) { return {s, s}; }
Cell null_cell() { return {"", nullptr}; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Table& t, Format format) {
  std::string out;
  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + t.columns[i];
      }
      out += '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(row[i].text);
        out += '\n';
      }
      return out;
    }
    case Format::Markdown: {
      out += "|";
      for (const auto& c : t.columns) out += " " + c + " |";
      out += "\n|";
      for (std::size_t i = 0; i < t.columns.size(); ++i) out += "---|";
      out += '\n';
      for (const auto& row : t.rows) {
        out += "|";
        for (const auto& cell : row) out += " " + cell.text + " |";
        out += '\n';
      }
      if (!t.footer.empty()) {
        out += '\n';
        for (const auto& line : t.footer) out += line + '\n';
      }
      return out;
    }
    case Format::Json: {
      json doc = t.meta;
      json rows = json::array();
      for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i].value;
        rows.push_back(std::move(obj));
      }
      doc["rows"] = std::move(rows);
      return doc.dump(2) + '\n';
    }
  }
  return out;
}

// Accumulates `column:printed` pairs for cells that differ from the
// published value.
class Divergence {
 public:
  void check(std::string_view column, const std::string& recomputed, const std::string& printed) {
    if (recomputed == printed) return;
    if (!text_.empty()) text_ += ';';
    text_ += fmt::format("{}:{}", column, printed);
  }
  void check(std::string_view column, std::uint64_t recomputed, std::uint64_t printed) {
    check(column, std::to_string(recomputed), std::to_string(printed));
  }
  Cell cell() const { return text_cell(text_); }

 private:
  std::string text_;
};

const ModelEntry& require_entry(const PredictionRow& row, std::string_view model, int table_id) {
  const ModelEntry* e = row.find(model);
  if (e == nullptr) {
    throw ValidationError(fmt::format("table {} needs model '{}' in the report", table_id, model));
  }
  return *e;
}

Cell predicted_cell(const ModelEntry& e) { return e.error ? null_cell() : int_cell(e.predicted); }
Cell diff_cell(const ModelEntry& e) { return e.error ? null_cell() : int_cell(e.abs_diff); }

json summary_json(const EvaluationReport& report) {
  json s = json::object();
  for (const auto& m : report.summaries) {
    s[m.model] = {{"evaluated", m.evaluated},
                  {"exact_count", m.exact_count},
                  {"close_count", m.close_count},
                  {"mae", rounded(m.mae, 1)}};
  }
  return s;
}

std::vector<std::string> summary_footer(const EvaluationReport& report,
                                        const std::vector<std::string_view>& models) {
  std::string exact = "Exact matches:", mae = "MAE:";
  for (auto name : models) {
    const ModelSummary* s = report.summary(name);
    if (s == nullptr) continue;
    exact += fmt::format(" {} {}/{};", name, s->exact_count, report.rows.size());
    mae += fmt::format(" {} {};", name, fixed(s->mae, 1));
  }
  return {exact, mae};
}

Table table1(const EvaluationReport& report) {
  // The exponential columns appear only when the report carries that model.
  const bool with_exp = report.rows.front().find(kExpModelName) != nullptr;
  Table t;
  t.columns = {"x", "p_actual", "n_exact", "n_closest", "c_n_closest"};
  if (with_exp) t.columns.push_back("exp_prediction");
  t.columns.push_back("we_diff");
  if (with_exp) t.columns.push_back("exp_diff");
  t.columns.push_back("divergence");

  for (const auto& row : report.rows) {
    const auto& we = require_entry(row, "euler", 1);
    const ModelEntry* ex = with_exp ? &require_entry(row, kExpModelName, 1) : nullptr;
    std::vector<Cell> cells{int_cell(row.x), int_cell(row.p_actual)};
    if (we.error) {
      cells.insert(cells.end(), {null_cell(), null_cell(), null_cell()});
    } else {
      cells.push_back(real_cell(static_cast<double>(*we.n_exact), 3));
      cells.push_back(int_cell(*we.n_closest));
      cells.push_back(int_cell(we.predicted));
    }
    if (ex) cells.push_back(predicted_cell(*ex));
    cells.push_back(diff_cell(we));
    if (ex) cells.push_back(diff_cell(*ex));

    Divergence div;
    if (auto pub = published::comparison_row(row.x); pub && !we.error) {
      div.check("n_exact", fixed(static_cast<double>(*we.n_exact), 3), fixed(pub->n_exact, 3));
      div.check("n_closest", *we.n_closest, pub->n_closest);
      div.check("c_n_closest", we.predicted, pub->euler_value);
      div.check("we_diff", we.abs_diff, pub->euler_diff);
      if (ex && !ex->error) {
        div.check("exp_prediction", ex->predicted, pub->exp_prediction);
        div.check("exp_diff", ex->abs_diff, pub->exp_diff);
      }
    }
    cells.push_back(div.cell());
    t.rows.push_back(std::move(cells));
  }
  t.footer = summary_footer(report, {"euler", kExpModelName});
  return t;
}

Table table2(const EvaluationReport& report) {
  Table t;
  t.columns = {"x", "p_actual", "d", "divergence"};
  for (const auto& row : report.rows) {
    const auto& we = require_entry(row, "euler", 2);
    Divergence div;
    std::vector<Cell> cells{int_cell(row.x), int_cell(row.p_actual)};
    cells.push_back(we.error ? null_cell() : real_cell(*we.d, 3));
    if (auto pub = published::comparison_row(row.x); pub && !we.error) {
      div.check("d", fixed(*we.d, 3), fixed(pub->d, 3));
    }
    cells.push_back(div.cell());
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table table3(const EvaluationReport& report) {
  Table t;
  t.columns = {"x",          "p_actual",   "we_c_n",   "n2_plus_1", "n2_plus_n_plus_17",
               "exp_prediction", "we_diff", "quad1_diff", "quad2_diff", "exp_diff",
               "divergence"};
  for (const auto& row : report.rows) {
    const auto& we = require_entry(row, "euler", 3);
    const auto& q1 = require_entry(row, "quad-n2p1", 3);
    const auto& q2 = require_entry(row, "quad-n2pn17", 3);
    const auto& ex = require_entry(row, kExpModelName, 3);
    std::vector<Cell> cells{int_cell(row.x),     int_cell(row.p_actual), predicted_cell(we),
                            predicted_cell(q1), predicted_cell(q2),     predicted_cell(ex),
                            diff_cell(we),      diff_cell(q1),          diff_cell(q2),
                            diff_cell(ex)};
    Divergence div;
    if (auto pub = published::comparison_row(row.x);
        pub && !we.error && !q1.error && !q2.error && !ex.error) {
      div.check("we_c_n", we.predicted, pub->euler_value);
      div.check("n2_plus_1", q1.predicted, pub->n2_plus_1);
      div.check("n2_plus_n_plus_17", q2.predicted, pub->n2_plus_n_17);
      div.check("exp_prediction", ex.predicted, pub->exp_prediction);
      div.check("we_diff", we.abs_diff, pub->euler_diff);
      div.check("quad1_diff", q1.abs_diff, pub->n2_plus_1_diff);
      div.check("quad2_diff", q2.abs_diff, pub->n2_plus_n_17_diff);
      div.check("exp_diff", ex.abs_diff, pub->exp_diff);
    }
    cells.push_back(div.cell());
    t.rows.push_back(std::move(cells));
  }
  t.footer = summary_footer(report, {"euler", "quad-n2p1", "quad-n2pn17", kExpModelName});
  return t;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "md" || name == "markdown") return Format::Markdown;
  throw ValidationError(fmt::format("unknown format '{}'", name));
}

std::string_view extension(Format format) {
  switch (format) {
    case Format::Csv: return "csv";
    case Format::Markdown: return "md";
    case Format::Json: return "json";
  }
  return "txt";
}

std::string fixed(double value, int decimals) {
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string emit_table(const EvaluationReport& report, int table_id, Format format) {
  if (report.rows.empty()) throw ValidationError("table: report has no rows");
  Table t;
  switch (table_id) {
    case 1: t = table1(report); break;
    case 2: t = table2(report); break;
    case 3: t = table3(report); break;
    default: throw ValidationError(fmt::format("unknown table {}", table_id));
  }
  t.meta["table"] = table_id;
  t.meta["range"] = {report.x_lo, report.x_hi};
  t.meta["threshold"] = report.threshold;
  t.meta["summary"] = summary_json(report);
  return render(t, format);
}

std::string emit_summary(const EvaluationReport& report, Format format) {
  Table t;
  t.columns = {"model", "rows", "evaluated", "exact_count", "close_count", "mae",
               "search_reduction"};
  for (const auto& s : report.summaries) {
    std::vector<Cell> cells{text_cell(s.model), int_cell(report.rows.size()),
                            int_cell(s.evaluated), int_cell(s.exact_count),
                            int_cell(s.close_count), real_cell(s.mae, 1)};
    cells.push_back(report.rows.empty() ? null_cell()
                                        : real_cell(search_reduction(report, s.model), 3));
    t.rows.push_back(std::move(cells));
  }
  t.meta["range"] = {report.x_lo, report.x_hi};
  t.meta["threshold"] = report.threshold;
  return render(t, format);
}

std::string emit_figure_data(const FigureInputs& in, int figure_id) {
  Table t;
  switch (figure_id) {
    case 1: {
      if (in.report == nullptr || in.report->rows.empty()) {
        throw ValidationError("figure 1: empty evaluation range");
      }
      t.columns = {"x", "p_actual", "we_prediction", "exp_prediction", "we_match"};
      for (const auto& row : in.report->rows) {
        const auto& we = require_entry(row, "euler", 1);
        const auto& ex = require_entry(row, kExpModelName, 1);
        t.rows.push_back({int_cell(row.x), int_cell(row.p_actual), predicted_cell(we),
                          predicted_cell(ex),
                          we.error ? null_cell() : text_cell(std::string(to_string(we.match)))});
      }
      break;
    }
    case 2: {
      if (in.selections == nullptr || in.selections->empty()) {
        throw ValidationError("figure 2: no candidate selections");
      }
      t.columns = {"index", "n", "predicted_exponent", "d", "relaxed"};
      for (const auto& s : *in.selections) {
        t.rows.push_back({int_cell(s.target.index), int_cell(s.candidate.n),
                          int_cell(s.candidate.c_value), real_cell(s.d, 3),
                          text_cell(s.relaxed ? "true" : "false")});
      }
      break;
    }
    case 3: {
      if (in.dataset == nullptr) throw ValidationError("figure 3: no dataset");
      if (!in.dataset->has_years()) {
        throw ValidationError("figure 3: dataset lacks discovery years");
      }
      t.columns = {"x", "year", "p"};
      for (const auto& r : in.dataset->records()) {
        t.rows.push_back({int_cell(r.index), int_cell(*r.year), int_cell(r.exponent)});
      }
      break;
    }
    case 4: {
      if (in.report == nullptr || in.report->rows.empty()) {
        throw ValidationError("figure 4: empty evaluation range");
      }
      t.columns = {"x", "d"};
      for (const auto& row : in.report->rows) {
        const auto& we = require_entry(row, "euler", 4);
        if (we.error) continue;
        t.rows.push_back({int_cell(row.x), real_cell(*we.d, 3)});
      }
      break;
    }
    default:
      throw ValidationError(fmt::format("unknown figure {}", figure_id));
  }
  return render(t, Format::Csv);
}

}  // namespace mersquad
