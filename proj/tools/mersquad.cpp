// mersquad: reproducible evaluation of the n^2 + n + 41 Mersenne-exponent
// heuristic against the known exponents.
//
// Exit codes: 0 success, 2 usage, 3 data validation, 4 verification failure.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mersquad/audit.hpp"
#include "mersquad/candidates.hpp"
#include "mersquad/dataset.hpp"
#include "mersquad/errors.hpp"
#include "mersquad/evaluation.hpp"
#include "mersquad/primality.hpp"
#include "mersquad/regression.hpp"
#include "mersquad/report.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mersquad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitVerify = 4;

constexpr const char* kDataEnv = "MERSQUAD_DATA";

class UsageError : public Error {
 public:
  using Error::Error;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

template <typename T>
std::pair<T, T> parse_pair(const std::string& text, std::string_view flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError(fmt::format("{} expects LO:HI, got '{}'", flag, text));
  }
  auto number = [&](const std::string& s) -> T {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size() || v < 0) throw std::invalid_argument(s);
      return static_cast<T>(v);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}: '{}' is not a non-negative integer", flag, s));
    }
  };
  const T lo = number(text.substr(0, colon));
  const T hi = number(text.substr(colon + 1));
  if (lo > hi) throw UsageError(fmt::format("{}: {} exceeds {}", flag, lo, hi));
  return {lo, hi};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto item = text.substr(start, comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CommonOptions {
  std::string data;
  bool skip_prime_check = false;
  unsigned threads = 1;
  std::string out;
  bool force = false;
  std::string format = "csv";
};

Dataset load_dataset(const CommonOptions& opt) {
  std::string path = opt.data;
  if (path.empty()) {
    if (const char* env = std::getenv(kDataEnv); env != nullptr && *env != '\0') path = env;
  }
  if (path.empty()) return load_embedded();
  return load_csv(path, LoadOptions{!opt.skip_prime_check});
}

// Collects output documents and writes them either into --out or to stdout,
// together with the run manifest.
class Output {
 public:
  Output(std::string command, const CommonOptions& opt) : command_(std::move(command)), opt_(opt) {
    if (opt_.out.empty()) return;
    const fs::path dir(opt_.out);
    if (fs::exists(dir) && !fs::is_directory(dir)) {
      throw UsageError(fmt::format("--out '{}' is not a directory", opt_.out));
    }
    if (fs::exists(dir) && !fs::is_empty(dir) && !opt_.force) {
      throw UsageError(fmt::format("--out '{}' is not empty; pass --force to overwrite", opt_.out));
    }
    fs::create_directories(dir);
  }

  json& config() { return config_; }

  /// `primary` documents go to stdout when no --out directory is given.
  void add(const std::string& name, std::string body, bool primary = true) {
    docs_.push_back({name, std::move(body), primary});
  }

  void finish(const std::string& dataset_source) {
    json manifest;
    manifest["command"] = command_;
    manifest["config"] = config_;
    manifest["dataset_source"] = dataset_source;
    manifest["tool_version"] = MERSQUAD_VERSION;
    manifest["timestamp"] = utc_timestamp();
    json files = json::array();
    for (const auto& d : docs_) files.push_back(d.name);
    manifest["outputs"] = files;

    if (opt_.out.empty()) {
      for (const auto& d : docs_) {
        if (d.primary) std::cout << d.body;
      }
      std::cerr << "manifest: " << manifest.dump() << '\n';
      return;
    }
    const fs::path dir(opt_.out);
    for (const auto& d : docs_) write_file(dir / d.name, d.body);
    write_file(dir / "manifest.json", manifest.dump(2) + '\n');
  }

 private:
  struct Doc {
    std::string name;
    std::string body;
    bool primary;
  };

  static void write_file(const fs::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << body;
    if (!f) throw Error(fmt::format("cannot write '{}'", path.string()));
  }

  std::string command_;
  const CommonOptions& opt_;
  json config_ = json::object();
  std::vector<Doc> docs_;
};

ExpModel resolve_exp_model(const std::string& which, const Dataset& ds,
                           std::pair<int, int> fit_range) {
  if (which == "published" || which == "paper") return published_model();
  if (which == "fitted") {
    if (fit_range.second - fit_range.first + 1 < 3) {
      throw UsageError("--fit-range: need >= 3 points");
    }
    return fit(ds, fit_range.first, fit_range.second);
  }
  throw UsageError(fmt::format("unknown exponential model '{}'", which));
}

void add_common(CLI::App* app, CommonOptions& opt, bool with_format = true) {
  app->add_option("--data", opt.data, fmt::format("Exponent CSV (default: ${} or embedded)", kDataEnv));
  app->add_flag("--skip-prime-check", opt.skip_prime_check,
                "Do not require dataset exponents to be prime");
  app->add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app->add_option("--out", opt.out, "Output directory (default: stdout)");
  app->add_flag("--force", opt.force, "Allow writing into a non-empty --out directory");
  if (with_format) {
    app->add_option("--format", opt.format, "csv | json | md")
        ->check(CLI::IsMember({"csv", "json", "md", "markdown"}));
  }
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  CommonOptions common;
  std::string range = "10:52";
  double threshold = kDefaultThreshold;
  std::string models = "euler,quad-n2p1,quad-n2pn17,exp";
  std::string exp_model = "published";
  std::string fit_range = "1:52";
};

void run_evaluate(const EvaluateArgs& a) {
  const auto [lo, hi] = parse_pair<int>(a.range, "--range");
  const auto model_names = split_list(a.models);
  const Format format = parse_format(a.common.format);
  const Dataset ds = load_dataset(a.common);
  const ExpModel exp_model =
      resolve_exp_model(a.exp_model, ds, parse_pair<int>(a.fit_range, "--fit-range"));
  ModelSet models;
  try {
    models = ModelSet::from_names(model_names, exp_model);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }

  Output out("evaluate", a.common);
  out.config() = {{"range", {lo, hi}},          {"threshold", a.threshold},
                  {"models", model_names},      {"exp_model", a.exp_model},
                  {"fit_range", a.fit_range},   {"format", a.common.format}};

  const auto report = evaluate_range(ds, lo, hi, models, a.threshold, a.common.threads);
  const auto ext = std::string(extension(format));
  const std::set<std::string> names(model_names.begin(), model_names.end());
  const bool has_euler = names.contains("euler");
  if (has_euler) {
    out.add("table1." + ext, emit_table(report, 1, format), true);
    out.add("table2." + ext, emit_table(report, 2, format), false);
  }
  if (names.size() == 4) out.add("table3." + ext, emit_table(report, 3, format), false);
  out.add("summary." + ext, emit_summary(report, format), !has_euler);
  out.finish(ds.source());
}

// --- fit --------------------------------------------------------------------

struct FitArgs {
  CommonOptions common;
  std::string range = "1:52";
};

void run_fit(const FitArgs& a) {
  const auto [lo, hi] = parse_pair<int>(a.range, "--range");
  if (hi - lo + 1 < 3) throw UsageError("--range: need >= 3 points");
  const Format format = parse_format(a.common.format);
  const Dataset ds = load_dataset(a.common);
  const ExpModel fitted = fit(ds, lo, hi);
  const ExpModel stated = published_model();

  Output out("fit", a.common);
  out.config() = {{"range", {lo, hi}}, {"format", a.common.format}};

  std::string body;
  auto opt_real = [](const std::optional<double>& v, int decimals) {
    return v ? fixed(*v, decimals) : std::string();
  };
  switch (format) {
    case Format::Json: {
      auto model_json = [](const ExpModel& m) {
        json j;
        j["label"] = m.label;
        j["amplitude"] = m.amplitude;
        j["rate"] = m.rate;
        j["fit_range"] = m.fit_range ? json{m.fit_range->first, m.fit_range->second} : json();
        j["r_squared_log"] = m.r_squared_log ? json(*m.r_squared_log) : json();
        j["r_squared_linear"] = m.r_squared_linear ? json(*m.r_squared_linear) : json();
        return j;
      };
      body = json{{"models", {model_json(fitted), model_json(stated)}}}.dump(2) + '\n';
      break;
    }
    case Format::Csv:
    case Format::Markdown: {
      const bool md = format == Format::Markdown;
      const char* sep = md ? " | " : ",";
      auto line = [&](std::vector<std::string> cells) {
        std::string s = md ? "| " : "";
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? sep : "") + cells[i];
        return s + (md ? " |\n" : "\n");
      };
      body += line({"label", "amplitude", "rate", "fit_range", "r_squared_log", "r_squared_linear"});
      if (md) body += "|---|---|---|---|---|---|\n";
      for (const auto* m : {&fitted, &stated}) {
        body += line({m->label, fixed(m->amplitude, 2), fixed(m->rate, 4),
                      m->fit_range ? fmt::format("{}:{}", m->fit_range->first, m->fit_range->second)
                                   : "stated",
                      opt_real(m->r_squared_log, 4), opt_real(m->r_squared_linear, 4)});
      }
      break;
    }
  }
  out.add("fit." + std::string(extension(format)), body);
  out.finish(ds.source());
}

// --- scan -------------------------------------------------------------------

struct ScanArgs {
  CommonOptions common;
  std::string n_range = "362:35000";
  std::string window = "140000000:200000000";
  bool no_window = false;
  std::string indices = "53:57";
  double d_threshold = 0.1;
  std::string model = "published";
  std::string fit_range = "1:52";
};

void run_scan(const ScanArgs& a) {
  ScanConfig cfg;
  std::tie(cfg.n_lo, cfg.n_hi) = parse_pair<std::uint64_t>(a.n_range, "--n-range");
  if (a.no_window) {
    cfg.window.reset();
  } else {
    cfg.window = parse_pair<std::uint64_t>(a.window, "--window");
  }
  const auto [ix_lo, ix_hi] = parse_pair<int>(a.indices, "--indices");
  cfg.indices.clear();
  for (int x = ix_lo; x <= ix_hi; ++x) cfg.indices.push_back(x);
  if (a.d_threshold < 0) throw UsageError("--d-threshold must be non-negative");
  cfg.d_threshold = a.d_threshold;
  cfg.threads = a.common.threads;
  if (a.common.format == "md" || a.common.format == "markdown") {
    throw UsageError("scan supports --format csv or json");
  }
  const Format format = parse_format(a.common.format);

  const Dataset ds = load_dataset(a.common);
  cfg.projection_model = resolve_exp_model(a.model, ds, parse_pair<int>(a.fit_range, "--fit-range"));
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }

  Output out("scan", a.common);
  out.config() = {{"n_range", {cfg.n_lo, cfg.n_hi}},
                  {"window", cfg.window ? json{cfg.window->first, cfg.window->second} : json()},
                  {"indices", cfg.indices},
                  {"d_threshold", cfg.d_threshold},
                  {"model", a.model},
                  {"fit_range", a.fit_range},
                  {"format", a.common.format}};

  auto cands = assign_deviation(scan(cfg), cfg.projection_model, cfg.indices);

  std::vector<Selection> selections;
  const bool any_in_window =
      std::any_of(cands.begin(), cands.end(), [](const Candidate& c) { return c.in_window; });
  if (any_in_window && !cfg.indices.empty()) {
    selections = select_top(cands, cfg);
    for (const auto& s : selections) {
      for (auto& c : cands) {
        if (c.n != s.candidate.n) continue;
        c.flags.push_back(fmt::format("selected-{}", s.target.index));
        if (s.relaxed) c.flags.push_back(fmt::format("relaxed-{}", s.target.index));
      }
    }
  } else {
    std::cerr << "scan: no in-window candidates; per-index selection skipped\n";
  }

  const std::uint64_t scanned = cfg.n_hi - cfg.n_lo + 1;
  std::cerr << fmt::format("scan: {} of {} values C(n) are prime; {} pruned ({} of scanned n)\n",
                           cands.size(), scanned, scanned - cands.size(),
                           fixed(1.0 - static_cast<double>(cands.size()) / scanned, 3));

  out.add(format == Format::Json ? "candidates.json" : "candidates.csv",
          format == Format::Json ? candidates_json(cands) : candidates_csv(cands));
  if (!selections.empty()) {
    out.add("selection.csv", selections_csv(selections), false);
    if (a.common.out.empty()) std::cerr << selections_csv(selections);
  }
  out.add("published_candidates.csv", published_candidates_csv(check_published_candidates()),
          false);
  out.finish(ds.source());
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  CommonOptions common;
  unsigned ll_cap = kLucasLehmerDefaultCap;
  bool exhaustive = false;
};

void run_verify(const VerifyArgs& a) {
  const Dataset ds = load_dataset(a.common);
  Output out("verify", a.common);
  out.config() = {{"ll_cap", a.ll_cap}, {"exhaustive", a.exhaustive}};

  std::set<std::uint64_t> members;
  for (const auto& r : ds.records()) members.insert(r.exponent);

  std::vector<PrimalityVerdict> verdicts;
  if (a.exhaustive) {
    verdicts = lucas_lehmer_sweep(a.ll_cap, a.common.threads);
  } else {
    for (auto p : members) {
      if (p < 3 || p > a.ll_cap) continue;
      if (!trial_division(p)) {
        verdicts.push_back({p, false, PrimalityMethod::TrialDivision});
        continue;
      }
      verdicts.push_back({p, lucas_lehmer(static_cast<unsigned>(p), a.ll_cap),
                          PrimalityMethod::LucasLehmer});
    }
  }

  std::string body = "p,in_dataset,is_mersenne_prime,method,agree\n";
  std::vector<std::uint64_t> failures;
  auto record = [&](std::uint64_t p, bool prime, std::string_view method) {
    const bool in = members.contains(p);
    body += fmt::format("{},{},{},{},{}\n", p, in, prime, method, in == prime);
    if (in != prime) failures.push_back(p);
  };
  if (a.ll_cap >= 2) record(2, is_prime(3), "direct");  // 2^2 - 1 = 3
  for (const auto& v : verdicts) record(v.value, v.is_prime, to_string(v.method));

  out.add("verify.csv", body);
  out.finish(ds.source());
  if (!failures.empty()) {
    std::string list;
    for (auto p : failures) list += (list.empty() ? "" : ", ") + std::to_string(p);
    throw VerificationFailure(fmt::format("Lucas-Lehmer disagrees with dataset at p = {}", list));
  }
}

// --- figures ----------------------------------------------------------------

struct FiguresArgs {
  CommonOptions common;
  std::string figures = "1,2,3,4";
  std::string range = "30:52";
};

void run_figures(const FiguresArgs& a) {
  std::vector<int> ids;
  for (const auto& item : split_list(a.figures)) {
    if (item.size() != 1 || item[0] < '1' || item[0] > '4') {
      throw UsageError(fmt::format("--figures: unknown figure '{}'", item));
    }
    ids.push_back(item[0] - '0');
  }
  if (ids.empty()) throw UsageError("--figures: nothing requested");
  const auto [lo, hi] = parse_pair<int>(a.range, "--range");
  const Dataset ds = load_dataset(a.common);

  Output out("figures", a.common);
  out.config() = {{"figures", ids}, {"range", {lo, hi}}};

  const ModelSet models = ModelSet::from_names({"euler", "exp"}, published_model());
  for (int id : ids) {
    FigureInputs in;
    EvaluationReport report;
    std::vector<Selection> selections;
    if (id == 1) {
      report = evaluate_range(ds, lo, hi, models, kDefaultThreshold);
      in.report = &report;
    } else if (id == 4) {
      report = evaluate_range(ds, 30, 35, models, kDefaultThreshold);
      in.report = &report;
    } else if (id == 2) {
      ScanConfig cfg;
      cfg.threads = a.common.threads;
      selections = select_top(assign_deviation(scan(cfg), cfg.projection_model, cfg.indices), cfg);
      in.selections = &selections;
    } else {
      in.dataset = &ds;
    }
    std::string body = emit_figure_data(in, id);
    const std::string name = fmt::format("fig{}.csv", id);
    if (a.common.out.empty()) body = fmt::format("# {}\n", name) + body;
    out.add(name, std::move(body));
  }
  out.finish(ds.source());
}

// --- audit ------------------------------------------------------------------

void run_audit(const CommonOptions& opt) {
  const Format format = parse_format(opt.format);
  const Dataset ds = load_dataset(opt);
  Output out("audit", opt);
  out.config() = {{"format", opt.format}};
  out.add("audit." + std::string(extension(format)), emit_audit(audit(ds), format));
  out.finish(ds.source());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate the n^2 + n + 41 Mersenne-exponent heuristic"};
  app.set_version_flag("--version", MERSQUAD_VERSION);
  app.require_subcommand(1);

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Compare models against known exponents");
  add_common(evaluate, eval.common);
  evaluate->add_option("--range", eval.range, "Index range X:Y");
  evaluate->add_option("--threshold", eval.threshold, "Close-match threshold on d")
      ->check(CLI::NonNegativeNumber);
  evaluate->add_option("--models", eval.models, "Comma list of euler,quad-n2p1,quad-n2pn17,exp");
  evaluate->add_option("--exp-model", eval.exp_model, "published | fitted");
  evaluate->add_option("--fit-range", eval.fit_range, "Index range for --exp-model fitted");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the exponential baseline");
  add_common(fit_cmd, fit_args.common);
  fit_cmd->add_option("--range", fit_args.range, "Index range X:Y");

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Scan n for prime n^2 + n + 41");
  add_common(scan_cmd, scan_args.common);
  scan_cmd->add_option("--n-range", scan_args.n_range, "Range A:B of n");
  scan_cmd->add_option("--window", scan_args.window, "Exponent window LO:HI");
  scan_cmd->add_flag("--no-window", scan_args.no_window, "Disable the exponent window");
  scan_cmd->add_option("--indices", scan_args.indices, "Prospective indices X:Y");
  scan_cmd->add_option("--d-threshold", scan_args.d_threshold, "Deviation threshold");
  scan_cmd->add_option("--model", scan_args.model, "published (alias paper) | fitted");
  scan_cmd->add_option("--fit-range", scan_args.fit_range, "Index range for --model fitted");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Lucas-Lehmer check of the dataset");
  add_common(verify, verify_args.common, false);
  verify->add_option("--ll-cap", verify_args.ll_cap, "Largest exponent to test");
  verify->add_flag("--exhaustive", verify_args.exhaustive,
                   "Sweep every odd prime <= cap, not only dataset exponents");

  FiguresArgs fig_args;
  auto* figures = app.add_subcommand("figures", "Emit figure data series");
  add_common(figures, fig_args.common, false);
  figures->add_option("--figures", fig_args.figures, "Comma list drawn from 1,2,3,4");
  figures->add_option("--range", fig_args.range, "Index range for figure 1");

  CommonOptions audit_opt;
  auto* audit_cmd = app.add_subcommand("audit", "Recompute headline figures and flag divergences");
  add_common(audit_cmd, audit_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (evaluate->parsed()) run_evaluate(eval);
    if (fit_cmd->parsed()) run_fit(fit_args);
    if (scan_cmd->parsed()) run_scan(scan_args);
    if (verify->parsed()) run_verify(verify_args);
    if (figures->parsed()) run_figures(fig_args);
    if (audit_cmd->parsed()) run_audit(audit_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
