#include "mersquad/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mersquad/errors.hpp"
#include "mersquad/primality.hpp"

namespace mersquad {

namespace detail {
extern const std::string_view kEmbeddedExponentCsv;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_integer(std::string_view field, std::string_view name, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(fmt::format("line {}: cannot parse {} from '{}'", line, name, field), line);
  }
  return value;
}

}  // namespace

Dataset::Dataset(std::vector<MersenneRecord> records, std::string source)
    : records_(std::move(records)), source_(std::move(source)) {
  if (records_.empty()) throw ValidationError("dataset is empty");
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.index < 1) throw ValidationError(fmt::format("index {} is below 1", r.index));
    if (r.exponent < 2) {
      throw ValidationError(fmt::format("x={}: exponent {} is below 2", r.index, r.exponent));
    }
    if (i == 0) continue;
    const auto& prev = records_[i - 1];
    if (r.index != prev.index + 1) {
      throw ValidationError(
          fmt::format("non-contiguous index: x={} follows x={}", r.index, prev.index));
    }
    if (r.exponent <= prev.exponent) {
      throw ValidationError(fmt::format("non-monotone p: x={} has p={} after p={}", r.index,
                                        r.exponent, prev.exponent));
    }
  }
}

bool Dataset::has_years() const noexcept {
  for (const auto& r : records_) {
    if (!r.year) return false;
  }
  return true;
}

const MersenneRecord& Dataset::at_index(int x) const {
  if (x < min_index() || x > max_index()) {
    throw ValidationError(fmt::format("index {} outside dataset [{}, {}]", x, min_index(),
                                      max_index()));
  }
  return records_[static_cast<std::size_t>(x - min_index())];
}

const Dataset& load_embedded() {
  static const Dataset embedded = parse_csv(detail::kEmbeddedExponentCsv, "embedded");
  return embedded;
}

Dataset load_csv(const std::filesystem::path& path, LoadOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(fmt::format("read failure on '{}'", path.string()));
  return parse_csv(buffer.str(), path.string(), options);
}

Dataset parse_csv(std::string_view text, std::string source, LoadOptions options) {
  std::vector<MersenneRecord> records;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1 && line.starts_with("x,")) continue;

    auto fields = split_fields(line);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(fmt::format("line {}: expected 2 or 3 fields, got {}", line_no,
                                   fields.size()),
                       line_no);
    }
    MersenneRecord rec;
    rec.index = parse_integer<int>(fields[0], "x", line_no);
    rec.exponent = parse_integer<std::uint64_t>(fields[1], "p", line_no);
    if (fields.size() == 3 && !fields[2].empty()) {
      rec.year = parse_integer<int>(fields[2], "year", line_no);
    }
    records.push_back(rec);
  }

  Dataset ds(std::move(records), std::move(source));
  if (options.check_primality) {
    for (const auto& r : ds.records()) {
      if (!is_prime(r.exponent)) {
        throw ValidationError(
            fmt::format("primality: x={} has composite exponent p={}", r.index, r.exponent));
      }
    }
  }
  return ds;
}

std::string to_csv(const Dataset& ds) {
  std::string out = "x,p,year\n";
  for (const auto& r : ds.records()) {
    if (r.year) {
      out += fmt::format("{},{},{}\n", r.index, r.exponent, *r.year);
    } else {
      out += fmt::format("{},{},\n", r.index, r.exponent);
    }
  }
  return out;
}

Dataset select_range(const Dataset& ds, int x_lo, int x_hi) {
  if (x_lo > x_hi) {
    throw ValidationError(fmt::format("empty range: x_lo={} exceeds x_hi={}", x_lo, x_hi));
  }
  if (x_lo < ds.min_index()) {
    throw ValidationError(fmt::format("range outside dataset: x_lo={} below first index {}",
                                      x_lo, ds.min_index()));
  }
  if (x_hi > ds.max_index()) {
    throw ValidationError(fmt::format("range outside dataset: x_hi={} above last index {}",
                                      x_hi, ds.max_index()));
  }
  auto first = ds.records().begin() + (x_lo - ds.min_index());
  auto last = ds.records().begin() + (x_hi - ds.min_index()) + 1;
  return Dataset({first, last}, ds.source());
}

}  // namespace mersquad
