#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mersquad {

/// One known Mersenne prime 2^p - 1, ranked by exponent.
struct MersenneRecord {
  int index = 0;              // 1-based rank x
  std::uint64_t exponent = 0; // p
  std::optional<int> year;    // discovery year; <= 0 means antiquity

  bool operator==(const MersenneRecord&) const = default;
};

struct LoadOptions {
  bool check_primality = true;
};

/// Ordered, validated list of known exponents. Immutable after construction.
///
/// Construction enforces: non-empty, indices contiguous and ascending,
/// exponents strictly increasing. Primality of each exponent is checked by
/// the loaders (see LoadOptions), not here.
class Dataset {
 public:
  Dataset(std::vector<MersenneRecord> records, std::string source);

  const std::vector<MersenneRecord>& records() const noexcept { return records_; }
  const std::string& source() const noexcept { return source_; }
  std::size_t size() const noexcept { return records_.size(); }
  int min_index() const noexcept { return records_.front().index; }
  int max_index() const noexcept { return records_.back().index; }
  bool has_years() const noexcept;

  /// Record with rank x; throws ValidationError if absent.
  const MersenneRecord& at_index(int x) const;

  /// Equality on records only; the provenance label is ignored.
  bool operator==(const Dataset& other) const { return records_ == other.records_; }

 private:
  std::vector<MersenneRecord> records_;
  std::string source_;
};

/// The 52 known exponents compiled in from data/mersenne_exponents.csv.
const Dataset& load_embedded();

Dataset load_csv(const std::filesystem::path& path, LoadOptions options = {});

/// Parses `x,p,year` rows (header optional, year column optional).
Dataset parse_csv(std::string_view text, std::string source, LoadOptions options = {});

/// Inverse of parse_csv; always writes the header.
std::string to_csv(const Dataset& ds);

/// Records with x_lo <= x <= x_hi, order preserved.
Dataset select_range(const Dataset& ds, int x_lo, int x_hi);

}  // namespace mersquad
