#pragma once

// Values as printed in the published analysis. These are reference data for
// divergence reporting only; nothing in the library derives results from them.

#include <array>
#include <cstdint>
#include <optional>

namespace mersquad::published {

struct ComparisonRow {
  int x;
  std::uint64_t p_actual;
  double n_exact;            // three decimals as printed
  std::uint64_t n_closest;
  std::uint64_t euler_value; // C(n_closest)
  std::uint64_t n2_plus_1;
  std::uint64_t n2_plus_n_17;
  std::uint64_t exp_prediction;
  std::uint64_t euler_diff;
  std::uint64_t n2_plus_1_diff;
  std::uint64_t n2_plus_n_17_diff;
  std::uint64_t exp_diff;
  double d;                  // deviation column
};

inline constexpr std::array<ComparisonRow, 6> kComparisonRows{{
    {30, 132049, 362.829, 363, 132173, 131769, 132017, 174337, 124, 280, 32, 42288, 0.829},
    {31, 216091, 464.312, 464, 215801, 216225, 216065, 208523, 290, 134, 26, 7568, 0.312},
    {32, 756839, 869.442, 869, 756071, 756900, 756813, 249374, 768, 61, 26, 507465, 0.442},
    {33, 859433, 926.534, 927, 860297, 859201, 859409, 298297, 864, 232, 24, 561136, 0.534},
    {34, 1257787, 1120.993, 1121, 1257803, 1257649, 1257763, 356844, 16, 138, 24, 900943, 0.007},
    {35, 1398269, 1181.967, 1182, 1398347, 1398544, 1398245, 426862, 78, 275, 24, 971407, 0.033},
}};

/// Printed row for index x, if any.
inline std::optional<ComparisonRow> comparison_row(int x) {
  for (const auto& r : kComparisonRows) {
    if (r.x == x) return r;
  }
  return std::nullopt;
}

struct CandidateRow {
  int index;
  std::uint64_t n;
  std::uint64_t c_value;
  double d;
};

inline constexpr std::array<CandidateRow, 5> kCandidateRows{{
    {53, 13200, 174253241, 0.400},
    {54, 15477, 239553049, 0.019},
    {55, 14861, 220864223, 0.021},
    {56, 14000, 196014041, 0.032},
    {57, 14500, 210264541, 0.038},
}};

inline constexpr double kEulerMaeText = 614.0;          // stated for x = 30..52
inline constexpr double kEulerMaeTableNote = 2604.7;    // stated for x = 30..52
inline constexpr double kN2Plus1Mae = 1956.3;
inline constexpr double kN2PlusN17Mae = 1170.8;
inline constexpr double kExpMaeTableNote = 5139116;
inline constexpr double kExpMaeText = 10466686;
inline constexpr double kExpRSquared = 0.974;
inline constexpr int kExactMatches = 7;                 // x = 10..52
inline constexpr int kCloseMatches = 4;
inline constexpr int kIntegerOnlyMatches = 3;
inline constexpr double kSearchReduction = 0.74;
inline constexpr std::array<int, 2> kClaimedExactIndices{38, 52};
inline constexpr std::uint64_t kUniqueCandidates = 560;
inline constexpr std::uint64_t kPrimeCandidates = 50;

}  // namespace mersquad::published
