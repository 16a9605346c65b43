#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mersquad/dataset.hpp"
#include "mersquad/report.hpp"

namespace mersquad {

/// A published headline figure next to its recomputation.
struct ClaimCheck {
  std::string claim;       // short identifier, e.g. "euler_mae_30_52_text"
  std::string published;
  std::string recomputed;
  bool consistent = false;
  std::string note;
};

/// Perfect-square test of the Euler discriminant 4p - 163 for an index the
/// published text calls an exact match.
struct ExactClaimCheck {
  int x = 0;
  std::uint64_t p = 0;
  std::uint64_t discriminant = 0;
  std::uint64_t isqrt_discriminant = 0;
  bool perfect_square = false;
};

struct AuditReport {
  std::vector<ClaimCheck> checks;
  std::vector<int> exact_indices;          // x in 10..52 with p = C(n) exactly
  std::vector<int> close_indices;          // x in 10..52 with 0 < d < 0.1
  std::vector<ExactClaimCheck> claimed_exact;
};

/// Recomputes every headline figure over ds. Requires indices 1..52.
AuditReport audit(const Dataset& ds);

std::string emit_audit(const AuditReport& report, Format format);

}  // namespace mersquad
