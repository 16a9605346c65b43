#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mersquad/candidates.hpp"
#include "mersquad/dataset.hpp"
#include "mersquad/evaluation.hpp"

namespace mersquad {

enum class Format { Csv, Markdown, Json };

/// "csv", "json", "md" / "markdown". Throws ValidationError otherwise.
Format parse_format(std::string_view name);
std::string_view extension(Format format);

/// Fixed-point formatting used for every emitted real.
std::string fixed(double value, int decimals);

/// Renders comparison table 1, 2 or 3 over the report's rows.
///
/// Tables 1 and 2 need the euler model (table 1 adds exp columns when the
/// report has them); table 3 needs all four models.
/// Each row carries a `divergence` column listing `column:printed` pairs for
/// every cell whose recomputed value differs from the published table.
std::string emit_table(const EvaluationReport& report, int table_id, Format format);

/// Per-model evaluated/exact/close/MAE/search-reduction.
std::string emit_summary(const EvaluationReport& report, Format format);

struct FigureInputs {
  const EvaluationReport* report = nullptr;        // figures 1 and 4
  const Dataset* dataset = nullptr;                // figure 3
  const std::vector<Selection>* selections = nullptr; // figure 2
};

/// CSV series for figure 1..4. Throws ValidationError on missing inputs,
/// an empty range, or (figure 3) records without a year.
std::string emit_figure_data(const FigureInputs& inputs, int figure_id);

}  // namespace mersquad
