#pragma once

#include <string>
#include <vector>

#include "hunkbench/classifier.hpp"
#include "hunkbench/dataset.hpp"

namespace hunkbench {

struct LanguageBreakdownRow {
    Language language = Language::unknown;
    ReportRow row;
};

struct ModelErrors {
    std::string model_id;
    std::size_t errors = 0;
};

struct Report {
    /// SHA-256 of every input results file, in argument order.
    std::vector<std::string> input_hashes;
    /// One row per model, ordered by model id.
    std::vector<ReportRow> rows;
    /// Rows per (model, language); filled only when results span languages.
    std::vector<LanguageBreakdownRow> by_language;
    /// Endpoint failures per model; excluded from the percentages.
    std::vector<ModelErrors> errors;
};

/// Throws EmptyInput when no record has a classification.
Report build_report(const std::vector<ResultRecord>& records, std::vector<std::string> input_hashes);

/// "54.7" for 547.
std::string format_tenths(int tenths);

/// Aligned text table with the input hashes on top and errors in the footer.
std::string render_text(const Report& report);

/// model,language,outputs,... with language "all" for the overall rows.
std::string render_csv(const Report& report);

}  // namespace hunkbench
