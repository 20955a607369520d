#include "hunkbench/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "hunkbench/error.hpp"

namespace hunkbench {

Report build_report(const std::vector<ResultRecord>& records, std::vector<std::string> input_hashes) {
    std::map<std::string, CategoryCounts> per_model;
    std::map<std::pair<std::string, Language>, CategoryCounts> per_language;
    std::map<std::string, std::size_t> errors;
    std::set<Language> languages;

    for (const auto& r : records) {
        if (!r.ok) {
            ++errors[r.model_id];
            continue;
        }
        per_model[r.model_id].add(r.category);
        per_language[{r.model_id, r.language}].add(r.category);
        languages.insert(r.language);
    }
    if (per_model.empty()) throw EmptyInput("no classified outputs in the results");

    Report report;
    report.input_hashes = std::move(input_hashes);
    for (const auto& [model, counts] : per_model) {
        auto row = aggregate(counts, model);
        if (const auto it = errors.find(model); it != errors.end()) row.errors = it->second;
        report.rows.push_back(std::move(row));
    }
    if (languages.size() > 1) {
        for (const auto& [key, counts] : per_language) {
            report.by_language.push_back({key.second, aggregate(counts, key.first)});
        }
    }
    for (const auto& [model, n] : errors) report.errors.push_back({model, n});
    return report;
}

std::string format_tenths(int tenths) { return fmt::format("{}.{}", tenths / 10, tenths % 10); }

namespace {

constexpr std::array<std::string_view, 5> kColumns = {
    "Equivalent text", "Code normalized equivalent", "Different code", "Conflict", "Invalid Markdown",
};

std::array<std::string, 5> cells(const ReportRow& row) {
    return {format_tenths(row.equivalent_text_tenths), format_tenths(row.code_normalized_equivalent_tenths),
            format_tenths(row.different_code_tenths), format_tenths(row.conflict_tenths),
            format_tenths(row.invalid_markdown_tenths)};
}

void append_table(std::string& out, std::string_view first_header,
                  const std::vector<std::pair<std::string, const ReportRow*>>& rows) {
    std::size_t first_width = first_header.size();
    for (const auto& [label, row] : rows) first_width = std::max(first_width, label.size());

    out += fmt::format("{:<{}}", first_header, first_width);
    for (auto col : kColumns) out += fmt::format("  {}", col);
    out += "  Outputs\n";
    for (const auto& [label, row] : rows) {
        out += fmt::format("{:<{}}", label, first_width);
        const auto values = cells(*row);
        for (std::size_t i = 0; i < kColumns.size(); ++i) out += fmt::format("  {:>{}}", values[i], kColumns[i].size());
        out += fmt::format("  {:>7}\n", row->counts.total());
    }
}

}  // namespace

std::string render_text(const Report& report) {
    std::string out;
    for (const auto& h : report.input_hashes) out += fmt::format("input sha256 {}\n", h);
    out.push_back('\n');

    std::vector<std::pair<std::string, const ReportRow*>> rows;
    for (const auto& r : report.rows) rows.emplace_back(r.model_id, &r);
    append_table(out, "Model", rows);

    if (!report.by_language.empty()) {
        out += "\nBy language\n";
        rows.clear();
        for (const auto& b : report.by_language)
            rows.emplace_back(fmt::format("{} / {}", b.row.model_id, language_id(b.language)), &b.row);
        append_table(out, "Model / language", rows);
    }

    if (!report.errors.empty()) {
        out += "\nEndpoint errors (excluded from percentages)\n";
        for (const auto& e : report.errors) out += fmt::format("  {}: {}\n", e.model_id, e.errors);
    }
    return out;
}

std::string render_csv(const Report& report) {
    std::string out =
        "model,language,outputs,equivalent_text,code_normalized_equivalent,different_code,conflict,invalid_markdown,"
        "errors\n";
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q.push_back('"');
            q.push_back(c);
        }
        return q + "\"";
    };
    auto line = [&](const ReportRow& r, std::string_view lang, std::size_t errors) {
        const auto v = cells(r);
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", quote(r.model_id), lang, r.counts.total(), v[0], v[1], v[2],
                           v[3], v[4], errors);
    };
    for (const auto& r : report.rows) line(r, "all", r.errors);
    for (const auto& b : report.by_language) line(b.row, language_id(b.language), 0);
    return out;
}

}  // namespace hunkbench
