#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hunkbench/extractor.hpp"

namespace hunkbench {

enum class Category {
    text_equivalent,
    normalized_equivalent_only,
    different_code,
    conflict_preserved,
    invalid_markdown,
};

inline constexpr std::array<Category, 5> kCategories = {
    Category::text_equivalent, Category::normalized_equivalent_only, Category::different_code,
    Category::conflict_preserved, Category::invalid_markdown,
};

std::string_view category_name(Category c) noexcept;
std::optional<Category> parse_category(std::string_view name) noexcept;

struct ModelOutput {
    std::string raw_text;
    std::string sample_id;
    std::string model_id;
};

/// Content of the first fenced code block. A fence is a line starting
/// (after indentation) with three backticks; the opener may carry a tag.
/// Fences inside a leading <think>...</think> span are skipped.
std::optional<std::string> extract_code_block(std::string_view raw_text);

Category classify(std::string_view raw_text, const MergeSample& sample);

struct RewardBreakdown {
    int reasoning = 0;
    int format = 0;
    double resolution = 0.0;

    double total() const noexcept { return reasoning + format + resolution; }
    friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

/// True when the text holds <think> followed by </think>, with the opening
/// tag before the first code fence.
bool has_reasoning(std::string_view raw_text);

/// 1.0, 0.5, 0.1 or 0.0 by category.
double resolution_reward(Category c) noexcept;

RewardBreakdown reward_for(std::string_view raw_text, Category c);
RewardBreakdown compute_reward(std::string_view raw_text, const MergeSample& sample);

/// Counts per category, indexed by the enum value.
struct CategoryCounts {
    std::array<std::size_t, 5> by_category{};

    void add(Category c) noexcept { ++by_category[static_cast<std::size_t>(c)]; }
    std::size_t operator[](Category c) const noexcept { return by_category[static_cast<std::size_t>(c)]; }
    std::size_t total() const noexcept;
    CategoryCounts& operator+=(const CategoryCounts& other) noexcept;
    friend bool operator==(const CategoryCounts&, const CategoryCounts&) = default;
};

/// One row of the results table. Percentages are exact; the `tenths`
/// fields are the same values rounded to 0.1 so that the four disjoint
/// columns still add up to exactly 100.0.
struct ReportRow {
    std::string model_id;
    CategoryCounts counts;
    std::size_t errors = 0;

    double equivalent_text = 0;
    double code_normalized_equivalent = 0;
    double different_code = 0;
    double conflict = 0;
    double invalid_markdown = 0;

    int equivalent_text_tenths = 0;
    int code_normalized_equivalent_tenths = 0;
    int different_code_tenths = 0;
    int conflict_tenths = 0;
    int invalid_markdown_tenths = 0;
};

/// Throws EmptyInput when no outputs were classified.
ReportRow aggregate(std::span<const Category> classifications, const std::string& model_id);
ReportRow aggregate(const CategoryCounts& counts, const std::string& model_id);

}  // namespace hunkbench
