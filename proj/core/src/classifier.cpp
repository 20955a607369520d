#include "hunkbench/classifier.hpp"

#include <algorithm>
#include <numeric>

#include "hunkbench/conflict_markers.hpp"
#include "hunkbench/error.hpp"
#include "hunkbench/normalizer.hpp"

namespace hunkbench {

std::string_view category_name(Category c) noexcept {
    switch (c) {
        case Category::text_equivalent: return "TextEquivalent";
        case Category::normalized_equivalent_only: return "NormalizedEquivalentOnly";
        case Category::different_code: return "DifferentCode";
        case Category::conflict_preserved: return "ConflictPreserved";
        case Category::invalid_markdown: return "InvalidMarkdown";
    }
    return "";
}

std::optional<Category> parse_category(std::string_view name) noexcept {
    for (auto c : kCategories) {
        if (category_name(c) == name) return c;
    }
    return std::nullopt;
}

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";

struct Line {
    std::size_t begin;
    std::string_view text;  // without '\n' and trailing '\r'
};

std::vector<Line> lines_of(std::string_view s, std::size_t from) {
    std::vector<Line> out;
    std::size_t pos = from;
    while (pos <= s.size()) {
        auto end = s.find('\n', pos);
        if (end == std::string_view::npos) end = s.size();
        auto text = s.substr(pos, end - pos);
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        out.push_back({pos, text});
        if (end == s.size()) break;
        pos = end + 1;
    }
    return out;
}

std::string_view after_indent(std::string_view line) {
    const auto k = line.find_first_not_of(" \t");
    return k == std::string_view::npos ? std::string_view{} : line.substr(k);
}

bool opens_fence(std::string_view line) {
    const auto t = after_indent(line);
    return t.starts_with("```") && t.substr(3).find('`') == std::string_view::npos;
}

bool closes_fence(std::string_view line) { return after_indent(line).starts_with("```"); }

/// Offset of the first opening fence line at or after `from`.
std::optional<std::size_t> first_fence(std::string_view s, std::size_t from) {
    for (const auto& l : lines_of(s, from)) {
        if (opens_fence(l.text)) return l.begin;
    }
    return std::nullopt;
}

std::size_t search_start(std::string_view raw) {
    const auto open = raw.find(kThinkOpen);
    if (open == std::string_view::npos) return 0;
    const auto close = raw.find(kThinkClose, open);
    if (close == std::string_view::npos) return 0;
    const auto fence = first_fence(raw, 0);
    if (fence && *fence < open) return 0;
    // Resume at the start of the line after the closing tag.
    const auto nl = raw.find('\n', close);
    return nl == std::string_view::npos ? raw.size() : nl + 1;
}

}  // namespace

std::optional<std::string> extract_code_block(std::string_view raw_text) {
    const auto lines = lines_of(raw_text, search_start(raw_text));
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!opens_fence(lines[i].text)) continue;
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (!closes_fence(lines[j].text)) continue;
            std::string code;
            for (std::size_t k = i + 1; k < j; ++k) {
                if (k > i + 1) code.push_back('\n');
                code += lines[k].text;
            }
            return code;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

bool has_reasoning(std::string_view raw_text) {
    const auto open = raw_text.find(kThinkOpen);
    if (open == std::string_view::npos) return false;
    if (raw_text.find(kThinkClose, open + kThinkOpen.size()) == std::string_view::npos) return false;
    const auto fence = first_fence(raw_text, 0);
    return !fence || open < *fence;
}

double resolution_reward(Category c) noexcept {
    switch (c) {
        case Category::text_equivalent: return 1.0;
        case Category::normalized_equivalent_only: return 0.5;
        case Category::conflict_preserved: return 0.1;
        case Category::different_code:
        case Category::invalid_markdown: return 0.0;
    }
    return 0.0;
}

namespace {

LineSeq lines_from_block(const std::string& code) {
    LineSeq seq;
    std::size_t pos = 0;
    while (true) {
        const auto end = code.find('\n', pos);
        seq.lines.push_back(code.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    if (code.empty()) seq.lines.clear();
    return seq;
}

bool preserves_conflict(const LineSeq& stripped, const MergeSample& sample) {
    try {
        const auto outcome = parse_conflict(stripped.joined() + "\n");
        if (outcome.conflict_count() != 1) return false;
        for (const auto& r : outcome.regions) {
            if (const auto* s = std::get_if<StableRegion>(&r); s && !s->lines.empty()) return false;
        }
        const auto& c = outcome.conflict(0);
        if (c.left.lines != sample.left.lines || c.right.lines != sample.right.lines) return false;
        return !c.has_base || c.base.lines == sample.base.lines;
    } catch (const MalformedMarkers&) {
        return false;
    }
}

}  // namespace

Category classify(std::string_view raw_text, const MergeSample& sample) {
    const auto code = extract_code_block(raw_text);
    if (!code) return Category::invalid_markdown;

    const auto aligned = align_between(lines_from_block(*code), sample.pre_context, sample.post_context);
    if (!std::holds_alternative<LineSeq>(aligned)) return Category::different_code;
    const auto& stripped = std::get<LineSeq>(aligned);

    if (preserves_conflict(stripped, sample)) return Category::conflict_preserved;
    if (stripped.lines == sample.ground_truth.lines) return Category::text_equivalent;
    try {
        if (code_equivalent(stripped.joined(), sample.ground_truth.joined(), sample.language))
            return Category::normalized_equivalent_only;
    } catch (const UnsupportedLanguage&) {
    }
    return Category::different_code;
}

RewardBreakdown reward_for(std::string_view raw_text, Category c) {
    RewardBreakdown r;
    r.reasoning = has_reasoning(raw_text) ? 1 : 0;
    r.format = c == Category::invalid_markdown ? 0 : 1;
    r.resolution = resolution_reward(c);
    return r;
}

RewardBreakdown compute_reward(std::string_view raw_text, const MergeSample& sample) {
    return reward_for(raw_text, classify(raw_text, sample));
}

std::size_t CategoryCounts::total() const noexcept {
    return std::accumulate(by_category.begin(), by_category.end(), std::size_t{0});
}

CategoryCounts& CategoryCounts::operator+=(const CategoryCounts& other) noexcept {
    for (std::size_t i = 0; i < by_category.size(); ++i) by_category[i] += other.by_category[i];
    return *this;
}

ReportRow aggregate(std::span<const Category> classifications, const std::string& model_id) {
    CategoryCounts counts;
    for (auto c : classifications) counts.add(c);
    return aggregate(counts, model_id);
}

ReportRow aggregate(const CategoryCounts& counts, const std::string& model_id) {
    const auto n = counts.total();
    if (n == 0) throw EmptyInput("no classified outputs for model '" + model_id + "'");

    ReportRow row;
    row.model_id = model_id;
    row.counts = counts;
    const auto pct = [n](std::size_t k) { return 100.0 * static_cast<double>(k) / static_cast<double>(n); };
    row.equivalent_text = pct(counts[Category::text_equivalent]);
    row.code_normalized_equivalent =
        pct(counts[Category::text_equivalent] + counts[Category::normalized_equivalent_only]);
    row.different_code = pct(counts[Category::different_code]);
    row.conflict = pct(counts[Category::conflict_preserved]);
    row.invalid_markdown = pct(counts[Category::invalid_markdown]);

    // Largest-remainder rounding to tenths over the five disjoint parts,
    // computed in integers: part_i * 1000 / n.
    std::array<std::size_t, 5> tenths{};
    std::array<std::size_t, 5> remainder{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        const auto scaled = counts.by_category[i] * 1000;
        tenths[i] = scaled / n;
        remainder[i] = scaled % n;
        assigned += tenths[i];
    }
    std::array<std::size_t, 5> order{0, 1, 2, 3, 4};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t k = 0; assigned < 1000; ++k, ++assigned) ++tenths[order[k]];

    const auto t = [&](Category c) { return static_cast<int>(tenths[static_cast<std::size_t>(c)]); };
    row.equivalent_text_tenths = t(Category::text_equivalent);
    row.code_normalized_equivalent_tenths = t(Category::text_equivalent) + t(Category::normalized_equivalent_only);
    row.different_code_tenths = t(Category::different_code);
    row.conflict_tenths = t(Category::conflict_preserved);
    row.invalid_markdown_tenths = t(Category::invalid_markdown);
    return row;
}

}  // namespace hunkbench
