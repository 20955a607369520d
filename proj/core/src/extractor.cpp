#include "hunkbench/extractor.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "hunkbench/conflict_markers.hpp"
#include "hunkbench/error.hpp"

namespace hunkbench {

void validate(const ContextPolicy& policy) {
    if (policy.max_context_lines == 0 || policy.max_side_lines == 0 || policy.max_conflict_tokens == 0)
        throw std::invalid_argument("context policy limits must be positive");
}

std::string_view reject_kind_name(RejectKind kind) noexcept {
    switch (kind) {
        case RejectKind::spanning_context: return "SpanningContext";
        case RejectKind::missing_context: return "MissingContext";
        case RejectKind::repeated_context: return "RepeatedContext";
        case RejectKind::resolution_too_large: return "ResolutionTooLarge";
        case RejectKind::side_too_large: return "SideTooLarge";
        case RejectKind::too_many_tokens: return "TooManyTokens";
        case RejectKind::unknown_language: return "UnknownLanguage";
    }
    return "Unknown";
}

AttachedContext attach_context(const MergeOutcome& outcome, std::size_t hunk_index,
                               const ContextPolicy& policy) {
    const auto at = outcome.conflict_region_index(hunk_index);
    const auto& regions = outcome.regions;
    AttachedContext ctx;
    ctx.pre.eol = ctx.post.eol = outcome.conflict(hunk_index).left.eol;

    // Regions come out of merge3 alternating, but parsed outcomes may hold
    // empty stable regions; walk over stable regions only.
    std::vector<std::string> before;
    std::size_t i = at;
    while (i > 0 && std::holds_alternative<StableRegion>(regions[i - 1])) {
        const auto& lines = std::get<StableRegion>(regions[i - 1]).lines.lines;
        before.insert(before.begin(), lines.begin(), lines.end());
        --i;
    }
    const bool conflict_before = i > 0;
    if (before.size() > policy.max_context_lines) {
        before.erase(before.begin(), before.end() - static_cast<std::ptrdiff_t>(policy.max_context_lines));
    } else {
        ctx.pre_bounded_by_conflict = conflict_before;
    }
    ctx.pre.lines = std::move(before);

    std::vector<std::string> after;
    std::size_t j = at + 1;
    bool last_terminated = true;
    while (j < regions.size() && std::holds_alternative<StableRegion>(regions[j])) {
        const auto& stable = std::get<StableRegion>(regions[j]).lines;
        after.insert(after.end(), stable.lines.begin(), stable.lines.end());
        if (!stable.empty()) last_terminated = stable.final_newline;
        ++j;
    }
    const bool conflict_after = j < regions.size();
    if (after.size() > policy.max_context_lines) {
        after.resize(policy.max_context_lines);
    } else {
        ctx.post_bounded_by_conflict = conflict_after;
        ctx.post.final_newline = last_terminated;
    }
    ctx.post.lines = std::move(after);
    return ctx;
}

namespace {

std::vector<std::size_t> occurrences(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
    std::vector<std::size_t> out;
    if (needle.size() > hay.size()) return out;
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i)))
            out.push_back(i);
    }
    return out;
}

}  // namespace

std::variant<LineSeq, RejectReason> align_between(const LineSeq& document, const LineSeq& pre_context,
                                                  const LineSeq& post_context) {
    const auto& lines = document.lines;
    std::size_t pre_pos = 0;
    if (!pre_context.empty()) {
        const auto hits = occurrences(lines, pre_context.lines);
        if (hits.empty()) return RejectReason{RejectKind::missing_context, "pre-context not found"};
        if (hits.size() > 1)
            return RejectReason{RejectKind::repeated_context,
                                "pre-context occurs " + std::to_string(hits.size()) + " times"};
        pre_pos = hits.front();
    }
    std::size_t post_pos = lines.size();
    if (!post_context.empty()) {
        const auto hits = occurrences(lines, post_context.lines);
        if (hits.empty()) return RejectReason{RejectKind::missing_context, "post-context not found"};
        if (hits.size() > 1)
            return RejectReason{RejectKind::repeated_context,
                                "post-context occurs " + std::to_string(hits.size()) + " times"};
        post_pos = hits.front();
    }
    const auto pre_end = pre_pos + pre_context.size();
    if (post_pos < pre_pos) return RejectReason{RejectKind::missing_context, "post-context precedes pre-context"};

    LineSeq out;
    out.eol = document.eol;
    if (post_pos > pre_end) {
        out.lines.assign(lines.begin() + static_cast<std::ptrdiff_t>(pre_end),
                         lines.begin() + static_cast<std::ptrdiff_t>(post_pos));
    }
    out.final_newline = post_pos < lines.size() || document.final_newline;
    return out;
}

std::variant<LineSeq, RejectReason> extract_resolution(const CandidateHunk& candidate,
                                                       const LineSeq& pre_context,
                                                       const LineSeq& post_context) {
    return align_between(candidate.resolved_file, pre_context, post_context);
}

std::size_t ByteRatioCounter::count(std::string_view text) const { return (text.size() + 3) / 4; }

namespace {

// Byte-level BPE vocabularies spell each byte as one printable code point.
std::array<int, 512> byte_level_decoder() {
    std::array<int, 512> decode{};
    decode.fill(-1);
    int extra = 0;
    for (int b = 0; b < 256; ++b) {
        const bool printable = (b >= 33 && b <= 126) || (b >= 161 && b <= 172) || (b >= 174 && b <= 255);
        const int cp = printable ? b : 256 + extra++;
        decode[static_cast<std::size_t>(cp)] = b;
    }
    return decode;
}

std::optional<std::string> decode_byte_level(std::string_view token) {
    static const auto decode = byte_level_decoder();
    std::string out;
    for (std::size_t i = 0; i < token.size();) {
        const auto c = static_cast<unsigned char>(token[i]);
        std::uint32_t cp = 0;
        std::size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c & 0xE0) == 0xC0 && i + 1 < token.size()) {
            cp = ((c & 0x1Fu) << 6) | (static_cast<unsigned char>(token[i + 1]) & 0x3Fu);
            len = 2;
        } else {
            return std::nullopt;
        }
        if (cp >= decode.size() || decode[cp] < 0) return std::nullopt;
        out.push_back(static_cast<char>(decode[cp]));
        i += len;
    }
    return out;
}

}  // namespace

void VocabularyCounter::add(std::string_view token) {
    if (token.empty()) return;
    std::size_t node = 0;
    for (const char ch : token) {
        const auto c = static_cast<unsigned char>(ch);
        auto it = nodes_[node].find(c);
        if (it == nodes_[node].end()) {
            nodes_.emplace_back();
            terminal_.push_back(false);
            it = nodes_[node].emplace(c, nodes_.size() - 1).first;
        }
        node = it->second;
    }
    if (!terminal_[node]) {
        terminal_[node] = true;
        ++size_;
    }
}

VocabularyCounter VocabularyCounter::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read vocabulary " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    VocabularyCounter counter;
    counter.nodes_.emplace_back();
    counter.terminal_.push_back(false);

    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (!doc.is_discarded() && doc.is_object()) {
        const auto model = doc.find("model");
        if (model == doc.end() || !model->contains("vocab") || !(*model)["vocab"].is_object())
            throw FormatError("tokenizer file has no model.vocab object: " + path.string());
        counter.byte_level_ = true;
        for (const auto& [token, id] : (*model)["vocab"].items()) {
            if (auto raw = decode_byte_level(token)) counter.add(*raw);
        }
    } else {
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) counter.add(line);
    }
    if (counter.size_ == 0) throw FormatError("empty vocabulary " + path.string());
    return counter;
}

std::size_t VocabularyCounter::count(std::string_view text) const {
    std::size_t tokens = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t node = 0;
        std::size_t best = 0;
        for (std::size_t k = i; k < text.size(); ++k) {
            const auto it = nodes_[node].find(static_cast<unsigned char>(text[k]));
            if (it == nodes_[node].end()) break;
            node = it->second;
            if (terminal_[node]) best = k + 1 - i;
        }
        i += best == 0 ? 1 : best;
        ++tokens;
    }
    return tokens;
}

std::string render_sample_conflict(const LineSeq& pre, const LineSeq& left, const LineSeq& base,
                                   const LineSeq& right, const LineSeq& post) {
    MergeOutcome outcome;
    if (!pre.empty()) outcome.regions.emplace_back(StableRegion{pre});
    outcome.regions.emplace_back(ConflictRegion{left, base, right});
    if (!post.empty()) outcome.regions.emplace_back(StableRegion{post});
    // Normalise terminators so the text is plain '\n'-separated lines.
    for (auto& r : outcome.regions) {
        std::visit(
            [](auto& reg) {
                if constexpr (std::is_same_v<std::decay_t<decltype(reg)>, StableRegion>) {
                    reg.lines.eol = Eol::lf;
                    reg.lines.final_newline = true;
                } else {
                    for (auto* s : {&reg.left, &reg.base, &reg.right}) {
                        s->eol = Eol::lf;
                        s->final_newline = true;
                    }
                }
            },
            r);
    }
    auto text = render_conflict(outcome);
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
}

std::optional<RejectReason> filter_sample(const MergeSample& sample, const ContextPolicy& policy,
                                          const TokenCounter& tokens) {
    const auto sides = sample.left.size() + sample.base.size() + sample.right.size();
    if (sample.ground_truth.size() > sides) {
        return RejectReason{RejectKind::resolution_too_large,
                            "resolution has " + std::to_string(sample.ground_truth.size()) +
                                " lines, sides total " + std::to_string(sides)};
    }
    const std::pair<const char*, const LineSeq*> parts[] = {
        {"left", &sample.left},
        {"base", &sample.base},
        {"right", &sample.right},
        {"resolution", &sample.ground_truth},
    };
    for (const auto& [name, seq] : parts) {
        if (seq->size() > policy.max_side_lines) {
            return RejectReason{RejectKind::side_too_large,
                                std::string(name) + " has " + std::to_string(seq->size()) + " lines"};
        }
    }
    const auto n = tokens.count(sample.conflict_text);
    if (n > policy.max_conflict_tokens)
        return RejectReason{RejectKind::too_many_tokens, "conflict text has " + std::to_string(n) + " tokens"};
    if (sample.language == Language::unknown)
        return RejectReason{RejectKind::unknown_language, "no language for " + sample.path};
    return std::nullopt;
}

std::variant<MergeSample, RejectReason> build_sample(const CandidateHunk& candidate,
                                                     const ContextPolicy& policy,
                                                     const TokenCounter& tokens) {
    auto ctx = attach_context(candidate.neighbourhood, candidate.local_index, policy);
    if (ctx.pre.empty() && ctx.pre_bounded_by_conflict)
        return RejectReason{RejectKind::spanning_context, "no stable line before the hunk"};
    if (ctx.post.empty() && ctx.post_bounded_by_conflict)
        return RejectReason{RejectKind::spanning_context, "no stable line after the hunk"};

    auto resolution = extract_resolution(candidate, ctx.pre, ctx.post);
    if (auto* reject = std::get_if<RejectReason>(&resolution)) return std::move(*reject);

    MergeSample s;
    s.id = candidate.id();
    s.language = candidate.language;
    s.ground_truth = std::move(std::get<LineSeq>(resolution));
    s.left = candidate.hunk.left;
    s.base = candidate.hunk.base;
    s.right = candidate.hunk.right;
    s.pre_context = std::move(ctx.pre);
    s.post_context = std::move(ctx.post);
    s.conflict_text = render_sample_conflict(s.pre_context, s.left, s.base, s.right, s.post_context);
    s.repo_id = candidate.scenario->repo_id;
    s.merge_commit = candidate.scenario->merge_commit;
    s.path = candidate.path;
    s.hunk_index = candidate.hunk_index;

    if (auto reject = filter_sample(s, policy, tokens)) return std::move(*reject);
    return s;
}

}  // namespace hunkbench
