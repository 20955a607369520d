#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>

#include "hunkbench/language.hpp"
#include "hunkbench/miner.hpp"

namespace hunkbench {

struct ContextPolicy {
    std::size_t max_context_lines = 20;
    std::size_t max_side_lines = 20;
    std::size_t max_conflict_tokens = 512;
};

/// Throws std::invalid_argument when a limit is zero.
void validate(const ContextPolicy& policy);

/// A dataset record: one conflict hunk with its developer resolution.
struct MergeSample {
    std::string id;
    Language language = Language::unknown;
    /// Pre-context, diff3 markers and post-context, lines joined by '\n'.
    std::string conflict_text;
    LineSeq ground_truth;
    LineSeq left;
    LineSeq base;
    LineSeq right;
    LineSeq pre_context;
    LineSeq post_context;
    std::string repo_id;
    std::string merge_commit;
    std::string path;
    std::size_t hunk_index = 0;

    friend bool operator==(const MergeSample&, const MergeSample&) = default;
};

/// Rejection kinds in the order the checks run.
enum class RejectKind {
    spanning_context,
    missing_context,
    repeated_context,
    resolution_too_large,
    side_too_large,
    too_many_tokens,
    unknown_language,
};

std::string_view reject_kind_name(RejectKind kind) noexcept;

struct RejectReason {
    RejectKind kind;
    std::string detail;
};

struct AttachedContext {
    LineSeq pre;
    LineSeq post;
    /// True when a context stops at a neighbouring conflict rather than at
    /// the line limit or the file boundary.
    bool pre_bounded_by_conflict = false;
    bool post_bounded_by_conflict = false;
};

/// Up to `max_context_lines` stable lines on each side of the k-th conflict,
/// never reaching into another conflict.
AttachedContext attach_context(const MergeOutcome& outcome, std::size_t hunk_index,
                               const ContextPolicy& policy);

/// Aligns both contexts against the resolved file and returns the lines
/// between them. Empty contexts anchor at the start and end of the file.
std::variant<LineSeq, RejectReason> extract_resolution(const CandidateHunk& candidate,
                                                       const LineSeq& pre_context,
                                                       const LineSeq& post_context);

/// Same alignment over arbitrary lines (used to strip context from model output).
std::variant<LineSeq, RejectReason> align_between(const LineSeq& document, const LineSeq& pre_context,
                                                  const LineSeq& post_context);

class TokenCounter {
public:
    virtual ~TokenCounter() = default;
    virtual std::size_t count(std::string_view text) const = 0;
};

/// ceil(bytes / 4). A rough stand-in for a BPE tokenizer; real counts for
/// source code are usually in the same range but can differ either way.
class ByteRatioCounter final : public TokenCounter {
public:
    std::size_t count(std::string_view text) const override;
};

/// Greedy longest-match over a token vocabulary. Accepts either a
/// tokenizer.json (byte-level BPE vocabulary under model.vocab) or a plain
/// file with one token per line. Bytes not covered count one token each.
class VocabularyCounter final : public TokenCounter {
public:
    static VocabularyCounter load(const std::filesystem::path& path);

    std::size_t count(std::string_view text) const override;
    std::size_t vocabulary_size() const noexcept { return size_; }

private:
    VocabularyCounter() = default;
    void add(std::string_view token);

    std::vector<std::unordered_map<unsigned char, std::size_t>> nodes_;
    std::vector<bool> terminal_;
    std::size_t size_ = 0;
    bool byte_level_ = false;
};

/// Diff3 rendering of pre-context, the conflict and post-context.
std::string render_sample_conflict(const LineSeq& pre, const LineSeq& left, const LineSeq& base,
                                   const LineSeq& right, const LineSeq& post);

/// Size, token and language checks on an extracted sample.
std::optional<RejectReason> filter_sample(const MergeSample& sample, const ContextPolicy& policy,
                                          const TokenCounter& tokens);

/// Full extraction for one candidate: context, alignment, filters.
/// Throws MarkerInContent when a side contains marker-like lines.
std::variant<MergeSample, RejectReason> build_sample(const CandidateHunk& candidate,
                                                     const ContextPolicy& policy,
                                                     const TokenCounter& tokens);

}  // namespace hunkbench
