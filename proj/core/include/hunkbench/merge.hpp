#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "hunkbench/line_seq.hpp"

namespace hunkbench {

/// Lines all three versions agree on after merging.
struct StableRegion {
    LineSeq lines;
    friend bool operator==(const StableRegion&, const StableRegion&) = default;
};

/// A region where both sides changed the base differently.
/// `has_base` is false only for two-section conflicts read back by
/// parse_conflict.
struct ConflictRegion {
    LineSeq left;
    LineSeq base;
    LineSeq right;
    bool has_base = true;
    friend bool operator==(const ConflictRegion&, const ConflictRegion&) = default;
};

using Region = std::variant<StableRegion, ConflictRegion>;

struct MergeOutcome {
    std::vector<Region> regions;

    std::size_t conflict_count() const;
    bool clean() const { return conflict_count() == 0; }

    /// Region index of the k-th conflict. Throws std::out_of_range.
    std::size_t conflict_region_index(std::size_t k) const;
    const ConflictRegion& conflict(std::size_t k) const;

    /// Document obtained by taking one side of every conflict.
    LineSeq take_left() const;
    LineSeq take_right() const;

    friend bool operator==(const MergeOutcome&, const MergeOutcome&) = default;
};

/// One conflicted region plus the identical lines around it.
struct ConflictHunk {
    LineSeq pre_context;
    LineSeq left;
    LineSeq base;
    LineSeq right;
    LineSeq post_context;
    friend bool operator==(const ConflictHunk&, const ConflictHunk&) = default;
};

struct MergeOptions {
    /// Conflicts separated by fewer merged lines than this are joined into
    /// one region. Zero joins only conflicts that touch.
    std::size_t coalesce_gap = 0;
};

/// Three-way line merge. Changes made by one side only are taken; identical
/// changes on both sides are taken once; everything else becomes a conflict.
/// Region boundaries agree with `git merge-file --diff3`.
MergeOutcome merge3(const LineSeq& base, const LineSeq& left, const LineSeq& right,
                    const MergeOptions& options = {});

}  // namespace hunkbench
