#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hunkbench/line_seq.hpp"

namespace hunkbench {

struct Keep {
    std::size_t count = 0;
    friend bool operator==(const Keep&, const Keep&) = default;
};

struct Delete {
    std::size_t count = 0;
    friend bool operator==(const Delete&, const Delete&) = default;
};

struct Insert {
    std::vector<std::string> lines;
    friend bool operator==(const Insert&, const Insert&) = default;
};

using EditOp = std::variant<Keep, Delete, Insert>;

/// Line-level edit script. Within one changed region deletions come before
/// insertions.
struct EditScript {
    std::vector<EditOp> ops;

    /// Number of deleted plus inserted lines.
    std::size_t cost() const;

    std::size_t source_length() const;
    std::size_t target_length() const;

    /// Throws std::invalid_argument if the script does not fit `source`.
    std::vector<std::string> apply(const std::vector<std::string>& source) const;

    friend bool operator==(const EditScript&, const EditScript&) = default;
};

/// Shortest edit script from `a` to `b` (compares line text only).
EditScript diff_lines(const LineSeq& a, const LineSeq& b);

namespace detail {

/// One changed region: `a_count` lines of `a` starting at `a_start` are
/// replaced by `b_count` lines of `b` starting at `b_start`.
struct Change {
    std::size_t a_start = 0;
    std::size_t b_start = 0;
    std::size_t a_count = 0;
    std::size_t b_count = 0;
    friend bool operator==(const Change&, const Change&) = default;
};

enum class DiffMode {
    /// Exact Myers search over every line; the result is a shortest script.
    minimal,
    /// Mirrors git's xdiff defaults: lines occurring many times in the other
    /// file may be discarded when embedded in unmatched runs, and very costly
    /// searches fall back to heuristics. Used for merge replay so conflict
    /// boundaries agree with git.
    git_compatible,
};

/// Diffs two sequences of interned line ids. Equal ids mean equal lines.
/// Changes are returned in ascending order and are already slid to git's
/// canonical positions.
std::vector<Change> diff_ids(std::span<const std::uint32_t> a,
                             std::span<const std::uint32_t> b, DiffMode mode);

}  // namespace detail
}  // namespace hunkbench
