#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hunkbench/merge.hpp"

namespace hunkbench {

/// Optional text written after the opening, base and closing markers.
struct MarkerLabels {
    std::string left;
    std::string base;
    std::string right;
};

enum class MarkerKind { open, base, separator, close };

/// Recognises a marker line: exactly seven marker characters at column 0,
/// optionally followed by a space and a label (not allowed on the separator).
std::optional<MarkerKind> marker_kind(std::string_view line) noexcept;

/// Renders an outcome diff3-style. Throws MarkerInContent if any region
/// holds a line that would be read back as a marker.
std::string render_conflict(const MergeOutcome& outcome, const MarkerLabels& labels = {});

/// Inverse of render_conflict. Labels are discarded; two-section conflicts
/// (no base section) are accepted with `has_base == false`.
/// Throws MalformedMarkers.
MergeOutcome parse_conflict(std::string_view text);

}  // namespace hunkbench
