#include "hunkbench/conflict_markers.hpp"

#include "hunkbench/error.hpp"

namespace hunkbench {
namespace {

constexpr std::size_t kMarkerSize = 7;

void check_content(const LineSeq& seq, const char* where) {
    for (const auto& line : seq.lines) {
        if (marker_kind(line)) {
            throw MarkerInContent(std::string("marker-like line in ") + where + ": " + line);
        }
    }
}

void append_marker(std::string& out, char c, const std::string& label, std::string_view nl) {
    out.append(kMarkerSize, c);
    if (!label.empty()) {
        out.push_back(' ');
        out += label;
    }
    out += nl;
}

void append_lines(std::string& out, const LineSeq& seq, std::string_view nl) {
    for (const auto& line : seq.lines) {
        out += line;
        out += nl;
    }
}

}  // namespace

std::optional<MarkerKind> marker_kind(std::string_view line) noexcept {
    if (line.size() < kMarkerSize) return std::nullopt;
    const char c = line[0];
    for (std::size_t i = 1; i < kMarkerSize; ++i) {
        if (line[i] != c) return std::nullopt;
    }
    const bool bare = line.size() == kMarkerSize;
    const bool labelled = !bare && line[kMarkerSize] == ' ';
    switch (c) {
        case '<':
            if (bare || labelled) return MarkerKind::open;
            break;
        case '|':
            if (bare || labelled) return MarkerKind::base;
            break;
        case '>':
            if (bare || labelled) return MarkerKind::close;
            break;
        case '=':
            if (bare) return MarkerKind::separator;
            break;
        default:
            break;
    }
    return std::nullopt;
}

std::string render_conflict(const MergeOutcome& outcome, const MarkerLabels& labels) {
    std::string out;
    for (std::size_t i = 0; i < outcome.regions.size(); ++i) {
        const bool last = i + 1 == outcome.regions.size();
        if (const auto* s = std::get_if<StableRegion>(&outcome.regions[i])) {
            check_content(s->lines, "merged text");
            if (last) {
                out += s->lines.render();
            } else {
                append_lines(out, s->lines, eol_text(s->lines.eol));
            }
            continue;
        }
        const auto& c = std::get<ConflictRegion>(outcome.regions[i]);
        check_content(c.left, "left side");
        check_content(c.base, "base side");
        check_content(c.right, "right side");
        const auto nl = eol_text(c.left.eol);
        append_marker(out, '<', labels.left, nl);
        append_lines(out, c.left, nl);
        if (c.has_base) {
            append_marker(out, '|', labels.base, nl);
            append_lines(out, c.base, nl);
        }
        append_marker(out, '=', {}, nl);
        append_lines(out, c.right, nl);
        append_marker(out, '>', labels.right, nl);
    }
    return out;
}

MergeOutcome parse_conflict(std::string_view text) {
    const LineSeq doc = LineSeq::split(text);
    enum class State { outside, left, base, right };

    MergeOutcome out;
    State state = State::outside;
    LineSeq stable;
    stable.eol = doc.eol;
    ConflictRegion current;

    auto fresh = [&doc] {
        LineSeq s;
        s.eol = doc.eol;
        return s;
    };
    auto fail = [](std::size_t line_no, const char* what) {
        throw MalformedMarkers("line " + std::to_string(line_no + 1) + ": " + what);
    };

    for (std::size_t i = 0; i < doc.lines.size(); ++i) {
        const auto& line = doc.lines[i];
        const auto kind = marker_kind(line);
        if (!kind) {
            switch (state) {
                case State::outside: stable.lines.push_back(line); break;
                case State::left: current.left.lines.push_back(line); break;
                case State::base: current.base.lines.push_back(line); break;
                case State::right: current.right.lines.push_back(line); break;
            }
            continue;
        }
        switch (*kind) {
            case MarkerKind::open:
                if (state != State::outside) fail(i, "nested conflict opening marker");
                if (!stable.lines.empty()) {
                    out.regions.emplace_back(StableRegion{std::move(stable)});
                    stable = fresh();
                }
                current = ConflictRegion{fresh(), fresh(), fresh(), false};
                state = State::left;
                break;
            case MarkerKind::base:
                if (state != State::left) fail(i, "base marker outside the left section");
                current.has_base = true;
                state = State::base;
                break;
            case MarkerKind::separator:
                if (state != State::left && state != State::base) fail(i, "unexpected separator marker");
                state = State::right;
                break;
            case MarkerKind::close:
                if (state != State::right) fail(i, "closing marker without separator");
                out.regions.emplace_back(std::move(current));
                state = State::outside;
                break;
        }
    }
    if (state != State::outside) {
        throw MalformedMarkers("conflict opened but never closed");
    }
    if (!stable.lines.empty()) {
        stable.final_newline = doc.final_newline;
        out.regions.emplace_back(StableRegion{std::move(stable)});
    }
    return out;
}

}  // namespace hunkbench
