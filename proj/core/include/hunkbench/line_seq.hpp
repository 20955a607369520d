#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace hunkbench {

enum class Eol { lf, crlf };

/// A document as ordered lines (terminators excluded) plus the terminator
/// convention needed to reproduce its bytes exactly.
///
/// A document is CRLF only if every terminated line ends in "\r\n"; otherwise
/// stray carriage returns stay part of the line text so that
/// `LineSeq::split(t).render() == t` holds for every input.
struct LineSeq {
    std::vector<std::string> lines;
    Eol eol = Eol::lf;
    bool final_newline = true;

    LineSeq() = default;
    LineSeq(std::initializer_list<std::string> init) : lines(init) {}
    explicit LineSeq(std::vector<std::string> init) : lines(std::move(init)) {}

    static LineSeq split(std::string_view text);

    std::string render() const;

    /// Lines joined by '\n' with no trailing terminator.
    std::string joined() const;

    std::size_t size() const noexcept { return lines.size(); }
    bool empty() const noexcept { return lines.empty(); }

    friend bool operator==(const LineSeq&, const LineSeq&) = default;
};

std::string_view eol_text(Eol eol) noexcept;

}  // namespace hunkbench
