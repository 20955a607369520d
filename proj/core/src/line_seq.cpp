#include "hunkbench/line_seq.hpp"

namespace hunkbench {

std::string_view eol_text(Eol eol) noexcept {
    return eol == Eol::crlf ? std::string_view("\r\n") : std::string_view("\n");
}

LineSeq LineSeq::split(std::string_view text) {
    LineSeq out;
    std::size_t terminated = 0;
    std::size_t with_cr = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            out.lines.emplace_back(text.substr(start));
            out.final_newline = false;
            break;
        }
        auto line = text.substr(start, nl - start);
        ++terminated;
        if (!line.empty() && line.back() == '\r') ++with_cr;
        out.lines.emplace_back(line);
        start = nl + 1;
    }
    if (terminated > 0 && with_cr == terminated) {
        out.eol = Eol::crlf;
        const std::size_t n = out.final_newline ? out.lines.size() : out.lines.size() - 1;
        for (std::size_t i = 0; i < n; ++i) out.lines[i].pop_back();
    }
    return out;
}

std::string LineSeq::render() const {
    std::string out;
    const auto nl = eol_text(eol);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        if (i + 1 < lines.size() || final_newline) out += nl;
    }
    return out;
}

std::string LineSeq::joined() const {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i > 0) out.push_back('\n');
        out += lines[i];
    }
    return out;
}

}  // namespace hunkbench
