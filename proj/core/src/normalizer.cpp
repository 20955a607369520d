#include "hunkbench/normalizer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

#include "hunkbench/error.hpp"

namespace hunkbench {

namespace {

StringStyle quoted(std::string q, bool multiline = false, std::string interpolation = {}) {
    return StringStyle{q, q, '\\', multiline, std::move(interpolation)};
}

StringStyle unescaped(std::string q, bool multiline) { return StringStyle{q, q, 0, multiline, {}}; }

std::vector<LanguageProfile> build_profiles() {
    const std::vector<std::string> slashes = {"//"};
    const std::vector<std::pair<std::string, std::string>> c_block = {{"/*", "*/"}};
    std::vector<LanguageProfile> all;

    LanguageProfile c;
    c.language = Language::c;
    c.line_comment_openers = slashes;
    c.block_comment_delimiters = c_block;
    c.string_delimiters = {quoted("\""), quoted("'")};
    c.line_comment_continuation = true;
    c.digit_separators = true;
    all.push_back(c);

    LanguageProfile cpp = c;
    cpp.language = Language::cpp;
    cpp.cpp_raw_strings = true;
    all.push_back(cpp);

    LanguageProfile cs;
    cs.language = Language::csharp;
    cs.line_comment_openers = slashes;
    cs.block_comment_delimiters = c_block;
    cs.string_delimiters = {quoted("\""), quoted("'")};
    cs.csharp_strings = true;
    all.push_back(cs);

    LanguageProfile go;
    go.language = Language::go;
    go.line_comment_openers = slashes;
    go.block_comment_delimiters = c_block;
    go.string_delimiters = {quoted("\""), quoted("'"), unescaped("`", true)};
    all.push_back(go);

    LanguageProfile java;
    java.language = Language::java;
    java.line_comment_openers = slashes;
    java.block_comment_delimiters = c_block;
    java.string_delimiters = {quoted("\"\"\"", true), quoted("\""), quoted("'")};
    all.push_back(java);

    LanguageProfile js;
    js.language = Language::javascript;
    js.line_comment_openers = slashes;
    js.block_comment_delimiters = c_block;
    js.string_delimiters = {quoted("\""), quoted("'"), quoted("`", true, "${")};
    js.regex_literals = true;
    all.push_back(js);

    LanguageProfile php;
    php.language = Language::php;
    php.line_comment_openers = {"//", "#"};
    php.block_comment_delimiters = c_block;
    php.string_delimiters = {quoted("\"", true), quoted("'", true)};
    php.php_heredocs = true;
    all.push_back(php);

    LanguageProfile py;
    py.language = Language::python;
    py.family = ScannerFamily::python;
    py.line_comment_openers = {"#"};
    py.docstring_delimiters = {{"\"\"\"", "\"\"\""}, {"'''", "'''"}};
    py.string_delimiters = {quoted("\"\"\"", true), quoted("'''", true), quoted("\""), quoted("'")};
    py.whitespace_sensitive = true;
    all.push_back(py);

    LanguageProfile rb;
    rb.language = Language::ruby;
    rb.family = ScannerFamily::ruby;
    rb.line_comment_openers = {"#"};
    rb.block_comment_delimiters = {{"=begin", "=end"}};
    rb.string_delimiters = {quoted("\"", true, "#{"), quoted("'", true), quoted("`", true, "#{")};
    rb.whitespace_sensitive = true;
    rb.regex_literals = true;
    rb.ruby_literals = true;
    all.push_back(rb);

    LanguageProfile rust;
    rust.language = Language::rust;
    rust.line_comment_openers = slashes;
    rust.block_comment_delimiters = c_block;
    rust.string_delimiters = {quoted("\"", true)};
    rust.nested_block_comments = true;
    rust.rust_quotes = true;
    all.push_back(rust);

    LanguageProfile ts = js;
    ts.language = Language::typescript;
    all.push_back(ts);

    return all;
}

bool is_ident(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

/// Collects scanner output and remembers which output lines lost a comment.
class Sink {
public:
    void put(char c) {
        out_.push_back(c);
        if (c == '\n') ++line_;
    }
    void put(std::string_view s) {
        for (char c : s) put(c);
    }
    void touch() {
        if (touched_.size() <= line_) touched_.resize(line_ + 1, false);
        touched_[line_] = true;
    }

    std::string finish() const {
        std::string result;
        std::size_t line = 0;
        std::size_t start = 0;
        while (start <= out_.size()) {
            auto end = out_.find('\n', start);
            const bool last = end == std::string::npos;
            if (last) end = out_.size();
            std::string_view text(out_.data() + start, end - start);
            bool keep = true;
            if (line < touched_.size() && touched_[line]) {
                while (!text.empty() && is_blank(text.back())) text.remove_suffix(1);
                keep = !text.empty();
            }
            if (keep) {
                result.append(text);
                if (!last) result.push_back('\n');
            }
            if (last) break;
            start = end + 1;
            ++line;
        }
        return result;
    }

private:
    std::string out_;
    std::size_t line_ = 0;
    std::vector<bool> touched_;
};

bool regex_keyword(std::string_view w) {
    static constexpr std::array<std::string_view, 22> words = {
        "return", "typeof", "case", "do", "else", "in", "of", "new", "delete", "void", "throw",
        "instanceof", "yield", "await", "if", "unless", "when", "and", "or", "not", "elsif", "while",
    };
    return std::find(words.begin(), words.end(), w) != words.end();
}

/// Scanner for the brace languages and Ruby.
class CLikeScanner {
public:
    CLikeScanner(std::string_view src, const LanguageProfile& p) : s_(src), p_(p) {}

    std::string run() {
        code(false);
        return sink_.finish();
    }

private:
    struct Heredoc {
        std::string terminator;
        bool indented;
    };

    std::string_view s_;
    const LanguageProfile& p_;
    Sink sink_;
    std::size_t i_ = 0;
    char prev_ = 0;
    std::string prev_word_;
    std::vector<Heredoc> pending_;

    bool at(std::string_view t) const { return s_.substr(i_).starts_with(t); }
    bool at_line_start() const { return i_ == 0 || s_[i_ - 1] == '\n'; }
    char peek(std::size_t k = 1) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

    void copy(std::size_t n) {
        sink_.put(s_.substr(i_, n));
        i_ += n;
    }

    void mark_value() {
        prev_ = '"';
        prev_word_.clear();
    }

    void emit_code(char c) {
        sink_.put(c);
        ++i_;
        if (is_blank(c) || c == '\n') return;
        if (is_ident(c)) {
            if (is_ident(prev_)) prev_word_.push_back(c);
            else prev_word_.assign(1, c);
        } else {
            prev_word_.clear();
        }
        prev_ = c;
    }

    bool value_before() const {
        if (prev_ == 0) return false;
        if (is_ident(prev_)) return !regex_keyword(prev_word_);
        return prev_ == ')' || prev_ == ']' || prev_ == '}' || prev_ == '"';
    }

    void skip_to(std::size_t end) {
        sink_.touch();
        i_ = end;
    }

    void code(bool nested) {
        int braces = 0;
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (c == '\n') {
                emit_code(c);
                if (!pending_.empty()) heredoc_bodies();
                continue;
            }
            if (p_.ruby_literals && at_line_start()) {
                if (ruby_block_comment()) continue;
                if (at("__END__") && (i_ + 7 == s_.size() || s_[i_ + 7] == '\n' || s_[i_ + 7] == '\r')) {
                    copy(s_.size() - i_);
                    return;
                }
            }
            if (line_comment()) continue;
            if (block_comment()) continue;
            if (nested) {
                if (c == '{') {
                    ++braces;
                } else if (c == '}') {
                    if (braces == 0) return;
                    --braces;
                }
            }
            if (literal()) continue;
            emit_code(c);
        }
    }

    bool line_comment() {
        for (const auto& op : p_.line_comment_openers) {
            if (!at(op)) continue;
            if (op == "#" && p_.language == Language::php && peek() == '[') return false;
            std::size_t j = i_;
            while (true) {
                j = s_.find('\n', j);
                if (j == std::string_view::npos) {
                    j = s_.size();
                    break;
                }
                std::size_t k = j;
                if (k > i_ && s_[k - 1] == '\r') --k;
                if (p_.line_comment_continuation && k > i_ && s_[k - 1] == '\\') {
                    ++j;
                    continue;
                }
                break;
            }
            skip_to(j);
            return true;
        }
        return false;
    }

    bool block_comment() {
        if (p_.family == ScannerFamily::ruby) return false;
        for (const auto& [open, close] : p_.block_comment_delimiters) {
            if (!at(open)) continue;
            std::size_t j = i_ + open.size();
            int depth = 1;
            while (j < s_.size() && depth > 0) {
                if (p_.nested_block_comments && s_.substr(j).starts_with(open)) {
                    ++depth;
                    j += open.size();
                } else if (s_.substr(j).starts_with(close)) {
                    --depth;
                    j += close.size();
                } else {
                    ++j;
                }
            }
            if (depth > 0) spdlog::warn("unterminated block comment removed to end of input");
            skip_to(j);
            return true;
        }
        return false;
    }

    bool ruby_block_comment() {
        if (!at("=begin")) return false;
        const char after = peek(6);
        if (!(after == '\0' || is_blank(after) || after == '\n')) return false;
        std::size_t j = i_;
        while (true) {
            j = s_.find('\n', j);
            if (j == std::string_view::npos) {
                spdlog::warn("unterminated =begin block removed to end of input");
                skip_to(s_.size());
                return true;
            }
            ++j;
            if (s_.substr(j).starts_with("=end")) {
                const std::size_t k = j + 4;
                if (k == s_.size() || is_blank(s_[k]) || s_[k] == '\n') {
                    const auto eol = s_.find('\n', k);
                    skip_to(eol == std::string_view::npos ? s_.size() : eol);
                    return true;
                }
            }
        }
    }

    bool literal() {
        const char c = s_[i_];
        if (p_.cpp_raw_strings && cpp_raw()) return true;
        if (p_.rust_quotes && (c == 'r' || c == 'b') && rust_raw()) return true;
        if (p_.csharp_strings && (c == '@' || c == '$' || c == '"') && csharp_special()) return true;
        if (p_.php_heredocs && c == '<' && php_heredoc()) return true;
        if (p_.ruby_literals && c == '%' && ruby_percent()) return true;
        if (p_.ruby_literals && c == '<' && ruby_heredoc_opener()) return true;
        if (p_.regex_literals && c == '/' && regex()) return true;
        if (c == '\'') {
            if (p_.digit_separators && i_ > 0 && is_ident(s_[i_ - 1]) && !prev_word_.empty() &&
                std::isdigit(static_cast<unsigned char>(prev_word_.front()))) {
                return false;
            }
            if (p_.rust_quotes) return rust_char();
        }
        for (const auto& style : p_.string_delimiters) {
            if (at(style.open)) {
                quoted_literal(style);
                return true;
            }
        }
        return false;
    }

    void quoted_literal(const StringStyle& style) {
        copy(style.open.size());
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (style.escape != 0 && c == style.escape) {
                copy(std::min<std::size_t>(2, s_.size() - i_));
                continue;
            }
            if (at(style.close)) {
                copy(style.close.size());
                break;
            }
            if (c == '\n' && !style.multiline) break;
            if (!style.interpolation.empty() && at(style.interpolation)) {
                copy(style.interpolation.size());
                const char saved = prev_;
                const std::string saved_word = prev_word_;
                prev_ = 0;
                prev_word_.clear();
                code(true);
                prev_ = saved;
                prev_word_ = saved_word;
                if (i_ < s_.size()) copy(1);
                continue;
            }
            if (c == '\n') {
                sink_.put(c);
                ++i_;
                continue;
            }
            copy(1);
        }
        mark_value();
    }

    bool cpp_raw() {
        std::size_t j = i_;
        if (i_ > 0 && is_ident(s_[i_ - 1])) return false;
        for (std::string_view prefix : {"u8R", "uR", "UR", "LR", "R"}) {
            if (s_.substr(j).starts_with(prefix)) {
                j += prefix.size();
                break;
            }
        }
        if (j == i_ || j >= s_.size() || s_[j] != '"') return false;
        const auto paren = s_.find('(', j + 1);
        if (paren == std::string_view::npos || paren - j - 1 > 16) return false;
        const auto delim = s_.substr(j + 1, paren - j - 1);
        if (delim.find_first_of(" \t\n\\)") != std::string_view::npos) return false;
        const std::string close = ")" + std::string(delim) + "\"";
        const auto end = s_.find(close, paren + 1);
        copy((end == std::string_view::npos ? s_.size() : end + close.size()) - i_);
        mark_value();
        return true;
    }

    bool rust_raw() {
        if (i_ > 0 && is_ident(s_[i_ - 1])) return false;
        std::size_t j = i_;
        if (s_[j] == 'b') ++j;
        if (j >= s_.size() || s_[j] != 'r') return false;
        ++j;
        std::size_t hashes = 0;
        while (j < s_.size() && s_[j] == '#') {
            ++hashes;
            ++j;
        }
        if (j >= s_.size() || s_[j] != '"') return false;
        const std::string close = "\"" + std::string(hashes, '#');
        const auto end = s_.find(close, j + 1);
        copy((end == std::string_view::npos ? s_.size() : end + close.size()) - i_);
        mark_value();
        return true;
    }

    bool rust_char() {
        // 'x' and '\n' are chars; 'a in generics or labels is a lifetime.
        std::size_t j = i_ + 1;
        if (j >= s_.size()) return false;
        if (s_[j] == '\\') {
            j += 2;
            while (j < s_.size() && s_[j] != '\'' && s_[j] != '\n' && j - i_ < 12) ++j;
            if (j >= s_.size() || s_[j] != '\'') return false;
        } else {
            if (s_[j] == '\'' || s_[j] == '\n') return false;
            const auto lead = static_cast<unsigned char>(s_[j]);
            std::size_t len = lead < 0x80 ? 1 : lead >= 0xF0 ? 4 : lead >= 0xE0 ? 3 : 2;
            j += len;
            if (j >= s_.size() || s_[j] != '\'') return false;
        }
        copy(j + 1 - i_);
        mark_value();
        return true;
    }

    bool csharp_special() {
        std::size_t j = i_;
        bool verbatim = false;
        while (j < s_.size() && (s_[j] == '@' || s_[j] == '$') && j - i_ < 3) {
            verbatim = verbatim || s_[j] == '@';
            ++j;
        }
        if (j >= s_.size() || s_[j] != '"') return false;
        std::size_t quotes = 0;
        while (j + quotes < s_.size() && s_[j + quotes] == '"') ++quotes;
        if (quotes >= 3) {
            const std::string close(quotes, '"');
            const auto end = s_.find(close, j + quotes);
            copy((end == std::string_view::npos ? s_.size() : end + quotes) - i_);
            mark_value();
            return true;
        }
        if (!verbatim) return false;
        std::size_t k = j + 1;
        while (k < s_.size()) {
            if (s_[k] == '"') {
                if (k + 1 < s_.size() && s_[k + 1] == '"') {
                    k += 2;
                    continue;
                }
                ++k;
                break;
            }
            ++k;
        }
        copy(k - i_);
        mark_value();
        return true;
    }

    static std::size_t ident_end(std::string_view s, std::size_t j) {
        while (j < s.size() && is_ident(s[j])) ++j;
        return j;
    }

    bool php_heredoc() {
        if (!at("<<<")) return false;
        std::size_t j = i_ + 3;
        while (j < s_.size() && is_blank(s_[j])) ++j;
        char quote = 0;
        if (j < s_.size() && (s_[j] == '\'' || s_[j] == '"')) quote = s_[j++];
        const std::size_t id_start = j;
        j = ident_end(s_, j);
        if (j == id_start) return false;
        const std::string id(s_.substr(id_start, j - id_start));
        if (quote != 0) {
            if (j >= s_.size() || s_[j] != quote) return false;
            ++j;
        }
        auto line_end = s_.find('\n', j);
        if (line_end == std::string_view::npos) return false;
        std::size_t pos = line_end + 1;
        while (pos < s_.size()) {
            std::size_t k = pos;
            while (k < s_.size() && is_blank(s_[k])) ++k;
            if (s_.substr(k).starts_with(id) && (k + id.size() >= s_.size() || !is_ident(s_[k + id.size()]))) {
                copy(k + id.size() - i_);
                mark_value();
                return true;
            }
            const auto next = s_.find('\n', pos);
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        copy(s_.size() - i_);
        return true;
    }

    bool ruby_percent() {
        if (value_before()) return false;
        std::size_t j = i_ + 1;
        if (j < s_.size() && std::string_view("qQwWiIrsx").find(s_[j]) != std::string_view::npos) ++j;
        if (j >= s_.size()) return false;
        const char open = s_[j];
        if (std::isalnum(static_cast<unsigned char>(open)) || is_blank(open) || open == '\n' || open == '=')
            return false;
        char close = open;
        if (open == '(') close = ')';
        else if (open == '[') close = ']';
        else if (open == '{') close = '}';
        else if (open == '<') close = '>';
        int depth = 1;
        std::size_t k = j + 1;
        while (k < s_.size()) {
            if (s_[k] == '\\') {
                k += 2;
                continue;
            }
            if (open != close && s_[k] == open) ++depth;
            else if (s_[k] == close && --depth == 0) break;
            ++k;
        }
        copy(std::min(k + 1, s_.size()) - i_);
        mark_value();
        return true;
    }

    bool ruby_heredoc_opener() {
        if (!at("<<")) return false;
        std::size_t j = i_ + 2;
        bool indented = false;
        if (j < s_.size() && (s_[j] == '~' || s_[j] == '-')) {
            indented = true;
            ++j;
        }
        char quote = 0;
        if (j < s_.size() && (s_[j] == '\'' || s_[j] == '"' || s_[j] == '`')) quote = s_[j++];
        const std::size_t id_start = j;
        j = ident_end(s_, j);
        if (j == id_start) return false;
        if (quote == 0 && !indented) {
            const char first = s_[id_start];
            if (!(std::isupper(static_cast<unsigned char>(first)) || first == '_')) return false;
        }
        if (quote != 0) {
            if (j >= s_.size() || s_[j] != quote) return false;
            ++j;
        }
        pending_.push_back({std::string(s_.substr(id_start, j - id_start - (quote != 0 ? 1 : 0))), indented});
        copy(j - i_);
        mark_value();
        return true;
    }

    void heredoc_bodies() {
        for (const auto& doc : pending_) {
            while (i_ < s_.size()) {
                auto end = s_.find('\n', i_);
                if (end == std::string_view::npos) end = s_.size();
                std::string_view line = s_.substr(i_, end - i_);
                while (!line.empty() && line.back() == '\r') line.remove_suffix(1);
                if (doc.indented) {
                    while (!line.empty() && is_blank(line.front())) line.remove_prefix(1);
                }
                copy(std::min(end + 1, s_.size()) - i_);
                if (line == doc.terminator) break;
            }
        }
        pending_.clear();
    }

    bool regex() {
        if (value_before()) return false;
        if (peek() == '/' || peek() == '*') return false;
        std::size_t j = i_ + 1;
        bool in_class = false;
        while (j < s_.size()) {
            const char c = s_[j];
            if (c == '\n') return false;
            if (c == '\\') {
                j += 2;
                continue;
            }
            if (c == '[') in_class = true;
            else if (c == ']') in_class = false;
            else if (c == '/' && !in_class) break;
            ++j;
        }
        if (j >= s_.size()) return false;
        ++j;
        while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
        copy(j - i_);
        mark_value();
        return true;
    }
};

/// Scanner for Python: '#' comments and statement-level docstrings.
class PythonScanner {
public:
    explicit PythonScanner(std::string_view src) : s_(src) {}

    std::string run() {
        int depth = 0;
        bool stmt_start = true;
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (c == '\n') {
                sink_.put(c);
                ++i_;
                if (depth == 0) stmt_start = true;
                continue;
            }
            if (c == '\\' && i_ + 1 < s_.size() && s_[i_ + 1] == '\n') {
                sink_.put("\\\n");
                i_ += 2;
                continue;
            }
            if (is_blank(c)) {
                sink_.put(c);
                ++i_;
                continue;
            }
            if (c == '#') {
                auto end = s_.find('\n', i_);
                if (end == std::string_view::npos) end = s_.size();
                sink_.touch();
                i_ = end;
                continue;
            }
            if (const auto lit = string_at(i_)) {
                const bool docstring = stmt_start && depth == 0 && lit->triple && lit->doc_prefix &&
                                       only_trivia_until_eol(lit->end);
                if (docstring) {
                    sink_.touch();
                } else {
                    sink_.put(s_.substr(i_, lit->end - i_));
                }
                i_ = lit->end;
                stmt_start = false;
                continue;
            }
            if (c == '(' || c == '[' || c == '{') ++depth;
            else if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
            sink_.put(c);
            ++i_;
            stmt_start = c == ';' && depth == 0;
        }
        return sink_.finish();
    }

private:
    struct Literal {
        std::size_t end;
        bool triple;
        bool doc_prefix;
    };

    std::string_view s_;
    std::size_t i_ = 0;
    Sink sink_;

    std::optional<Literal> string_at(std::size_t pos) const {
        if (pos > 0 && is_ident(s_[pos - 1])) return std::nullopt;
        std::size_t j = pos;
        bool doc_prefix = true;
        while (j < s_.size() && j - pos < 2 && std::string_view("rRuUbBfF").find(s_[j]) != std::string_view::npos) {
            const char p = static_cast<char>(std::tolower(static_cast<unsigned char>(s_[j])));
            if (p == 'b' || p == 'f') doc_prefix = false;
            ++j;
        }
        if (j >= s_.size() || (s_[j] != '"' && s_[j] != '\'')) return std::nullopt;
        const char q = s_[j];
        const bool triple = j + 2 < s_.size() && s_[j + 1] == q && s_[j + 2] == q;
        std::size_t k = j + (triple ? 3 : 1);
        while (k < s_.size()) {
            const char c = s_[k];
            if (c == '\\') {
                k += 2;
                continue;
            }
            if (triple) {
                if (c == q && k + 2 < s_.size() && s_[k + 1] == q && s_[k + 2] == q) return Literal{k + 3, true, doc_prefix};
            } else {
                if (c == q) return Literal{k + 1, false, doc_prefix};
                if (c == '\n') return Literal{k, false, doc_prefix};
            }
            ++k;
        }
        return Literal{s_.size(), triple, doc_prefix};
    }

    bool only_trivia_until_eol(std::size_t pos) const {
        while (pos < s_.size() && is_blank(s_[pos])) ++pos;
        return pos == s_.size() || s_[pos] == '\n' || s_[pos] == '#';
    }
};

std::string_view trim_blank(std::string_view s) {
    while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> normalized_lines(std::string_view code, bool keep_indent) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= code.size()) {
        auto end = code.find('\n', start);
        if (end == std::string_view::npos) end = code.size();
        std::string_view line = code.substr(start, end - start);

        std::string result;
        std::size_t k = 0;
        if (keep_indent) {
            while (k < line.size() && is_blank(line[k])) ++k;
            result.assign(line.substr(0, k));
        }
        const auto body = trim_blank(line.substr(k));
        bool in_space = false;
        for (char c : body) {
            if (is_blank(c)) {
                in_space = true;
                continue;
            }
            if (in_space) result.push_back(' ');
            in_space = false;
            result.push_back(c);
        }
        if (!body.empty()) out.push_back(std::move(result));
        if (end == code.size()) break;
        start = end + 1;
    }
    return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i > 0) out.push_back('\n');
        out += lines[i];
    }
    return out;
}

}  // namespace

const LanguageProfile& profile_for(Language lang) {
    static const std::vector<LanguageProfile> profiles = build_profiles();
    for (const auto& p : profiles) {
        if (p.language == lang) return p;
    }
    throw UnsupportedLanguage("no normalization profile for language '" + std::string(language_id(lang)) + "'");
}

std::string strip_comments(std::string_view code, const LanguageProfile& profile) {
    if (profile.family == ScannerFamily::python) return PythonScanner(code).run();
    return CLikeScanner(code, profile).run();
}

std::string normalize_whitespace(std::string_view code, const LanguageProfile& profile) {
    return join_lines(normalized_lines(code, profile.whitespace_sensitive));
}

std::string NormalizedCode::text() const { return join_lines(lines); }

NormalizedCode normalize(std::string_view code, Language lang) {
    const auto& profile = profile_for(lang);
    return NormalizedCode{normalized_lines(strip_comments(code, profile), profile.whitespace_sensitive), lang};
}

bool code_equivalent(std::string_view a, std::string_view b, Language lang) {
    return normalize(a, lang) == normalize(b, lang);
}

}  // namespace hunkbench
