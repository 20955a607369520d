#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hunkbench/language.hpp"

namespace hunkbench {

/// A quoted literal form. `escape` is 0 when the form has no escapes;
/// `interpolation` opens an embedded expression ending at the matching '}'.
struct StringStyle {
    std::string open;
    std::string close;
    char escape = '\\';
    bool multiline = false;
    std::string interpolation;
};

enum class ScannerFamily { c_like, python, ruby };

struct LanguageProfile {
    Language language = Language::unknown;
    ScannerFamily family = ScannerFamily::c_like;
    std::vector<std::string> line_comment_openers;
    std::vector<std::pair<std::string, std::string>> block_comment_delimiters;
    std::vector<std::pair<std::string, std::string>> docstring_delimiters;
    /// Longest opener first.
    std::vector<StringStyle> string_delimiters;
    bool whitespace_sensitive = false;

    // Literal forms that need more than a delimiter pair.
    bool nested_block_comments = false;   // Rust
    bool line_comment_continuation = false; // backslash-newline in C and C++
    bool digit_separators = false;        // 1'000 in C and C++
    bool rust_quotes = false;             // char literals vs lifetimes, r#"..."#
    bool cpp_raw_strings = false;         // R"delim(...)delim"
    bool csharp_strings = false;          // @"..." and """raw"""
    bool regex_literals = false;          // JavaScript, TypeScript, Ruby
    bool ruby_literals = false;           // %q(...), heredocs, =begin/=end
    bool php_heredocs = false;            // <<<EOT
};

/// Profile of a supported language. Throws UnsupportedLanguage.
const LanguageProfile& profile_for(Language lang);

/// Removes comments (and Python docstrings). String contents are kept.
/// Lines left holding only whitespace after a removal are dropped and
/// lines that lost a trailing comment are right-trimmed.
std::string strip_comments(std::string_view code, const LanguageProfile& profile);

/// Per line: trailing whitespace removed, leading whitespace removed unless
/// the language is whitespace-sensitive, interior runs collapsed to one
/// space. Blank lines are dropped.
std::string normalize_whitespace(std::string_view code, const LanguageProfile& profile);

struct NormalizedCode {
    std::vector<std::string> lines;
    Language language = Language::unknown;

    std::string text() const;

    friend bool operator==(const NormalizedCode&, const NormalizedCode&) = default;
};

/// Throws UnsupportedLanguage.
NormalizedCode normalize(std::string_view code, Language lang);

/// True iff both inputs normalize to the same lines. Throws UnsupportedLanguage.
bool code_equivalent(std::string_view a, std::string_view b, Language lang);

}  // namespace hunkbench
