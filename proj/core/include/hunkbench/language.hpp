#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace hunkbench {

enum class Language {
    c,
    cpp,
    csharp,
    go,
    java,
    javascript,
    php,
    python,
    ruby,
    rust,
    typescript,
    unknown,
};

inline constexpr std::array<Language, 11> kSupportedLanguages = {
    Language::c,    Language::cpp,    Language::csharp, Language::go,
    Language::java, Language::javascript, Language::php, Language::python,
    Language::ruby, Language::rust,   Language::typescript,
};

/// Stable lowercase id, also used as the Markdown fence tag.
std::string_view language_id(Language lang) noexcept;

/// Accepts ids and common aliases ("c++", "js", "py", ...).
std::optional<Language> parse_language(std::string_view id) noexcept;

/// Maps a file path to a language by extension; Language::unknown otherwise.
Language language_from_path(std::string_view path) noexcept;

}  // namespace hunkbench
