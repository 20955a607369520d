#include "hunkbench/language.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

namespace hunkbench {

std::string_view language_id(Language lang) noexcept {
    switch (lang) {
        case Language::c: return "c";
        case Language::cpp: return "cpp";
        case Language::csharp: return "csharp";
        case Language::go: return "go";
        case Language::java: return "java";
        case Language::javascript: return "javascript";
        case Language::php: return "php";
        case Language::python: return "python";
        case Language::ruby: return "ruby";
        case Language::rust: return "rust";
        case Language::typescript: return "typescript";
        case Language::unknown: break;
    }
    return "unknown";
}

std::optional<Language> parse_language(std::string_view id) noexcept {
    static constexpr std::pair<std::string_view, Language> kNames[] = {
        {"c", Language::c},
        {"cpp", Language::cpp},
        {"c++", Language::cpp},
        {"cxx", Language::cpp},
        {"csharp", Language::csharp},
        {"cs", Language::csharp},
        {"c#", Language::csharp},
        {"go", Language::go},
        {"golang", Language::go},
        {"java", Language::java},
        {"javascript", Language::javascript},
        {"js", Language::javascript},
        {"php", Language::php},
        {"python", Language::python},
        {"py", Language::python},
        {"ruby", Language::ruby},
        {"rb", Language::ruby},
        {"rust", Language::rust},
        {"rs", Language::rust},
        {"typescript", Language::typescript},
        {"ts", Language::typescript},
    };
    std::string lower(id);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (const auto& [name, lang] : kNames) {
        if (lower == name) return lang;
    }
    return std::nullopt;
}

Language language_from_path(std::string_view path) noexcept {
    const auto slash = path.find_last_of('/');
    const auto name = slash == std::string_view::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot == std::string_view::npos || dot == 0) return Language::unknown;
    const auto ext = name.substr(dot + 1);

    static constexpr std::pair<std::string_view, Language> kExtensions[] = {
        {"java", Language::java},  {"py", Language::python},      {"rs", Language::rust},
        {"go", Language::go},      {"ts", Language::typescript},  {"js", Language::javascript},
        {"c", Language::c},        {"h", Language::c},            {"cc", Language::cpp},
        {"cpp", Language::cpp},    {"hpp", Language::cpp},        {"cs", Language::csharp},
        {"php", Language::php},    {"rb", Language::ruby},
    };
    for (const auto& [e, lang] : kExtensions) {
        if (ext == e) return lang;
    }
    return Language::unknown;
}

}  // namespace hunkbench
