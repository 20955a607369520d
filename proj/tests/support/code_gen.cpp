#include "code_gen.hpp"

#include <algorithm>
#include <array>

namespace hunkbench::testing {

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
    return pool[rng() % pool.size()];
}

bool chance(std::mt19937_64& rng, unsigned percent) { return rng() % 100 < percent; }

bool brace_language(Language l) { return l != Language::python && l != Language::ruby; }

bool needs_semicolon(Language l) {
    return l != Language::python && l != Language::ruby && l != Language::go;
}

std::vector<std::string> string_atoms(Language l) {
    std::vector<std::string> out = {R"("// not a comment")", R"("/* nor this */")", R"("a # b")",
                                    R"("esc \" // q")", R"("plain")"};
    switch (l) {
        case Language::c:
            out.insert(out.end(), {"'/'", R"('\'')", "1'000", R"("\\")"});
            break;
        case Language::cpp:
            out.insert(out.end(), {"'/'", "1'000'000", R"x(R"(/* raw */ // x)")x", R"x(R"d(")d")x", R"(u8"/*u*/")"});
            break;
        case Language::csharp:
            out.insert(out.end(), {R"(@"C:\dir\")", R"(@"say ""hi"" // no")", R"("""raw "q" // x""")",
                                   R"($"{a} // in")", "'/'"});
            break;
        case Language::go:
            out.insert(out.end(), {"`raw // x`", "`multi\n  /* line */ raw`", R"('\'')"});
            break;
        case Language::java:
            out.insert(out.end(), {"\"\"\"\n    text // x\n    /* y */\n    \"\"\"", "'/'", R"('\'')"});
            break;
        case Language::javascript:
        case Language::typescript:
            out.insert(out.end(), {"'// s'", "`t ${a} // s`", "`two\n  /* lines */`", R"(`n ${ f("}") } #`)"});
            break;
        case Language::php:
            out.insert(out.end(), {"'# no'", "'it\\'s // x'", "<<<EOT\nbody // x\n  # y\nEOT", "<<<'RAW'\n/* raw */\nRAW"});
            break;
        case Language::python:
            out.insert(out.end(), {"'# no'", R"(r'\d+ # x')", R"(f"{x} # y")", "b'#'"});
            break;
        case Language::ruby:
            out.insert(out.end(), {R"("#{x} # y")", "'# no'", R"("a #{ "}" } b")"});
            break;
        case Language::rust:
            out.insert(out.end(), {"'a'", R"('\n')", "b'x'", R"(r#"raw "q" // x"#)", "'\"'"});
            break;
        default:
            break;
    }
    return out;
}

/// Literals that are only valid right after '=' (regexes, %-literals,
/// triple-quoted values).
std::vector<std::string> value_atoms(Language l) {
    switch (l) {
        case Language::javascript:
        case Language::typescript: return {R"(/\/\*x/g)", "/[/]+/", R"(/a#b/)"};
        case Language::ruby: return {"%w(a # b)", "%q{x // y}", R"(/\d+ # x/)"};
        case Language::python: return {"\"\"\"value\n# kept\n\"\"\"", "'''v # k'''"};
        default: return {};
    }
}

std::string name(std::mt19937_64& rng) {
    static const std::vector<std::string> pool = {"alpha", "beta_2", "x", "count", "total", "item", "idx"};
    return pick(rng, pool);
}

std::string variable(std::mt19937_64& rng, Language l) { return (l == Language::php ? "$" : "") + name(rng); }

std::vector<std::string> expression(std::mt19937_64& rng, Language l) {
    static const std::vector<std::string> ops = {"+", "-", "*", "/", "==", "<", "&&"};
    const auto atoms = string_atoms(l);
    std::vector<std::string> out;
    const auto n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out.push_back(pick(rng, ops));
        switch (rng() % 3) {
            case 0: out.push_back(variable(rng, l)); break;
            case 1: out.push_back(std::to_string(rng() % 100)); break;
            default: out.push_back(pick(rng, atoms)); break;
        }
    }
    return out;
}

std::vector<std::string> statement(std::mt19937_64& rng, Language l) {
    std::vector<std::string> t;
    if (chance(rng, 60)) {
        switch (l) {
            case Language::go: t = {name(rng), ":="}; break;
            case Language::rust: t = {"let", name(rng), "="}; break;
            case Language::javascript:
            case Language::typescript: t = {"const", name(rng), "="}; break;
            case Language::php: t = {variable(rng, l), "="}; break;
            case Language::python:
            case Language::ruby: t = {name(rng), "="}; break;
            case Language::c:
            case Language::cpp: t = {"auto", name(rng), "="}; break;
            default: t = {"var", name(rng), "="}; break;
        }
        const auto values = value_atoms(l);
        if (!values.empty() && chance(rng, 30)) t.push_back(pick(rng, values));
        else for (auto& e : expression(rng, l)) t.push_back(std::move(e));
    } else {
        t = {name(rng), "("};
        for (auto& e : expression(rng, l)) t.push_back(std::move(e));
        t.push_back(",");
        for (auto& e : expression(rng, l)) t.push_back(std::move(e));
        t.push_back(")");
    }
    if (needs_semicolon(l)) t.push_back(";");
    return t;
}

void add_line(CodeSketch& s, std::mt19937_64& rng, std::string indent, std::vector<std::string> tokens) {
    static const std::vector<std::string> gaps = {" ", " ", " ", "  ", "\t", " \t "};
    CodeSketch::Line line;
    line.indent = std::move(indent);
    for (std::size_t i = 1; i < tokens.size(); ++i) line.gaps.push_back(pick(rng, gaps));
    line.tokens = std::move(tokens);
    s.lines.push_back(std::move(line));
}

std::string indent_for(std::mt19937_64& rng, Language l, std::size_t depth) {
    if (l == Language::python || l == Language::ruby) return std::string(depth * (l == Language::python ? 4 : 2), ' ');
    static const std::vector<std::string> styles = {"", "  ", "    ", "\t", "\t\t", "   "};
    return depth == 0 ? std::string{} : pick(rng, styles);
}

std::string comment_text(std::mt19937_64& rng) {
    static const std::vector<std::string> pool = {"note", "TODO: fix \"this\"", "it's", "x = 1;",
                                                  "http://example.com", "#hash", "{ brace", "`tick`"};
    return pick(rng, pool);
}

/// A comment that may sit between two tokens on one line.
std::string inline_comment(std::mt19937_64& rng, Language l) {
    const auto text = comment_text(rng);
    if (l == Language::rust && chance(rng, 30)) return "/* outer /* " + text + " */ still */";
    if (chance(rng, 20)) return "/* " + text + "\n   * more */";
    return "/* " + text + " */";
}

/// A comment running to the end of the line.
std::string trailing_comment(std::mt19937_64& rng, Language l) {
    const auto text = comment_text(rng);
    switch (l) {
        case Language::python:
        case Language::ruby: return "# " + text;
        case Language::php: return (chance(rng, 50) ? "# " : "// ") + text;
        case Language::rust: return (chance(rng, 30) ? "/// " : "// ") + text;
        default: return "// " + text;
    }
}

/// Whole lines of comment placed before a logical line with the given indent.
std::string comment_lines(std::mt19937_64& rng, Language l, const std::string& indent) {
    auto text = comment_text(rng);
    if (l == Language::python) {
        // A quote next to the closing delimiter would end the docstring early.
        std::replace(text.begin(), text.end(), '"', '\'');
        switch (rng() % 3) {
            case 0: return indent + "\"\"\"" + text + "\"\"\"\n";
            case 1: return indent + "'''" + text + "\n" + indent + "more'''\n";
            default: return indent + "# " + text + "\n";
        }
    }
    if (l == Language::ruby) {
        if (chance(rng, 40)) return "=begin\n" + text + "\n=end\n";
        return indent + "# " + text + "\n";
    }
    if (chance(rng, 50)) return indent + inline_comment(rng, l) + "\n";
    return indent + trailing_comment(rng, l) + "\n";
}

std::string render_line(const CodeSketch::Line& line) {
    std::string out = line.indent;
    for (std::size_t i = 0; i < line.tokens.size(); ++i) {
        if (i > 0) out += line.gaps[i - 1];
        out += line.tokens[i];
    }
    return out;
}

}  // namespace

CodeSketch random_sketch(std::mt19937_64& rng, Language l) {
    CodeSketch s;
    s.language = l;
    const auto blocks = 1 + rng() % 3;
    for (std::size_t b = 0; b < blocks; ++b) {
        if (chance(rng, 50)) {
            const auto cond = std::vector<std::string>{variable(rng, l), ">", std::to_string(rng() % 10)};
            std::vector<std::string> head;
            if (l == Language::python) {
                head = {"if"};
                head.insert(head.end(), cond.begin(), cond.end());
                head.push_back(":");
            } else if (l == Language::ruby) {
                head = {"if"};
                head.insert(head.end(), cond.begin(), cond.end());
            } else if (l == Language::php && chance(rng, 30)) {
                add_line(s, rng, "", {"#[Pure]"});
                head = {"if", "("};
                head.insert(head.end(), cond.begin(), cond.end());
                head.insert(head.end(), {")", "{"});
            } else {
                head = {"if", "("};
                head.insert(head.end(), cond.begin(), cond.end());
                head.insert(head.end(), {")", "{"});
            }
            add_line(s, rng, indent_for(rng, l, 0), head);
            const auto body = 1 + rng() % 3;
            for (std::size_t k = 0; k < body; ++k) add_line(s, rng, indent_for(rng, l, 1), statement(rng, l));
            if (brace_language(l)) add_line(s, rng, indent_for(rng, l, 0), {"}"});
            else if (l == Language::ruby) add_line(s, rng, indent_for(rng, l, 0), {"end"});
        } else {
            add_line(s, rng, indent_for(rng, l, 0), statement(rng, l));
        }
    }
    return s;
}

std::string render_sketch(const CodeSketch& sketch) {
    std::string out;
    for (const auto& line : sketch.lines) out += render_line(line) + "\n";
    return out;
}

std::string render_with_comments(const CodeSketch& sketch, std::mt19937_64& rng) {
    const auto l = sketch.language;
    const bool inline_ok = l != Language::python && l != Language::ruby;
    std::string out;
    for (const auto& line : sketch.lines) {
        if (chance(rng, 25)) out += comment_lines(rng, l, line.indent);
        out += line.indent;
        for (std::size_t i = 0; i < line.tokens.size(); ++i) {
            if (i > 0) {
                out += line.gaps[i - 1];
                if (inline_ok && chance(rng, 10)) out += inline_comment(rng, l) + " ";
            }
            out += line.tokens[i];
        }
        if (chance(rng, 30)) out += " " + trailing_comment(rng, l);
        out += "\n";
    }
    if (chance(rng, 20)) out += comment_lines(rng, l, "");
    return out;
}

std::string reindent(std::string_view code, std::string_view prefix) {
    std::string out;
    bool line_start = true;
    for (char c : code) {
        if (line_start && c != '\n') out += prefix;
        out.push_back(c);
        line_start = c == '\n';
    }
    return out;
}

}  // namespace hunkbench::testing
