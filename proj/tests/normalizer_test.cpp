#include <gtest/gtest.h>

#include <random>

#include "code_gen.hpp"
#include "hunkbench/error.hpp"
#include "hunkbench/normalizer.hpp"

namespace hunkbench {

void PrintTo(const NormalizedCode& n, std::ostream* os) { *os << "\n" << n.text() << "\n"; }

namespace {

struct OracleCase {
    Language language;
    const char* input;
    const char* expected;
};

// Expected outputs worked out by hand, token by token.
const OracleCase kOracle[] = {
    {Language::c, "int x = 1; // note\n", "int x = 1;\n"},
    {Language::java, "s = \"// not a comment\";\n", "s = \"// not a comment\";\n"},
    {Language::python, "\"\"\"doc\"\"\"\nx = 1\n", "x = 1\n"},
    {Language::c, "/*c*/ x=1;  // d\n", " x=1;\n"},
    {Language::cpp, "auto r = R\"(/* keep */)\"; /* drop */\n", "auto r = R\"(/* keep */)\";\n"},
    {Language::c, "#define X 1 /* multi\n line */ + 2\n", "#define X 1  + 2\n"},
    {Language::c, "a; // cont \\\nstill comment\nb;\n", "a;\nb;\n"},
    {Language::c, "char c = '\"'; // q\n", "char c = '\"';\n"},
    {Language::cpp, "int n = 1'000; // sep\n", "int n = 1'000;\n"},
    {Language::csharp, "var p = @\"C:\\dir\\\"; // path\n", "var p = @\"C:\\dir\\\";\n"},
    {Language::csharp, "var r = \"\"\"raw // x\"\"\"; /* c */\n", "var r = \"\"\"raw // x\"\"\";\n"},
    {Language::go, "s := `a // b`\n// whole line\nt := 1\n", "s := `a // b`\nt := 1\n"},
    {Language::go, "x := 1 /* a */ + /* b */ 2\n", "x := 1  +  2\n"},
    {Language::java, "String t = \"\"\"\n  /* in block */\n  \"\"\"; // c\n",
     "String t = \"\"\"\n  /* in block */\n  \"\"\";\n"},
    {Language::javascript, "const re = /\\/\\*x/g; // c\n", "const re = /\\/\\*x/g;\n"},
    {Language::javascript, "const t = `a ${b /* in */} // s`;\n", "const t = `a ${b } // s`;\n"},
    {Language::typescript, "let q = a / b / c; // div\n", "let q = a / b / c;\n"},
    {Language::php, "$a = 1; # hash\n#[Attr]\n$b = 2; // sl\n", "$a = 1;\n#[Attr]\n$b = 2;\n"},
    {Language::php, "$h = <<<EOT\n# not comment\nEOT;\n", "$h = <<<EOT\n# not comment\nEOT;\n"},
    {Language::python, "x = '# no'  # yes\n", "x = '# no'\n"},
    {Language::python, "def f():\n    \"\"\"Doc.\n    More.\n    \"\"\"\n    return 1\n", "def f():\n    return 1\n"},
    {Language::python, "s = \"\"\"value\n# kept\"\"\"\n", "s = \"\"\"value\n# kept\"\"\"\n"},
    {Language::python, "f(\"\"\"arg\"\"\")\n", "f(\"\"\"arg\"\"\")\n"},
    {Language::python, "x = 1; '''doc'''\n", "x = 1;\n"},
    {Language::ruby, "=begin\nblock\n=end\nx = 1 # c\n", "x = 1\n"},
    {Language::ruby, "s = \"#{a} # in\" # out\n", "s = \"#{a} # in\"\n"},
    {Language::ruby, "w = %w(a # b) # c\n", "w = %w(a # b)\n"},
    {Language::ruby, "t = <<~EOS\n  # body\nEOS\n", "t = <<~EOS\n  # body\nEOS\n"},
    {Language::ruby, "x = a / 2 # half\n", "x = a / 2\n"},
    {Language::ruby, "x = 1\n__END__\n# data\n", "x = 1\n__END__\n# data\n"},
    {Language::rust, "/* outer /* inner */ still */ let a = 1;\n", " let a = 1;\n"},
    {Language::rust, "fn f<'a>(x: &'a str) -> char { '/' } // c\n", "fn f<'a>(x: &'a str) -> char { '/' }\n"},
    {Language::rust, "let r = r#\"raw \"q\" // x\"#; // c\n", "let r = r#\"raw \"q\" // x\"#;\n"},
    {Language::c, "/* unterminated\nint x;\n", ""},
};

TEST(StripComments, HandBuiltOracleCorpus) {
    for (const auto& c : kOracle) {
        EXPECT_EQ(strip_comments(c.input, profile_for(c.language)), c.expected)
            << language_id(c.language) << ": " << c.input;
    }
}

TEST(LanguageProfile, WhitespaceSensitivityOnlyForPythonAndRuby) {
    for (auto l : kSupportedLanguages) {
        EXPECT_EQ(profile_for(l).whitespace_sensitive, l == Language::python || l == Language::ruby)
            << language_id(l);
    }
    EXPECT_THROW(profile_for(Language::unknown), UnsupportedLanguage);
}

TEST(NormalizeWhitespace, CollapsesAndTrims) {
    EXPECT_EQ(normalize_whitespace("  a   =  b  ", profile_for(Language::java)), "a = b");
    EXPECT_EQ(normalize_whitespace("    return   x  ", profile_for(Language::python)), "    return x");
    EXPECT_EQ(normalize_whitespace("", profile_for(Language::java)), "");
    EXPECT_EQ(normalize_whitespace("a\n\n   \n\tb\t\n", profile_for(Language::c)), "a\nb");
}

TEST(Normalize, Examples) {
    EXPECT_EQ(normalize("/*c*/ x=1;  // d", Language::c).lines, std::vector<std::string>{"x=1;"});
    const auto n = normalize("int  a = 1;\n  // gone\nint b;\n", Language::java);
    EXPECT_EQ(n.lines, (std::vector<std::string>{"int a = 1;", "int b;"}));
    EXPECT_EQ(n.language, Language::java);
    EXPECT_EQ(normalize(n.text(), Language::java), n);
    EXPECT_THROW(normalize("x", Language::unknown), UnsupportedLanguage);
}

TEST(CodeEquivalent, Examples) {
    EXPECT_TRUE(code_equivalent("x", "x", Language::go));
    EXPECT_TRUE(code_equivalent("if (a) {\n    b();\n}\n", "if (a) {\nb();\n}\n", Language::java));
    EXPECT_FALSE(code_equivalent("if a:\n    b()\n", "if a:\n  b()\n", Language::python));
    EXPECT_TRUE(code_equivalent("a = 1 # x\n", "a  =  1\n", Language::ruby));
    EXPECT_FALSE(code_equivalent("a = 1\n", "a = 2\n", Language::ruby));
    EXPECT_THROW(code_equivalent("a", "a", Language::unknown), UnsupportedLanguage);
}

TEST(NormalizerProperties, IdempotentAndWellFormed) {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 10000; ++i) {
        const auto lang = kSupportedLanguages[static_cast<std::size_t>(i) % kSupportedLanguages.size()];
        const auto sketch = testing::random_sketch(rng, lang);
        const auto code = testing::render_with_comments(sketch, rng);
        const auto once = normalize(code, lang);
        ASSERT_EQ(normalize(once.text(), lang), once) << language_id(lang) << ":\n" << code;
        const bool sensitive = profile_for(lang).whitespace_sensitive;
        for (const auto& line : once.lines) {
            ASSERT_FALSE(line.empty());
            ASSERT_NE(line.back(), ' ');
            ASSERT_NE(line.back(), '\t');
            std::size_t body = 0;
            while (body < line.size() && (line[body] == ' ' || line[body] == '\t')) ++body;
            if (!sensitive) {
                ASSERT_EQ(body, 0u) << line;
            }
            ASSERT_EQ(line.find("  ", body), std::string::npos) << line;
            ASSERT_EQ(line.find('\t', body), std::string::npos) << line;
        }
    }
}

TEST(NormalizerProperties, CommentInsensitive) {
    std::mt19937_64 rng(202);
    for (int i = 0; i < 10000; ++i) {
        const auto lang = kSupportedLanguages[static_cast<std::size_t>(i) % kSupportedLanguages.size()];
        const auto sketch = testing::random_sketch(rng, lang);
        const auto plain = testing::render_sketch(sketch);
        const auto commented = testing::render_with_comments(sketch, rng);
        ASSERT_EQ(normalize(commented, lang), normalize(plain, lang))
            << language_id(lang) << ":\n" << plain << "---\n" << commented;
    }
}

TEST(NormalizerProperties, ReindentationSensitivity) {
    std::mt19937_64 rng(303);
    for (int i = 0; i < 2200; ++i) {
        const auto lang = kSupportedLanguages[static_cast<std::size_t>(i) % kSupportedLanguages.size()];
        const auto code = testing::render_sketch(testing::random_sketch(rng, lang));
        const bool sensitive = lang == Language::python || lang == Language::ruby;
        ASSERT_EQ(code_equivalent(code, testing::reindent(code, "  "), lang), !sensitive)
            << language_id(lang) << ":\n" << code;
    }
}

TEST(NormalizerProperties, EquivalenceRelation) {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 3000; ++i) {
        const auto lang = kSupportedLanguages[static_cast<std::size_t>(i) % kSupportedLanguages.size()];
        const auto sketch = testing::random_sketch(rng, lang);
        const auto a = testing::render_with_comments(sketch, rng);
        const auto b = testing::render_with_comments(sketch, rng);
        const auto c = rng() % 2 == 0 ? testing::render_with_comments(sketch, rng)
                                      : testing::render_sketch(testing::random_sketch(rng, lang));
        ASSERT_TRUE(code_equivalent(a, a, lang));
        ASSERT_EQ(code_equivalent(a, c, lang), code_equivalent(c, a, lang));
        if (code_equivalent(a, b, lang) && code_equivalent(b, c, lang)) {
            ASSERT_TRUE(code_equivalent(a, c, lang));
        }
    }
}

}  // namespace
}  // namespace hunkbench
