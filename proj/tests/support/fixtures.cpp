#include "fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hunkbench/conflict_markers.hpp"
#include "hunkbench/miner.hpp"

namespace hunkbench::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "hunkbench-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

GitFixture::GitFixture(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    git({"init", "--quiet", "--initial-branch=main"});
}

std::string GitFixture::git(const std::vector<std::string>& args, const std::string& input) const {
    std::vector<std::string> argv = {"git",
                                     "-C",
                                     dir_.string(),
                                     "-c",
                                     "user.name=Fixture",
                                     "-c",
                                     "user.email=fixture@example.com",
                                     "-c",
                                     "commit.gpgsign=false",
                                     "-c",
                                     "core.autocrlf=false"};
    argv.insert(argv.end(), args.begin(), args.end());
    const auto r = run_process(argv, input);
    if (r.exit_code != 0) throw std::runtime_error("git " + args.front() + " failed: " + r.err);
    auto out = r.out;
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

void GitFixture::write(const std::string& rel, const std::string& content) const { write_text(dir_ / rel, content); }

void GitFixture::remove(const std::string& rel) const { fs::remove(dir_ / rel); }

std::string GitFixture::commit(const std::string& message) const {
    git({"add", "-A"});
    git({"commit", "--quiet", "--allow-empty", "-m", message});
    return git({"rev-parse", "HEAD"});
}

void GitFixture::checkout(const std::string& branch, bool create) const {
    if (create) git({"checkout", "--quiet", "-b", branch});
    else git({"checkout", "--quiet", branch});
}

void GitFixture::merge_no_commit(const std::string& branch) const {
    run_process({"git", "-C", dir_.string(), "-c", "user.name=Fixture", "-c", "user.email=fixture@example.com",
                 "merge", "--no-ff", "--no-commit", "--quiet", branch});
}

std::string text_of(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

namespace {

struct CaseSpec {
    PlantedCase planted;
    std::vector<std::string> head;
    std::vector<std::string> tail;
    bool edit_pre_context = false;
};

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("    int " + stem + "_" + std::to_string(i) + " = " + std::to_string(i) + ";");
    return out;
}

CaseSpec java_case(const std::string& cls, std::size_t before, std::size_t after, std::vector<std::string> base,
                   std::vector<std::string> left, std::vector<std::string> right, std::vector<std::string> resolution,
                   std::string reject = {}) {
    CaseSpec c;
    c.planted.path = "src/" + cls + ".java";
    c.planted.base = std::move(base);
    c.planted.left = std::move(left);
    c.planted.right = std::move(right);
    c.planted.resolution = std::move(resolution);
    c.planted.expected_reject = std::move(reject);
    c.head = {"package fixture;", "", "public class " + cls + " {"};
    for (auto& l : numbered("pre" + cls, before)) c.head.push_back(l);
    c.tail = numbered("post" + cls, after);
    c.tail.push_back("}");
    return c;
}

std::string file_with(const CaseSpec& c, const std::vector<std::string>& middle) {
    std::vector<std::string> lines = c.head;
    lines.insert(lines.end(), middle.begin(), middle.end());
    lines.insert(lines.end(), c.tail.begin(), c.tail.end());
    return text_of(lines);
}

std::vector<CaseSpec> planted_specs() {
    std::vector<CaseSpec> specs;
    specs.push_back(java_case("Alpha", 5, 5, {"    int alpha = 0;"}, {"    int alpha = 1;"}, {"    int alpha = 2;"},
                              {"    int alpha = 3;"}));
    specs.push_back(java_case("Beta", 4, 6, {"    int beta = 0;"}, {"    int beta = 1;", "    int betaExtra = 1;"},
                              {"    int beta = 2;"}, {"    int beta = 1;", "    int betaExtra = 1;"}));
    specs.push_back(java_case("Gamma", 6, 3, {"    String gamma = \"g\";"}, {"    String gamma = \"left\";"},
                              {"    String gamma = \"right\";", "    String gammaTwo = gamma;"},
                              {"    String gamma = \"right\";", "    String gammaTwo = gamma;"}));
    specs.push_back(java_case("Delta", 3, 3, {"    void delta() {}"}, {"    void delta() { left(); }"},
                              {"    void delta() { right(); }"},
                              {"    void delta() {", "        left(); right();", "    }"}));
    specs.push_back(java_case("Epsilon", 5, 5, {"    int epsilon = 0;"}, {"    int epsilon = 1;"},
                              {"    int epsilon = 2;"}, {}));
    specs.push_back(java_case("Zeta", 40, 40, {"    int zeta = 0;"}, {"    int zeta = 1;"}, {"    int zeta = 2;"},
                              {"    int zeta = 12;"}));

    // Conflict on the first line of the file: empty pre-context.
    CaseSpec eta = java_case("Eta", 0, 4, {"package eta;"}, {"package eta.left;"}, {"package eta.right;"},
                             {"package eta.merged;"});
    eta.head.clear();
    eta.tail.insert(eta.tail.begin(), {"", "public class Eta {"});
    specs.push_back(eta);

    // Conflict on the last line of the file: empty post-context.
    CaseSpec theta = java_case("Theta", 4, 0, {"// end theta"}, {"// end theta left"}, {"// end theta right"},
                               {"// end theta both"});
    theta.head.push_back("}");
    theta.tail.clear();
    specs.push_back(theta);

    specs.push_back(java_case("Iota", 4, 4, {}, {"    int iotaLeft = 1;"}, {"    int iotaRight = 2;"},
                              {"    int iotaLeft = 1;", "    int iotaRight = 2;"}));
    specs.push_back(java_case("Kappa", 4, 4, {"    int kappa = 0;", "    int kappaTwo = 0;"},
                              {"    int kappa = 1;", "    int kappaTwo = 1;"},
                              {"    int kappa = 2;", "    int kappaTwo = 2;"},
                              {"    int kappa = 1;", "    int kappaTwo = 2;", "    int kappaThree = 3;"}));

    specs.push_back(java_case("Lambda", 4, 4, {"    int lambda = 0;"}, numbered("lambdaLeft", 21),
                              {"    int lambda = 2;"}, {"    int lambda = 2;", "    int lambdaLeft_0 = 0;"},
                              "SideTooLarge"));
    specs.push_back(java_case("Mu", 4, 4, {"    int mu = 0;"}, {"    int mu = 1;"}, {"    int mu = 2;"},
                              {"    int mu = 1;", "    int mu2 = 2;", "    int mu3 = 3;", "    int mu4 = 4;"},
                              "ResolutionTooLarge"));
    CaseSpec nu = java_case("Nu", 4, 4, {"    int nu = 0;"}, {"    int nu = 1;"}, {"    int nu = 2;"},
                            {"    int nu = 3;"}, "MissingContext");
    nu.edit_pre_context = true;
    specs.push_back(nu);

    CaseSpec xi = java_case("Xi", 3, 3, {"    int xi = 0;"}, {"    int xi = 1;"}, {"    int xi = 2;"}, {},
                            "RepeatedContext");
    xi.planted.resolution = xi.head;
    xi.planted.resolution.push_back("    int xi = 3;");
    specs.push_back(xi);

    const std::string filler_a(1100, 'a');
    const std::string filler_b(1100, 'b');
    specs.push_back(java_case("Omicron", 3, 3, {"    String omicron = \"\";"},
                              {"    String omicron = \"" + filler_a + "\";"},
                              {"    String omicron = \"" + filler_b + "\";"},
                              {"    String omicron = \"" + filler_a + "\";"}, "TooManyTokens"));
    return specs;
}

}  // namespace

PlantedRepo build_planted_repo(const fs::path& dir) {
    const auto specs = planted_specs();
    GitFixture repo(dir);
    for (const auto& s : specs) repo.write(s.planted.path, file_with(s, s.planted.base));
    repo.write("README.md", "fixture\n");
    repo.commit("base");

    repo.checkout("feature", true);
    for (const auto& s : specs) repo.write(s.planted.path, file_with(s, s.planted.right));
    repo.commit("right side");

    repo.checkout("main");
    for (const auto& s : specs) repo.write(s.planted.path, file_with(s, s.planted.left));
    repo.commit("left side");

    repo.merge_no_commit("feature");
    for (const auto& s : specs) {
        auto resolved = file_with(s, s.planted.resolution);
        if (s.edit_pre_context) {
            CaseSpec edited = s;
            edited.head.back() += " // edited during merge";
            resolved = file_with(edited, s.planted.resolution);
        }
        repo.write(s.planted.path, resolved);
    }
    PlantedRepo out;
    out.merge_commit = repo.commit("merge feature");
    for (const auto& s : specs) out.cases.push_back(s.planted);
    return out;
}

ProcessResult git_merge_file(const std::string& base, const std::string& left, const std::string& right,
                             const TempDir& scratch) {
    write_text(scratch / "base", base);
    write_text(scratch / "left", left);
    write_text(scratch / "right", right);
    return run_process({"git", "merge-file", "-p", "--diff3", "-L", "left", "-L", "base", "-L", "right",
                        (scratch / "left").string(), (scratch / "base").string(), (scratch / "right").string()});
}

namespace {

std::vector<std::string> random_doc(std::mt19937_64& rng, std::size_t max_lines) {
    std::uniform_int_distribution<std::size_t> len(0, max_lines);
    std::uniform_int_distribution<int> sym(0, 3);
    std::vector<std::string> out(len(rng));
    for (auto& l : out) l = std::string(1, static_cast<char>('a' + sym(rng)));
    return out;
}

std::vector<std::string> mutate(std::vector<std::string> doc, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> sym(0, 3);
    const auto edits = rng() % 5;
    for (std::size_t e = 0; e < edits; ++e) {
        const auto pos = doc.empty() ? 0 : rng() % (doc.size() + 1);
        switch (rng() % 3) {
            case 0:
                if (pos < doc.size()) doc.erase(doc.begin() + static_cast<std::ptrdiff_t>(pos));
                break;
            case 1:
                if (doc.size() < 40) doc.insert(doc.begin() + static_cast<std::ptrdiff_t>(pos), std::string(1, static_cast<char>('a' + sym(rng))));
                break;
            default:
                if (pos < doc.size()) doc[pos] = std::string(1, static_cast<char>('a' + sym(rng)));
                break;
        }
    }
    if (doc.size() > 40) doc.resize(40);
    return doc;
}

std::string render_doc(const std::vector<std::string>& doc, std::mt19937_64& rng) {
    auto text = text_of(doc);
    if (!text.empty() && rng() % 10 == 0) text.pop_back();
    return text;
}

std::string statement(Language lang, const std::string& name, std::size_t value) {
    const auto v = std::to_string(value);
    switch (lang) {
        case Language::python: return "    " + name + " = " + v;
        case Language::ruby: return "  " + name + " = " + v;
        case Language::go: return "\t" + name + " := " + v;
        case Language::rust: return "    let " + name + " = " + v + ";";
        case Language::javascript:
        case Language::typescript: return "  const " + name + " = " + v + ";";
        case Language::php: return "    $" + name + " = " + v + ";";
        default: return "    int " + name + " = " + v + ";";
    }
}

}  // namespace

TextTriple random_triple(std::mt19937_64& rng) {
    if (rng() % 2 == 0) {
        return {render_doc(random_doc(rng, 40), rng), render_doc(random_doc(rng, 40), rng),
                render_doc(random_doc(rng, 40), rng)};
    }
    const auto base = random_doc(rng, 40);
    return {render_doc(base, rng), render_doc(mutate(base, rng), rng), render_doc(mutate(base, rng), rng)};
}

MergeSample synthetic_sample(std::size_t n, Language lang, std::size_t context_lines) {
    MergeSample s;
    const auto tag = "s" + std::to_string(n);
    s.id = hunk_id("synthetic", "0000000000000000000000000000000000000000", tag, 0);
    s.language = lang;
    for (std::size_t i = 0; i < context_lines; ++i) s.pre_context.lines.push_back(statement(lang, tag + "_pre" + std::to_string(i), i));
    for (std::size_t i = 0; i < context_lines; ++i) s.post_context.lines.push_back(statement(lang, tag + "_post" + std::to_string(i), i));
    s.base.lines = {statement(lang, tag + "_value", 0)};
    s.left.lines = {statement(lang, tag + "_value", 1)};
    s.right.lines = {statement(lang, tag + "_value", 2), statement(lang, tag + "_extra", 2)};
    s.ground_truth.lines = {statement(lang, tag + "_value", 1), statement(lang, tag + "_extra", 2)};
    s.conflict_text = render_sample_conflict(s.pre_context, s.left, s.base, s.right, s.post_context);
    s.repo_id = "synthetic";
    s.merge_commit = "0000000000000000000000000000000000000000";
    s.path = tag;
    return s;
}

std::string fenced(const MergeSample& s, const std::vector<std::string>& body) {
    std::string out = "Here is the merged snippet.\n```" + std::string(language_id(s.language)) + "\n";
    for (const auto& l : body) out += l + "\n";
    return out + "```\n";
}

std::string echo_resolution(const MergeSample& s) {
    std::vector<std::string> body = s.pre_context.lines;
    body.insert(body.end(), s.ground_truth.lines.begin(), s.ground_truth.lines.end());
    body.insert(body.end(), s.post_context.lines.begin(), s.post_context.lines.end());
    return fenced(s, body);
}

std::string echo_conflict(const MergeSample& s) {
    return "```" + std::string(language_id(s.language)) + "\n" + s.conflict_text + "\n```\n";
}

}  // namespace hunkbench::testing
