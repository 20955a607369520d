#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hunkbench/extractor.hpp"
#include "hunkbench/process.hpp"

namespace hunkbench::testing {

/// A fresh directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// Scripted repository built through the git command line.
class GitFixture {
public:
    /// Initialises an empty repository with default branch "main".
    explicit GitFixture(std::filesystem::path dir);

    const std::filesystem::path& path() const noexcept { return dir_; }

    void write(const std::string& rel, const std::string& content) const;
    void remove(const std::string& rel) const;

    /// Stages everything and commits; returns the new commit hash.
    std::string commit(const std::string& message) const;
    void checkout(const std::string& branch, bool create = false) const;

    /// `git merge --no-ff --no-commit`; conflicts are expected, so the exit
    /// status is ignored.
    void merge_no_commit(const std::string& branch) const;

    /// Throws on failure.
    std::string git(const std::vector<std::string>& args, const std::string& input = {}) const;

private:
    std::filesystem::path dir_;
};

/// Lines joined with '\n' plus a final newline.
std::string text_of(const std::vector<std::string>& lines);

/// One planted conflict: the edits on each side and the committed resolution.
struct PlantedCase {
    std::string path;
    std::vector<std::string> left;
    std::vector<std::string> base;
    std::vector<std::string> right;
    std::vector<std::string> resolution;
    /// Empty for cases that must be accepted.
    std::string expected_reject;
};

struct PlantedRepo {
    std::string merge_commit;
    std::vector<PlantedCase> cases;
};

/// Builds the pipeline fixture: ten conflicts whose resolutions must be
/// extracted exactly and one case per size, alignment and token filter.
PlantedRepo build_planted_repo(const std::filesystem::path& dir);

/// Runs `git merge-file -p --diff3` on the three texts.
ProcessResult git_merge_file(const std::string& base, const std::string& left, const std::string& right,
                             const TempDir& scratch);

struct TextTriple {
    std::string base;
    std::string left;
    std::string right;
};

/// Random documents of at most 40 lines over a 4-symbol line alphabet.
/// Half of the triples derive both sides from the base by local edits, the
/// rest are independent; a few lack a final newline.
TextTriple random_triple(std::mt19937_64& rng);

/// A synthetic sample with unique, language-appropriate lines.
MergeSample synthetic_sample(std::size_t n, Language lang, std::size_t context_lines = 3);

/// Model answers built from a sample.
std::string fenced(const MergeSample& s, const std::vector<std::string>& body);
std::string echo_resolution(const MergeSample& s);
std::string echo_conflict(const MergeSample& s);

}  // namespace hunkbench::testing
