#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hunkbench/language.hpp"
#include "hunkbench/merge.hpp"

namespace hunkbench {

struct MergeScenario {
    std::string repo_id;
    std::string merge_commit;
    std::string parent_left;
    std::string parent_right;
    std::string merge_base;
    /// Paths changed on both sides relative to the merge base.
    std::vector<std::string> conflicted_paths;

    friend bool operator==(const MergeScenario&, const MergeScenario&) = default;
};

/// One conflicted region found by replaying a merge.
struct CandidateHunk {
    std::shared_ptr<const MergeScenario> scenario;
    std::string path;
    Language language = Language::unknown;
    /// Ordinal of this conflict among the conflicts of the replayed file.
    std::size_t hunk_index = 0;
    /// Conflict sides; context stays empty until attach_context runs.
    ConflictHunk hunk;
    /// The conflict with its neighbouring regions: at most the previous
    /// conflict, the stable lines before, this conflict, the stable lines
    /// after, and the next conflict.
    MergeOutcome neighbourhood;
    /// Conflict ordinal of this hunk inside `neighbourhood`.
    std::size_t local_index = 0;
    /// The file as committed in the merge commit.
    LineSeq resolved_file;

    std::string id() const;
};

/// Stable sample id: a hash of repository, merge commit, path and hunk index.
std::string hunk_id(const std::string& repo_id, const std::string& merge_commit,
                    const std::string& path, std::size_t hunk_index);

/// Branch refs of a local clone: the default branch first, then the rest in
/// lexicographic order, at most `cap` of them.
std::vector<std::string> enumerate_branches(const std::filesystem::path& repo_path, std::size_t cap);

/// Two-parent merge commits reachable from `refs`, each listed once, with
/// their merge base. Merges whose parents share no ancestor are dropped.
std::vector<MergeScenario> find_merges(const std::filesystem::path& repo_path,
                                       const std::vector<std::string>& refs,
                                       const std::string& repo_id);

/// Re-merges every file changed on both sides and emits one candidate per
/// conflict whose sides differ.
std::vector<CandidateHunk> replay_merge(const std::filesystem::path& repo_path,
                                        const std::shared_ptr<const MergeScenario>& scenario);

/// Per-language sampling with a per-repository cap. Deterministic for a
/// fixed seed and independent of the input order.
std::vector<CandidateHunk> sample_hunks(const std::vector<CandidateHunk>& candidates,
                                        std::size_t target_min, std::size_t target_max,
                                        std::size_t per_repo_cap, std::uint64_t seed);

struct MineOptions {
    std::size_t max_branches = 1000;
    std::size_t jobs = 4;
    /// Where manifest entries given as clone URLs are cloned.
    std::filesystem::path clone_dir = "clones";
};

struct RepoStats {
    std::string repo_id;
    std::size_t branches = 0;
    std::size_t merges = 0;
    std::size_t conflicted_files = 0;
    std::size_t candidates = 0;
    std::optional<std::string> error;
};

struct MiningRun {
    std::vector<CandidateHunk> candidates;
    std::vector<RepoStats> repos;
};

/// Reads a manifest: one path or clone URL per line, '#' starts a comment.
std::vector<std::string> read_manifest(const std::filesystem::path& manifest);

/// Mines every entry on a bounded worker pool. Failures are recorded per
/// repository; results keep manifest order.
MiningRun mine_repositories(const std::vector<std::string>& entries, const MineOptions& options);

}  // namespace hunkbench
