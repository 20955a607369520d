#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hunkbench/process.hpp"

namespace hunkbench {

struct CommitParents {
    std::string commit;
    std::vector<std::string> parents;
};

/// Read-only access to a local clone through the git command line.
class GitRepo {
public:
    /// Throws NotARepository, or ToolUnavailable when git cannot be run.
    explicit GitRepo(std::filesystem::path path);

    const std::filesystem::path& path() const noexcept { return path_; }

    /// Full ref name HEAD points to, if HEAD is a symbolic ref.
    std::optional<std::string> head_ref() const;

    /// Local and remote-tracking branch refs, excluding symbolic refs.
    std::vector<std::string> branch_refs() const;

    /// Merge commits reachable from any of `refs`, with their parents.
    std::vector<CommitParents> merge_commits(const std::vector<std::string>& refs) const;

    std::optional<std::string> merge_base(const std::string& a, const std::string& b) const;

    /// Paths whose content differs between the two commits (renames off).
    std::vector<std::string> changed_paths(const std::string& from, const std::string& to) const;

    /// Blob content of `path` at `commit`; nullopt when the path does not exist.
    std::optional<std::string> read_file(const std::string& commit, const std::string& path) const;

    /// Runs `git -C <repo> args...`; throws ToolFailure on non-zero exit.
    std::string git(const std::vector<std::string>& args, const std::string& input = {}) const;

private:
    ProcessResult run(const std::vector<std::string>& args, const std::string& input = {}) const;

    std::filesystem::path path_;
};

}  // namespace hunkbench
