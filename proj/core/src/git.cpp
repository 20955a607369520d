#include "hunkbench/git.hpp"

#include <algorithm>
#include <sstream>

#include "hunkbench/error.hpp"

namespace hunkbench {
namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find(sep, start);
        if (end == std::string::npos) end = text.size();
        if (end > start) out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::string trim_newline(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

}  // namespace

GitRepo::GitRepo(std::filesystem::path path) : path_(std::move(path)) {
    std::error_code ec;
    if (!std::filesystem::is_directory(path_, ec)) {
        throw NotARepository(path_.string() + ": not a directory");
    }
    const auto r = run({"rev-parse", "--git-dir"});
    if (r.exit_code != 0) {
        throw NotARepository(path_.string() + ": " + trim_newline(r.err));
    }
}

ProcessResult GitRepo::run(const std::vector<std::string>& args, const std::string& input) const {
    std::vector<std::string> argv{"git", "-C", path_.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_process(argv, input);
}

std::string GitRepo::git(const std::vector<std::string>& args, const std::string& input) const {
    auto r = run(args, input);
    if (r.exit_code != 0) {
        std::ostringstream msg;
        msg << "git";
        for (const auto& a : args) msg << ' ' << a;
        msg << " failed (" << r.exit_code << "): " << trim_newline(r.err);
        throw ToolFailure(msg.str());
    }
    return std::move(r.out);
}

std::optional<std::string> GitRepo::head_ref() const {
    const auto r = run({"symbolic-ref", "--quiet", "HEAD"});
    if (r.exit_code != 0) return std::nullopt;
    return trim_newline(r.out);
}

std::vector<std::string> GitRepo::branch_refs() const {
    const auto out = git({"for-each-ref", "--format=%(refname)%00%(symref)", "refs/heads", "refs/remotes"});
    std::vector<std::string> refs;
    for (const auto& line : split_on(out, '\n')) {
        const auto nul = line.find('\0');
        const bool symbolic = nul != std::string::npos && nul + 1 < line.size();
        if (symbolic) continue;
        refs.push_back(line.substr(0, nul));
    }
    return refs;
}

std::vector<CommitParents> GitRepo::merge_commits(const std::vector<std::string>& refs) const {
    if (refs.empty()) return {};
    std::string input;
    for (const auto& r : refs) input += r + "\n";
    const auto out = git({"rev-list", "--merges", "--parents", "--stdin"}, input);
    std::vector<CommitParents> merges;
    for (const auto& line : split_on(out, '\n')) {
        auto fields = split_on(line, ' ');
        if (fields.size() < 3) continue;
        CommitParents cp;
        cp.commit = fields.front();
        cp.parents.assign(fields.begin() + 1, fields.end());
        merges.push_back(std::move(cp));
    }
    return merges;
}

std::optional<std::string> GitRepo::merge_base(const std::string& a, const std::string& b) const {
    const auto r = run({"merge-base", a, b});
    if (r.exit_code == 1) return std::nullopt;
    if (r.exit_code != 0) throw ToolFailure("git merge-base failed: " + trim_newline(r.err));
    return trim_newline(r.out);
}

std::vector<std::string> GitRepo::changed_paths(const std::string& from, const std::string& to) const {
    const auto out = git({"diff", "--no-renames", "--no-ext-diff", "--name-only", "-z", from, to});
    auto paths = split_on(out, '\0');
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::optional<std::string> GitRepo::read_file(const std::string& commit, const std::string& path) const {
    const std::string spec = commit + ":" + path;
    const auto type = run({"cat-file", "-t", spec});
    if (type.exit_code != 0) return std::nullopt;
    if (trim_newline(type.out) != "blob") return std::nullopt;
    return git({"cat-file", "blob", spec});
}

}  // namespace hunkbench
