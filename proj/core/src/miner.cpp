#include "hunkbench/miner.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

#include "hunkbench/error.hpp"
#include "hunkbench/git.hpp"
#include "hunkbench/hash.hpp"

namespace hunkbench {

std::string hunk_id(const std::string& repo_id, const std::string& merge_commit,
                    const std::string& path, std::size_t hunk_index) {
    std::string key = repo_id;
    key.push_back('\0');
    key += merge_commit;
    key.push_back('\0');
    key += path;
    key.push_back('\0');
    key += std::to_string(hunk_index);
    return sha256_hex(key).substr(0, 16);
}

std::string CandidateHunk::id() const {
    return hunk_id(scenario->repo_id, scenario->merge_commit, path, hunk_index);
}

std::vector<std::string> enumerate_branches(const std::filesystem::path& repo_path, std::size_t cap) {
    const GitRepo repo(repo_path);
    auto refs = repo.branch_refs();
    std::sort(refs.begin(), refs.end());

    std::vector<std::string> out;
    if (const auto head = repo.head_ref()) {
        const auto it = std::find(refs.begin(), refs.end(), *head);
        if (it != refs.end()) {
            out.push_back(*it);
            refs.erase(it);
        }
    }
    for (auto& r : refs) {
        if (out.size() >= cap) break;
        out.push_back(std::move(r));
    }
    if (out.size() > cap) out.resize(cap);
    return out;
}

std::vector<MergeScenario> find_merges(const std::filesystem::path& repo_path,
                                       const std::vector<std::string>& refs,
                                       const std::string& repo_id) {
    const GitRepo repo(repo_path);
    std::vector<MergeScenario> out;
    std::set<std::string> seen;
    for (const auto& m : repo.merge_commits(refs)) {
        if (m.parents.size() != 2) continue;
        if (!seen.insert(m.commit).second) continue;
        const auto base = repo.merge_base(m.parents[0], m.parents[1]);
        if (!base) {
            spdlog::debug("{}: merge {} has unrelated parents, skipped", repo_id, m.commit);
            continue;
        }
        MergeScenario s;
        s.repo_id = repo_id;
        s.merge_commit = m.commit;
        s.parent_left = m.parents[0];
        s.parent_right = m.parents[1];
        s.merge_base = *base;

        const auto left_paths = repo.changed_paths(s.merge_base, s.parent_left);
        const auto right_paths = repo.changed_paths(s.merge_base, s.parent_right);
        std::set_intersection(left_paths.begin(), left_paths.end(), right_paths.begin(),
                              right_paths.end(), std::back_inserter(s.conflicted_paths));
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

bool is_binary(const std::string& content) { return content.find('\0') != std::string::npos; }

// Records are stored as JSON, which cannot carry arbitrary bytes.
bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        if (c < 0x80) len = 1;
        else if ((c & 0xE0) == 0xC0 && c >= 0xC2) len = 2;
        else if ((c & 0xF0) == 0xE0) len = 3;
        else if ((c & 0xF8) == 0xF0 && c <= 0xF4) len = 4;
        else return false;
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
        }
        i += len;
    }
    return true;
}

MergeOutcome neighbourhood_of(const MergeOutcome& outcome, std::size_t region_index,
                              std::size_t& local_index) {
    const auto& regions = outcome.regions;
    std::size_t first = region_index;
    if (first > 0) {
        --first;
        if (std::holds_alternative<StableRegion>(regions[first]) && first > 0) --first;
    }
    std::size_t last = region_index;
    if (last + 1 < regions.size()) {
        ++last;
        if (std::holds_alternative<StableRegion>(regions[last]) && last + 1 < regions.size()) ++last;
    }
    MergeOutcome out;
    local_index = 0;
    for (std::size_t i = first; i <= last; ++i) {
        if (i < region_index && std::holds_alternative<ConflictRegion>(regions[i])) ++local_index;
        out.regions.push_back(regions[i]);
    }
    return out;
}

}  // namespace

std::vector<CandidateHunk> replay_merge(const std::filesystem::path& repo_path,
                                        const std::shared_ptr<const MergeScenario>& scenario) {
    const GitRepo repo(repo_path);
    std::vector<CandidateHunk> out;
    for (const auto& path : scenario->conflicted_paths) {
        const auto base = repo.read_file(scenario->merge_base, path);
        const auto left = repo.read_file(scenario->parent_left, path);
        const auto right = repo.read_file(scenario->parent_right, path);
        if (!base || !left || !right) continue;
        if (is_binary(*base) || is_binary(*left) || is_binary(*right)) continue;
        if (!valid_utf8(*base) || !valid_utf8(*left) || !valid_utf8(*right)) {
            spdlog::debug("{}: {} is not UTF-8, skipped", scenario->repo_id, path);
            continue;
        }

        const auto outcome = merge3(LineSeq::split(*base), LineSeq::split(*left), LineSeq::split(*right));
        if (outcome.clean()) continue;

        const auto resolved = repo.read_file(scenario->merge_commit, path);
        if (!resolved) {
            spdlog::warn("{}: {} missing at {}, candidates skipped", scenario->repo_id, path,
                         scenario->merge_commit);
            continue;
        }
        if (!valid_utf8(*resolved)) continue;
        const auto resolved_file = LineSeq::split(*resolved);

        for (std::size_t k = 0; k < outcome.conflict_count(); ++k) {
            const auto region_index = outcome.conflict_region_index(k);
            const auto& c = std::get<ConflictRegion>(outcome.regions[region_index]);
            if (c.left.lines == c.right.lines) {
                spdlog::debug("{}: {} conflict {} has identical sides, skipped", scenario->repo_id, path, k);
                continue;
            }
            CandidateHunk cand;
            cand.scenario = scenario;
            cand.path = path;
            cand.language = language_from_path(path);
            cand.hunk_index = k;
            cand.hunk.left = c.left;
            cand.hunk.base = c.base;
            cand.hunk.right = c.right;
            cand.neighbourhood = neighbourhood_of(outcome, region_index, cand.local_index);
            cand.resolved_file = resolved_file;
            out.push_back(std::move(cand));
        }
    }
    return out;
}

std::vector<CandidateHunk> sample_hunks(const std::vector<CandidateHunk>& candidates,
                                        std::size_t target_min, std::size_t target_max,
                                        std::size_t per_repo_cap, std::uint64_t seed) {
    if (target_min > target_max) throw std::invalid_argument("target_min exceeds target_max");

    std::map<Language, std::vector<std::pair<std::string, const CandidateHunk*>>> by_language;
    for (const auto& c : candidates) by_language[c.language].emplace_back(c.id(), &c);

    std::vector<CandidateHunk> out;
    for (auto& [lang, group] : by_language) {
        std::sort(group.begin(), group.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(lang) + 1)));
        for (std::size_t i = group.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng() % i);
            std::swap(group[i - 1], group[j]);
        }

        std::unordered_map<std::string, std::size_t> per_repo;
        std::size_t taken = 0;
        for (const auto& [id, cand] : group) {
            if (taken >= target_max) break;
            auto& n = per_repo[cand->scenario->repo_id];
            if (n >= per_repo_cap) continue;
            ++n;
            ++taken;
            out.push_back(*cand);
        }
        if (taken < target_min) {
            spdlog::info("{}: only {} hunks available (target {}-{})", language_id(lang), taken,
                         target_min, target_max);
        }
    }
    return out;
}

std::vector<std::string> read_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw FormatError("cannot read manifest " + manifest.string());
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        entries.push_back(line.substr(b, e - b + 1));
    }
    return entries;
}

namespace {

bool is_clone_url(const std::string& entry) {
    return entry.find("://") != std::string::npos || entry.rfind("git@", 0) == 0;
}

std::filesystem::path local_clone(const std::string& entry, const MineOptions& options) {
    if (!is_clone_url(entry)) return entry;
    std::string name;
    for (char ch : entry) name.push_back(std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
    const auto dir = options.clone_dir / name;
    if (!std::filesystem::exists(dir)) {
        std::filesystem::create_directories(options.clone_dir);
        const auto r = run_process({"git", "clone", "--quiet", "--no-checkout", entry, dir.string()});
        if (r.exit_code != 0) throw ToolFailure("git clone " + entry + " failed: " + r.err);
    }
    return dir;
}

void mine_one(const std::string& entry, const MineOptions& options, std::vector<CandidateHunk>& out,
              RepoStats& stats) {
    stats.repo_id = entry;
    const auto path = local_clone(entry, options);
    const auto refs = enumerate_branches(path, options.max_branches);
    stats.branches = refs.size();
    const auto scenarios = find_merges(path, refs, entry);
    stats.merges = scenarios.size();
    for (const auto& s : scenarios) {
        auto shared = std::make_shared<const MergeScenario>(s);
        try {
            auto cands = replay_merge(path, shared);
            std::set<std::string> files;
            for (const auto& c : cands) files.insert(c.path);
            stats.conflicted_files += files.size();
            stats.candidates += cands.size();
            std::move(cands.begin(), cands.end(), std::back_inserter(out));
        } catch (const Error& e) {
            spdlog::warn("{}: replay of {} failed: {}", entry, s.merge_commit, e.what());
        }
    }
}

}  // namespace

MiningRun mine_repositories(const std::vector<std::string>& entries, const MineOptions& options) {
    std::vector<std::vector<CandidateHunk>> per_repo(entries.size());
    std::vector<RepoStats> stats(entries.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (auto i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1)) {
            try {
                mine_one(entries[i], options, per_repo[i], stats[i]);
                spdlog::info("{}: {} branches, {} merges, {} conflicted files, {} candidates",
                             entries[i], stats[i].branches, stats[i].merges,
                             stats[i].conflicted_files, stats[i].candidates);
            } catch (const std::exception& e) {
                stats[i].repo_id = entries[i];
                stats[i].error = e.what();
                per_repo[i].clear();
                spdlog::error("skipping repository: {}", e.what());
            }
        }
    };

    const auto workers = std::max<std::size_t>(1, std::min(options.jobs, entries.size()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    pool.clear();

    MiningRun run;
    run.repos = std::move(stats);
    for (auto& v : per_repo) std::move(v.begin(), v.end(), std::back_inserter(run.candidates));
    return run;
}

}  // namespace hunkbench
