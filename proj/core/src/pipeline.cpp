#include "hunkbench/pipeline.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hunkbench/dataset.hpp"
#include "hunkbench/error.hpp"
#include "hunkbench/hash.hpp"
#include "hunkbench/normalizer.hpp"
#include "hunkbench/report.hpp"

#ifndef HUNKBENCH_VERSION
#define HUNKBENCH_VERSION "0.0.0"
#endif

namespace hunkbench {

using nlohmann::json;

std::string_view tool_version() noexcept { return HUNKBENCH_VERSION; }

std::filesystem::path manifest_path(const std::filesystem::path& out) {
    auto p = out;
    p += ".manifest.json";
    return p;
}

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

void write_manifest(const std::filesystem::path& out, std::string_view command, json config,
                    const std::vector<std::filesystem::path>& inputs) {
    json hashes = json::array();
    for (const auto& in : inputs) hashes.push_back(file_sha256(in));
    const json manifest = {
        {"tool_version", tool_version()},
        {"command", command},
        {"created_at", utc_now()},
        {"config", std::move(config)},
        {"input_sha256", hashes},
    };
    write_file_atomic(manifest_path(out), manifest.dump(2) + "\n");
}

json policy_json(const ContextPolicy& p) {
    return {{"max_context_lines", p.max_context_lines},
            {"max_side_lines", p.max_side_lines},
            {"max_conflict_tokens", p.max_conflict_tokens}};
}

}  // namespace

int cmd_mine(const MineCommand& cmd) {
    const auto entries = read_manifest(cmd.manifest);
    if (entries.empty()) {
        spdlog::error("no repositories in {}", cmd.manifest.string());
        return exit_failure;
    }
    if (cmd.target_min > cmd.target_max) {
        spdlog::error("target_min {} exceeds target_max {}", cmd.target_min, cmd.target_max);
        return exit_usage;
    }
    write_manifest(cmd.out, "mine",
                   {{"max_branches", cmd.mine.max_branches},
                    {"jobs", cmd.mine.jobs},
                    {"target_min", cmd.target_min},
                    {"target_max", cmd.target_max},
                    {"per_repo_cap", cmd.per_repo_cap},
                    {"seed", cmd.seed}},
                   {cmd.manifest});

    const auto run = mine_repositories(entries, cmd.mine);
    auto sampled = sample_hunks(run.candidates, cmd.target_min, cmd.target_max, cmd.per_repo_cap, cmd.seed);
    std::sort(sampled.begin(), sampled.end(), [](const CandidateHunk& a, const CandidateHunk& b) {
        return std::pair(a.language, a.id()) < std::pair(b.language, b.id());
    });
    write_candidates(cmd.out, sampled);

    const auto failed = static_cast<std::size_t>(
        std::count_if(run.repos.begin(), run.repos.end(), [](const RepoStats& s) { return s.error.has_value(); }));
    spdlog::info("mined {} repositories ({} failed): {} candidates, {} kept after sampling", run.repos.size(), failed,
                 run.candidates.size(), sampled.size());
    if (failed == run.repos.size()) return exit_failure;
    return failed > 0 ? exit_partial : exit_ok;
}

int cmd_build(const BuildCommand& cmd) {
    validate(cmd.policy);
    json config = {{"policy", policy_json(cmd.policy)}};
    std::unique_ptr<TokenCounter> tokens;
    std::vector<std::filesystem::path> inputs = {cmd.candidates};
    if (cmd.vocabulary.empty()) {
        tokens = std::make_unique<ByteRatioCounter>();
        config["tokenizer"] = "bytes/4";
    } else {
        tokens = std::make_unique<VocabularyCounter>(VocabularyCounter::load(cmd.vocabulary));
        config["tokenizer"] = "vocabulary";
        inputs.push_back(cmd.vocabulary);
    }
    write_manifest(cmd.out, "build", config, inputs);

    std::vector<std::string> skipped;
    const auto candidates = read_candidates(cmd.candidates, &skipped);

    std::vector<MergeSample> accepted;
    std::string rejection_log;
    std::map<RejectKind, std::size_t> counts;
    std::set<std::string> seen;
    for (const auto& c : candidates) {
        const auto id = c.id();
        if (!seen.insert(id).second) {
            spdlog::warn("duplicate candidate {} ignored", id);
            continue;
        }
        try {
            auto result = build_sample(c, cmd.policy, *tokens);
            if (auto* s = std::get_if<MergeSample>(&result)) {
                accepted.push_back(std::move(*s));
            } else {
                const auto& r = std::get<RejectReason>(result);
                ++counts[r.kind];
                rejection_log += fmt::format("{}\t{}\t{}\n", id, reject_kind_name(r.kind), r.detail);
            }
        } catch (const MarkerInContent& e) {
            spdlog::warn("{}: {}", id, e.what());
            skipped.push_back(id + ": " + e.what());
        }
    }

    auto rejections = cmd.rejections;
    if (rejections.empty()) {
        rejections = cmd.out;
        rejections += ".rejections.tsv";
    }
    write_samples(cmd.out, accepted);
    write_file_atomic(rejections, rejection_log);

    std::size_t rejected = 0;
    for (const auto& [kind, n] : counts) rejected += n;
    spdlog::info("{} accepted, {} rejected, {} skipped", accepted.size(), rejected, skipped.size());
    for (const auto& [kind, n] : counts) spdlog::info("  {}: {}", reject_kind_name(kind), n);
    return skipped.empty() ? exit_ok : exit_partial;
}

int cmd_eval(const EvalCommand& cmd) {
    validate(cmd.endpoint);
    const auto samples = read_samples(cmd.dataset);
    if (samples.empty()) {
        spdlog::error("dataset {} has no samples", cmd.dataset.string());
        return exit_failure;
    }
    const auto cache_dir = cmd.cache_dir.empty() ? default_cache_dir() : cmd.cache_dir;
    write_manifest(cmd.out, "eval",
                   {{"model", cmd.endpoint.model},
                    {"endpoint_sha256", endpoint_hash(cmd.endpoint)},
                    {"system_prompt_sha256", sha256_hex(cmd.system_text)},
                    {"temperature", cmd.endpoint.temperature},
                    {"max_output_tokens", cmd.endpoint.max_output_tokens},
                    {"parallelism", cmd.endpoint.parallelism}},
                   {cmd.dataset});

    CacheStore cache(cache_dir);
    auto transport = cmd.transport ? cmd.transport : std::make_shared<HttpChatEndpoint>();
    const auto run = run_benchmark(samples, cmd.endpoint, cmd.system_text, cache, *transport);

    std::vector<ResultRecord> records;
    records.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& outcome = run.outcomes[i];
        ResultRecord r;
        r.sample_id = samples[i].id;
        r.model_id = cmd.endpoint.model;
        r.language = samples[i].language;
        if (outcome.output) {
            r.category = classify(outcome.output->raw_text, samples[i]);
            r.reward = reward_for(outcome.output->raw_text, r.category);
        } else {
            r.ok = false;
            r.error = outcome.error;
        }
        records.push_back(std::move(r));
    }
    write_results(cmd.out, records);

    spdlog::info("{} samples: {} requests, {} cache hits, {} failures", samples.size(), run.requests, run.cache_hits,
                 run.failures);
    if (run.failures == samples.size()) return exit_failure;
    return run.failures > 0 ? exit_partial : exit_ok;
}

int cmd_report(const ReportCommand& cmd, std::ostream& out) {
    if (cmd.results.empty()) {
        spdlog::error("no results files given");
        return exit_usage;
    }
    std::vector<ResultRecord> records;
    std::vector<std::string> hashes;
    for (const auto& path : cmd.results) {
        auto part = read_results(path);
        records.insert(records.end(), part.begin(), part.end());
        hashes.push_back(file_sha256(path));
    }
    Report report;
    try {
        report = build_report(records, hashes);
    } catch (const EmptyInput& e) {
        spdlog::error("{}", e.what());
        return exit_failure;
    }

    auto csv_out = cmd.csv_out;
    if (csv_out.empty() && !cmd.text_out.empty()) {
        csv_out = cmd.text_out;
        csv_out.replace_extension(".csv");
    }
    if (!cmd.text_out.empty()) {
        write_manifest(cmd.text_out, "report", json::object(), cmd.results);
        write_file_atomic(cmd.text_out, render_text(report));
    } else {
        out << render_text(report);
    }
    if (!csv_out.empty()) write_file_atomic(csv_out, render_csv(report));
    return exit_ok;
}

int cmd_normalize(const std::string& language, const std::filesystem::path& file, std::ostream& out) {
    const auto lang = parse_language(language);
    if (!lang) {
        spdlog::error("unsupported language '{}'", language);
        return exit_usage;
    }
    const auto normalized = normalize(read_file(file), *lang);
    for (const auto& line : normalized.lines) out << line << '\n';
    return exit_ok;
}

RolloutGroup rollout_group_from_json(std::string_view line) {
    const auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw FormatError("rollout group is not a JSON object");
    try {
        RolloutGroup g;
        g.rewards = j.at("rewards").get<std::vector<double>>();
        g.logp_new = j.at("logp_new").get<std::vector<double>>();
        g.logp_old = j.at("logp_old").get<std::vector<double>>();
        if (j.contains("kl")) g.kl_estimate = j.at("kl").get<std::vector<double>>();
        else g.kl_estimate.assign(g.rewards.size(), 0.0);
        return g;
    } catch (const json::exception& e) {
        throw FormatError(std::string("rollout group: ") + e.what());
    }
}

int cmd_grpo_check(const std::filesystem::path& groups_file, const GrpoConfig& config, std::ostream& out) {
    validate(config);
    std::vector<RolloutGroup> groups;
    std::istringstream in(read_file(groups_file));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        groups.push_back(rollout_group_from_json(line));
        validate(groups.back());
    }
    if (groups.empty()) {
        spdlog::error("no rollout groups in {}", groups_file.string());
        return exit_failure;
    }

    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += fmt::format("{}{:.17g}", i == 0 ? "" : " ", v[i]);
        return s;
    };
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const auto& g = groups[k];
        const auto adv = standardize_advantages(g.rewards);
        std::vector<double> ratios;
        std::vector<double> terms;
        for (std::size_t i = 0; i < adv.size(); ++i) {
            ratios.push_back(prob_ratio(g.logp_new[i], g.logp_old[i]));
            terms.push_back(clipped_term(ratios.back(), adv[i], config.epsilon));
        }
        out << fmt::format("group {}\n", k + 1);
        out << "  advantages " << join(adv) << '\n';
        out << "  ratios " << join(ratios) << '\n';
        out << "  terms " << join(terms) << '\n';
        out << fmt::format("  objective {:.17g}\n", group_objective(g, config));
    }
    out << fmt::format("objective {:.17g}\n", grpo_objective(groups, config));
    return exit_ok;
}

}  // namespace hunkbench
