#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hunkbench/extractor.hpp"
#include "hunkbench/grpo.hpp"
#include "hunkbench/llm_client.hpp"
#include "hunkbench/miner.hpp"

namespace hunkbench {

/// Process exit codes shared by every command.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_partial = 2,
    exit_failure = 3,
};

std::string_view tool_version() noexcept;

/// `<out>.manifest.json`
std::filesystem::path manifest_path(const std::filesystem::path& out);

struct MineCommand {
    std::filesystem::path manifest;
    std::filesystem::path out;
    MineOptions mine;
    std::size_t target_min = 600;
    std::size_t target_max = 800;
    std::size_t per_repo_cap = 20;
    std::uint64_t seed = 0;
};

struct BuildCommand {
    std::filesystem::path candidates;
    std::filesystem::path out;
    /// Defaults to `<out>.rejections.tsv`.
    std::filesystem::path rejections;
    ContextPolicy policy;
    /// Tokenizer vocabulary; the byte-ratio estimate is used when empty.
    std::filesystem::path vocabulary;
};

struct EvalCommand {
    std::filesystem::path dataset;
    std::filesystem::path out;
    EndpointConfig endpoint;
    std::string system_text;
    std::filesystem::path cache_dir;
    /// Defaults to HttpChatEndpoint.
    std::shared_ptr<ChatEndpoint> transport;
};

struct ReportCommand {
    std::vector<std::filesystem::path> results;
    /// Text report path; printed to `out` stream when empty.
    std::filesystem::path text_out;
    /// Defaults to the text path with ".csv"; skipped when both are empty.
    std::filesystem::path csv_out;
};

/// Each command writes its run manifest before any output and returns an
/// ExitCode. Progress and per-item failures go to the log.
int cmd_mine(const MineCommand& cmd);
int cmd_build(const BuildCommand& cmd);
int cmd_eval(const EvalCommand& cmd);
int cmd_report(const ReportCommand& cmd, std::ostream& out);

/// Prints the normalized form of a file, one line per normalized line.
int cmd_normalize(const std::string& language, const std::filesystem::path& file, std::ostream& out);

/// Reads rollout groups (one JSON object per line with rewards, logp_new,
/// logp_old and optional kl arrays) and prints advantages, terms and the
/// objective.
int cmd_grpo_check(const std::filesystem::path& groups, const GrpoConfig& config, std::ostream& out);

/// Parses one rollout group record.
RolloutGroup rollout_group_from_json(std::string_view line);

}  // namespace hunkbench
