// Command-line front end: mine, build, eval, report, normalize, grpo-check.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hunkbench/error.hpp"
#include "hunkbench/pipeline.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hunkbench::FormatError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hunkbench;

    spdlog::set_default_logger(spdlog::stderr_color_mt("hunkbench"));
    spdlog::set_pattern("%^%l%$: %v");

    CLI::App app{"Mine merge conflicts, build a benchmark dataset and score resolutions"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    int verbosity = 0;
    bool quiet = false;
    app.add_flag("-v,--verbose", verbosity, "More logging (repeatable)");
    app.add_flag("-q,--quiet", quiet, "Only log errors");

    // mine
    MineCommand mine;
    auto* mine_cmd = app.add_subcommand("mine", "Replay merges in local clones and write candidate hunks");
    mine_cmd->add_option("manifest", mine.manifest, "Repository manifest (one path or URL per line)")
        ->required()
        ->check(CLI::ExistingFile);
    mine_cmd->add_option("-o,--out", mine.out, "Candidates file")->required();
    mine_cmd->add_option("--max-branches", mine.mine.max_branches, "Branches analysed per repository")
        ->capture_default_str();
    mine_cmd->add_option("-j,--jobs", mine.mine.jobs, "Repositories mined in parallel")->capture_default_str();
    mine_cmd->add_option("--clone-dir", mine.mine.clone_dir, "Where clone URLs are cloned")->capture_default_str();
    mine_cmd->add_option("--target-min", mine.target_min, "Minimum hunks per language")->capture_default_str();
    mine_cmd->add_option("--target-max", mine.target_max, "Maximum hunks per language")->capture_default_str();
    mine_cmd->add_option("--per-repo-cap", mine.per_repo_cap, "Hunks per repository and language")
        ->capture_default_str();
    mine_cmd->add_option("--seed", mine.seed, "Sampling seed")->capture_default_str();

    // build
    BuildCommand build;
    auto* build_cmd = app.add_subcommand("build", "Extract resolutions and filter candidates into samples");
    build_cmd->add_option("candidates", build.candidates, "Candidates file from `mine`")
        ->required()
        ->check(CLI::ExistingFile);
    build_cmd->add_option("-o,--out", build.out, "Samples file")->required();
    build_cmd->add_option("--rejections", build.rejections, "Rejection log (default <out>.rejections.tsv)");
    build_cmd->add_option("--context-lines", build.policy.max_context_lines, "Context lines per side")
        ->capture_default_str();
    build_cmd->add_option("--max-side-lines", build.policy.max_side_lines, "Largest side or resolution")
        ->capture_default_str();
    build_cmd->add_option("--max-tokens", build.policy.max_conflict_tokens, "Largest conflict text in tokens")
        ->capture_default_str();
    build_cmd->add_option("--vocabulary", build.vocabulary, "tokenizer.json or one-token-per-line vocabulary")
        ->check(CLI::ExistingFile);

    // eval
    EvalCommand eval;
    std::string system_prompt_file;
    long long timeout_ms = eval.endpoint.timeout.count();
    long long backoff_ms = eval.endpoint.backoff.count();
    auto* eval_cmd = app.add_subcommand("eval", "Query an endpoint for every sample and classify the answers");
    eval_cmd->add_option("dataset", eval.dataset, "Samples file from `build`")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("-o,--out", eval.out, "Results file")->required();
    eval_cmd->add_option("--model", eval.endpoint.model, "Model name sent to the endpoint")->required();
    eval_cmd->add_option("--base-url", eval.endpoint.base_url, "Endpoint base URL, e.g. https://host/v1")
        ->required();
    eval_cmd->add_option("--temperature", eval.endpoint.temperature, "Sampling temperature")->capture_default_str();
    eval_cmd->add_option("--max-tokens", eval.endpoint.max_output_tokens, "Completion token limit")
        ->capture_default_str();
    eval_cmd->add_option("--parallelism", eval.endpoint.parallelism, "Requests in flight")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    eval_cmd->add_option("--max-retries", eval.endpoint.max_retries, "Retries on transient failures")
        ->capture_default_str();
    eval_cmd->add_option("--timeout-ms", timeout_ms, "Per-request timeout")->capture_default_str();
    eval_cmd->add_option("--backoff-ms", backoff_ms, "First retry delay")->capture_default_str();
    eval_cmd->add_option("--system-prompt-file", system_prompt_file, "System message text")
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--cache-dir", eval.cache_dir, "Completion cache (default $HUNKBENCH_CACHE_DIR)");

    // report
    ReportCommand report;
    auto* report_cmd = app.add_subcommand("report", "Summarise results files into a table and CSV");
    report_cmd->add_option("results", report.results, "Results files from `eval`")
        ->required()
        ->check(CLI::ExistingFile);
    report_cmd->add_option("-o,--out", report.text_out, "Text report (default: stdout)");
    report_cmd->add_option("--csv", report.csv_out, "CSV report (default: <out>.csv)");

    // normalize
    std::string norm_lang;
    std::string norm_file;
    auto* norm_cmd = app.add_subcommand("normalize", "Print the normalized form of a source file");
    norm_cmd->add_option("--lang", norm_lang, "Language id")->required();
    norm_cmd->add_option("file", norm_file, "Source file")->required()->check(CLI::ExistingFile);

    // grpo-check
    std::string groups_file;
    GrpoConfig grpo;
    auto* grpo_cmd = app.add_subcommand("grpo-check", "Evaluate advantages and the GRPO objective on recorded groups");
    grpo_cmd->add_option("groups", groups_file, "JSON Lines of {rewards, logp_new, logp_old, kl}")
        ->required()
        ->check(CLI::ExistingFile);
    grpo_cmd->add_option("--epsilon", grpo.epsilon, "Clip radius")->capture_default_str();
    grpo_cmd->add_option("--beta", grpo.beta, "KL coefficient")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (quiet) spdlog::set_level(spdlog::level::err);
    else if (verbosity >= 1) spdlog::set_level(spdlog::level::debug);
    else spdlog::set_level(spdlog::level::info);

    try {
        if (*mine_cmd) return cmd_mine(mine);
        if (*build_cmd) return cmd_build(build);
        if (*eval_cmd) {
            eval.endpoint.timeout = std::chrono::milliseconds(timeout_ms);
            eval.endpoint.backoff = std::chrono::milliseconds(backoff_ms);
            eval.endpoint.api_key = api_key_from_env();
            if (!system_prompt_file.empty()) eval.system_text = slurp(system_prompt_file);
            return cmd_eval(eval);
        }
        if (*report_cmd) return cmd_report(report, std::cout);
        if (*norm_cmd) return cmd_normalize(norm_lang, norm_file, std::cout);
        if (*grpo_cmd) return cmd_grpo_check(groups_file, grpo, std::cout);
    } catch (const std::invalid_argument& e) {
        spdlog::error("{}", e.what());
        return exit_usage;
    } catch (const UnsupportedLanguage& e) {
        spdlog::error("{}", e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return exit_failure;
    }
    return exit_usage;
}
