#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hunkbench/classifier.hpp"
#include "hunkbench/error.hpp"
#include "hunkbench/extractor.hpp"

namespace hunkbench {

struct PromptBundle {
    std::string system_text;
    std::string user_text;
    std::string sample_id;

    friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

/// The user prompt with its two placeholders, `<language>` and `<conflict>`.
std::string_view prompt_template() noexcept;

/// Zero-shot prompt for one sample.
PromptBundle build_prompt(const MergeSample& sample, const std::string& system_text);

struct EndpointConfig {
    /// Scheme, host and optional path prefix, e.g. "https://api.example.com/v1".
    std::string base_url;
    std::string model;
    double temperature = 0.9;
    std::size_t max_output_tokens = 2048;
    std::chrono::milliseconds timeout{120'000};
    std::size_t max_retries = 4;
    /// First retry delay; doubles on every further attempt.
    std::chrono::milliseconds backoff{500};
    std::size_t parallelism = 4;
    /// Sent as a bearer token when non-empty. Never written to disk.
    std::string api_key;
};

/// Throws std::invalid_argument.
void validate(const EndpointConfig& config);

/// Hash of every setting that can change a completion (the key is excluded).
std::string endpoint_hash(const EndpointConfig& config);

/// An error worth retrying: transport failure, rate limit, server error.
class TransientEndpointError : public EndpointError {
public:
    using EndpointError::EndpointError;
};

struct Completion {
    std::string text;
    /// Response body as received, kept in the cache for auditing.
    std::string raw_response;
};

class ChatEndpoint {
public:
    virtual ~ChatEndpoint() = default;
    /// Throws TransientEndpointError or EndpointError.
    virtual Completion send(const PromptBundle& bundle, const EndpointConfig& config) = 0;
};

/// Chat-completions JSON over HTTP(S): POST {base_url}/chat/completions.
/// A separate `reasoning_content` field, when present, is prepended to the
/// text wrapped in <think></think>.
class HttpChatEndpoint final : public ChatEndpoint {
public:
    Completion send(const PromptBundle& bundle, const EndpointConfig& config) override;
};

/// Request body sent for a bundle (also stored in cache entries).
std::string chat_request_body(const PromptBundle& bundle, const EndpointConfig& config);

/// Extracts the completion text from a chat-completions response body.
/// Throws EndpointError when the body has no usable message.
std::string completion_text(std::string_view response_body);

/// Content-addressed completion cache:
/// `<dir>/<key[0:2]>/<key>.json` holding the request, the raw response and
/// the extracted text. Writes go through a temporary file and a rename.
class CacheStore {
public:
    explicit CacheStore(std::filesystem::path dir);

    static std::string key(const PromptBundle& bundle, const EndpointConfig& config);

    std::optional<Completion> lookup(const std::string& key) const;
    void store(const std::string& key, const PromptBundle& bundle, const EndpointConfig& config,
               const Completion& completion);

    std::filesystem::path entry_path(const std::string& key) const;
    const std::filesystem::path& dir() const noexcept { return dir_; }

private:
    std::filesystem::path dir_;
};

/// HUNKBENCH_CACHE_DIR, or ".hunkbench-cache".
std::filesystem::path default_cache_dir();

/// HUNKBENCH_API_KEY, or an empty string.
std::string api_key_from_env();

/// Cached completion, or a request with retries. Throws EndpointError once
/// retries are exhausted. `from_cache` reports whether the network was used.
ModelOutput complete(const PromptBundle& bundle, const EndpointConfig& config, CacheStore& cache,
                     ChatEndpoint& endpoint, bool* from_cache = nullptr);

struct SampleOutcome {
    std::string sample_id;
    std::optional<ModelOutput> output;
    std::string error;
    bool from_cache = false;
};

struct BenchmarkRun {
    /// Same order as the dataset.
    std::vector<SampleOutcome> outcomes;
    std::size_t requests = 0;
    std::size_t cache_hits = 0;
    std::size_t failures = 0;
};

/// Runs every sample with at most `config.parallelism` requests in flight.
/// Throws EmptyInput for an empty dataset.
BenchmarkRun run_benchmark(std::span<const MergeSample> dataset, const EndpointConfig& config,
                           const std::string& system_text, CacheStore& cache, ChatEndpoint& endpoint);

}  // namespace hunkbench
