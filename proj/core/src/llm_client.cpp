#include "hunkbench/llm_client.hpp"

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "hunkbench/hash.hpp"

namespace hunkbench {

using nlohmann::json;

namespace {

constexpr std::string_view kTemplate =
    "You are a merge conflict resolution expert. Below is a snippet of code with surrounding context "
    "that includes a merge conflict.\n"
    "Return the entire snippet (including full context) in Markdown code syntax as provided.\n"
    "Do not modify the context at all and preserve the spacing as is.\n"
    "Think in terms of intent and semantics that both sides of the merge are trying to achieve.\n"
    "If you are not sure on how to resolve the conflict or if the intent is ambiguous, please return "
    "the same snippet with the conflict.\n"
    "Here is the code snippet:\n"
    "```<language>\n"
    "<conflict>\n"
    "```";

void replace_once(std::string& s, std::string_view what, std::string_view with) {
    const auto pos = s.find(what);
    if (pos != std::string::npos) s.replace(pos, what.size(), with);
}

}  // namespace

std::string_view prompt_template() noexcept { return kTemplate; }

PromptBundle build_prompt(const MergeSample& sample, const std::string& system_text) {
    // Substitute the language first: conflict text may itself contain "<language>".
    std::string user(kTemplate);
    replace_once(user, "<language>", language_id(sample.language));
    replace_once(user, "<conflict>", sample.conflict_text);
    return PromptBundle{system_text, std::move(user), sample.id};
}

void validate(const EndpointConfig& config) {
    if (config.parallelism == 0) throw std::invalid_argument("parallelism must be at least 1");
    if (!(config.temperature >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
    if (config.max_output_tokens == 0) throw std::invalid_argument("max_output_tokens must be positive");
}

std::string endpoint_hash(const EndpointConfig& config) {
    const json j = {
        {"base_url", config.base_url},
        {"model", config.model},
        {"temperature", config.temperature},
        {"max_output_tokens", config.max_output_tokens},
        {"timeout_ms", config.timeout.count()},
        {"max_retries", config.max_retries},
        {"parallelism", config.parallelism},
    };
    return sha256_hex(j.dump());
}

std::string chat_request_body(const PromptBundle& bundle, const EndpointConfig& config) {
    json messages = json::array();
    if (!bundle.system_text.empty()) messages.push_back({{"role", "system"}, {"content", bundle.system_text}});
    messages.push_back({{"role", "user"}, {"content", bundle.user_text}});
    const json body = {
        {"model", config.model},
        {"messages", messages},
        {"temperature", config.temperature},
        {"max_tokens", config.max_output_tokens},
    };
    return body.dump();
}

std::string completion_text(std::string_view response_body) {
    const auto doc = json::parse(response_body, nullptr, false);
    if (doc.is_discarded()) throw EndpointError("response is not JSON");
    try {
        const auto& message = doc.at("choices").at(0).at("message");
        std::string text;
        if (const auto rc = message.find("reasoning_content"); rc != message.end() && rc->is_string()) {
            text = "<think>\n" + rc->get<std::string>() + "\n</think>\n";
        }
        const auto& content = message.at("content");
        if (!content.is_null()) text += content.get<std::string>();
        return text;
    } catch (const json::exception& e) {
        throw EndpointError(std::string("unexpected response shape: ") + e.what());
    }
}

Completion HttpChatEndpoint::send(const PromptBundle& bundle, const EndpointConfig& config) {
    const auto scheme_end = config.base_url.find("://");
    if (scheme_end == std::string::npos) throw EndpointError("base URL lacks a scheme: " + config.base_url);
    const auto path_start = config.base_url.find('/', scheme_end + 3);
    const std::string origin = config.base_url.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? "" : config.base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

    httplib::Client client(origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers;
    if (!config.api_key.empty()) headers.emplace("Authorization", "Bearer " + config.api_key);

    const auto res = client.Post(prefix + "/chat/completions", headers, chat_request_body(bundle, config),
                                 "application/json");
    if (!res) throw TransientEndpointError("request failed: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
        throw TransientEndpointError("endpoint returned HTTP " + std::to_string(res->status));
    if (res->status < 200 || res->status >= 300)
        throw EndpointError("endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body);
    return Completion{completion_text(res->body), res->body};
}

CacheStore::CacheStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string CacheStore::key(const PromptBundle& bundle, const EndpointConfig& config) {
    const json j = {
        {"model", config.model},
        {"system", bundle.system_text},
        {"user", bundle.user_text},
        {"temperature", config.temperature},
        {"max_output_tokens", config.max_output_tokens},
    };
    return sha256_hex(j.dump());
}

std::filesystem::path CacheStore::entry_path(const std::string& key) const {
    return dir_ / key.substr(0, 2) / (key + ".json");
}

std::optional<Completion> CacheStore::lookup(const std::string& key) const {
    std::ifstream in(entry_path(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    const auto doc = json::parse(buf.str(), nullptr, false);
    if (doc.is_discarded() || !doc.contains("text") || !doc["text"].is_string()) {
        spdlog::warn("ignoring unreadable cache entry {}", entry_path(key).string());
        return std::nullopt;
    }
    return Completion{doc["text"].get<std::string>(), doc.value("response", std::string{})};
}

void CacheStore::store(const std::string& key, const PromptBundle& bundle, const EndpointConfig& config,
                       const Completion& completion) {
    const auto path = entry_path(key);
    std::filesystem::create_directories(path.parent_path());
    const json entry = {
        {"schema_version", 1},
        {"key", key},
        {"request", json::parse(chat_request_body(bundle, config))},
        {"sample_id", bundle.sample_id},
        {"response", completion.raw_response},
        {"text", completion.text},
    };
    thread_local std::mt19937_64 rng{std::random_device{}()};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(rng());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << entry.dump(2) << '\n';
        if (!out) throw Error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::filesystem::path default_cache_dir() {
    if (const char* dir = std::getenv("HUNKBENCH_CACHE_DIR"); dir != nullptr && *dir != '\0') return dir;
    return ".hunkbench-cache";
}

std::string api_key_from_env() {
    const char* key = std::getenv("HUNKBENCH_API_KEY");
    return key != nullptr ? key : "";
}

ModelOutput complete(const PromptBundle& bundle, const EndpointConfig& config, CacheStore& cache,
                     ChatEndpoint& endpoint, bool* from_cache) {
    const auto key = CacheStore::key(bundle, config);
    if (auto hit = cache.lookup(key)) {
        if (from_cache != nullptr) *from_cache = true;
        return ModelOutput{std::move(hit->text), bundle.sample_id, config.model};
    }
    if (from_cache != nullptr) *from_cache = false;

    auto delay = config.backoff;
    for (std::size_t attempt = 0;; ++attempt) {
        try {
            auto completion = endpoint.send(bundle, config);
            cache.store(key, bundle, config, completion);
            return ModelOutput{std::move(completion.text), bundle.sample_id, config.model};
        } catch (const TransientEndpointError& e) {
            if (attempt >= config.max_retries) {
                throw EndpointError("giving up after " + std::to_string(attempt + 1) + " attempts: " + e.what());
            }
            spdlog::debug("{}: attempt {} failed ({}), retrying", bundle.sample_id, attempt + 1, e.what());
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
    }
}

BenchmarkRun run_benchmark(std::span<const MergeSample> dataset, const EndpointConfig& config,
                           const std::string& system_text, CacheStore& cache, ChatEndpoint& endpoint) {
    validate(config);
    if (dataset.empty()) throw EmptyInput("empty dataset");

    BenchmarkRun run;
    run.outcomes.resize(dataset.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (auto i = next.fetch_add(1); i < dataset.size(); i = next.fetch_add(1)) {
            auto& out = run.outcomes[i];
            out.sample_id = dataset[i].id;
            try {
                out.output = complete(build_prompt(dataset[i], system_text), config, cache, endpoint, &out.from_cache);
            } catch (const std::exception& e) {
                out.error = e.what();
                spdlog::warn("{}: {}", out.sample_id, e.what());
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto workers = std::min(config.parallelism, dataset.size());
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (const auto& o : run.outcomes) {
        if (!o.output) ++run.failures;
        else if (o.from_cache) ++run.cache_hits;
        else ++run.requests;
    }
    return run;
}

}  // namespace hunkbench
