#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "pddleval/llm.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "pddleval/util.hpp"

namespace pddleval::llm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::atomic<bool> g_debug{false};

bool debug_enabled() {
    static const bool env = [] {
        const char* v = std::getenv("PDDLEVAL_DEBUG");
        return v != nullptr && std::string(v) == "1";
    }();
    return env || g_debug.load();
}

void debug_log(const std::string& label, const std::string& payload) {
    if (debug_enabled()) std::cerr << "[llm] " << label << ": " << payload << "\n";
}

// One mutex per cache key so concurrent callers never duplicate an in-flight
// request.
std::mutex& key_mutex(const std::string& key) {
    static std::mutex registry_mutex;
    static std::map<std::string, std::unique_ptr<std::mutex>> registry;
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[key];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

struct ParsedUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw TransportError("bad endpoint url: " + url);
    std::size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string endpoint_for(const ModelConfig& cfg) {
    if (const char* base = std::getenv("MODEL_API_BASE")) {
        std::string s = base;
        if (!s.empty()) return s;
    }
    return cfg.endpoint_url;
}

}  // namespace

void set_debug_logging(bool enabled) { g_debug.store(enabled); }

std::string canonical_params(const ModelConfig& cfg) {
    std::ostringstream os;
    os << "max_tokens=" << cfg.max_output_tokens << ";temperature=";
    if (cfg.temperature) {
        os.precision(17);
        os << *cfg.temperature;
    } else {
        os << "default";
    }
    return os.str();
}

std::string cache_key(const ModelConfig& cfg, const std::string& prompt) {
    return util::sha256_hex("chat-completion/v1\n" + cfg.model_id + "\n" +
                            util::sha256_hex(prompt) + "\n" + canonical_params(cfg));
}

namespace {

std::string rehash(const CachedCompletion& entry) {
    return util::sha256_hex("chat-completion/v1\n" + entry.model_id + "\n" + entry.prompt_digest +
                            "\n" + entry.params);
}

}  // namespace

CompletionCache::CompletionCache(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

std::optional<CachedCompletion> CompletionCache::get(const std::string& key) const {
    auto content = util::try_read_file(dir_ / (key + ".json"));
    if (!content) return std::nullopt;

    json doc;
    try {
        doc = json::parse(*content);
    } catch (const json::exception& err) {
        throw CorruptCacheEntry("cache entry " + key + " is not valid JSON: " + err.what());
    }
    CachedCompletion entry;
    try {
        entry.cache_key = doc.at("cache_key").get<std::string>();
        entry.prompt_digest = doc.at("prompt_digest").get<std::string>();
        entry.model_id = doc.at("model").get<std::string>();
        entry.params = doc.at("params").get<std::string>();
        entry.completion = doc.at("completion").get<std::string>();
        entry.metadata = doc.value("metadata", json::object());
    } catch (const json::exception& err) {
        throw CorruptCacheEntry("cache entry " + key + " is missing fields: " + err.what());
    }
    if (entry.cache_key != key || rehash(entry) != key) {
        throw CorruptCacheEntry("cache entry " + key + " does not re-hash to its key");
    }
    return entry;
}

void CompletionCache::put(const CachedCompletion& entry) const {
    json doc;
    doc["cache_key"] = entry.cache_key;
    doc["prompt_digest"] = entry.prompt_digest;
    doc["model"] = entry.model_id;
    doc["params"] = entry.params;
    doc["completion"] = entry.completion;
    doc["metadata"] = entry.metadata;
    util::write_file_atomic(dir_ / (entry.cache_key + ".json"), doc.dump(2) + "\n");
}

namespace {

CachedCompletion fetch_live(const ModelConfig& cfg, const std::string& prompt,
                            const std::string& key) {
    const char* api_key = std::getenv(cfg.api_key_env.c_str());
    if (api_key == nullptr || *api_key == '\0') {
        throw AuthError("environment variable " + cfg.api_key_env + " is not set");
    }

    ParsedUrl url = parse_url(endpoint_for(cfg));
    json request{
        {"model", cfg.model_id},
        {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
        {"max_tokens", cfg.max_output_tokens},
        {"n", 1},
    };
    if (cfg.temperature) request["temperature"] = *cfg.temperature;
    const std::string body = request.dump();
    debug_log("request " + url.origin + url.path,
              json{{"model", cfg.model_id}, {"bytes", body.size()}}.dump());

    std::string last_error;
    double backoff = cfg.initial_backoff_seconds;
    bool rate_limited = false;

    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
            backoff *= 2;
        }
        httplib::Client client(url.origin);
        client.set_connection_timeout(30);
        client.set_read_timeout(600);
        httplib::Headers headers{{"Authorization", std::string("Bearer ") + api_key}};
        httplib::Result res = client.Post(url.path, headers, body, "application/json");

        if (!res) {
            last_error = httplib::to_string(res.error());
            rate_limited = false;
            continue;
        }
        debug_log("response", "status " + std::to_string(res->status));
        if (res->status == 401 || res->status == 403) {
            throw AuthError("provider rejected credentials (status " +
                            std::to_string(res->status) + ")");
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "status " + std::to_string(res->status) + ": " + res->body;
            rate_limited = res->status == 429;
            continue;
        }
        if (res->status != 200) {
            throw ProviderError("status " + std::to_string(res->status) + ": " + res->body);
        }

        json doc;
        try {
            doc = json::parse(res->body);
        } catch (const json::exception& err) {
            throw ProviderError(std::string("malformed provider response: ") + err.what());
        }
        if (!doc.contains("choices") || doc["choices"].empty() ||
            !doc["choices"][0].contains("message")) {
            throw ProviderError("provider response has no choices[0].message");
        }

        CachedCompletion entry;
        entry.cache_key = key;
        entry.prompt_digest = util::sha256_hex(prompt);
        entry.model_id = cfg.model_id;
        entry.params = canonical_params(cfg);
        entry.completion = doc["choices"][0]["message"].value("content", std::string{});
        entry.metadata["usage"] = doc.value("usage", json::object());
        entry.metadata["created_at"] = static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
        entry.metadata["endpoint"] = url.origin + url.path;
        return entry;
    }

    if (rate_limited) {
        throw RateLimited("rate limited after " + std::to_string(cfg.max_attempts) +
                          " attempts: " + last_error);
    }
    throw TransportError("request failed after " + std::to_string(cfg.max_attempts) +
                         " attempts: " + last_error);
}

}  // namespace

CachedCompletion complete(const ModelConfig& cfg, const std::string& prompt, CompletionMode mode,
                          const CompletionCache& cache) {
    const std::string key = cache_key(cfg, prompt);
    std::lock_guard lock(key_mutex(key));

    if (auto hit = cache.get(key)) {
        debug_log("cache hit", key);
        return *hit;
    }
    if (mode == CompletionMode::replay_only) {
        throw CacheMiss("no cached completion for key " + key + " (model " + cfg.model_id + ")");
    }
    CachedCompletion entry = fetch_live(cfg, prompt, key);
    cache.put(entry);
    return entry;
}

}  // namespace pddleval::llm
