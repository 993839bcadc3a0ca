// Provider-agnostic chat-completion client with a content-addressed disk
// cache. Every completion either comes from the cache or is fetched once and
// stored, so whole evaluations replay offline byte-for-byte.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace pddleval::llm {

struct ModelConfig {
    std::string model_id;
    int max_output_tokens = 10000;
    // nullopt leaves sampling at the provider's defaults.
    std::optional<double> temperature;
    std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
    std::string api_key_env = "MODEL_API_KEY";
    int max_attempts = 5;
    // Doubled after each failed attempt.
    double initial_backoff_seconds = 0.5;
};

enum class CompletionMode { live, replay_only };

struct CachedCompletion {
    std::string cache_key;      // sha256 over (model, prompt digest, params)
    std::string prompt_digest;  // sha256 of the prompt text
    std::string model_id;
    std::string params;  // canonical sampling-parameter string
    std::string completion;
    nlohmann::json metadata;  // provider usage, timestamps; not part of the key
};

class LlmError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class CacheMiss : public LlmError {
    using LlmError::LlmError;
};
class CorruptCacheEntry : public LlmError {
    using LlmError::LlmError;
};
class AuthError : public LlmError {
    using LlmError::LlmError;
};
class RateLimited : public LlmError {
    using LlmError::LlmError;
};
class TransportError : public LlmError {
    using LlmError::LlmError;
};
class ProviderError : public LlmError {
    using LlmError::LlmError;
};

std::string canonical_params(const ModelConfig& cfg);
std::string cache_key(const ModelConfig& cfg, const std::string& prompt);

class CompletionCache {
public:
    explicit CompletionCache(std::filesystem::path dir);

    // Throws CorruptCacheEntry when a stored entry no longer hashes to its
    // key.
    std::optional<CachedCompletion> get(const std::string& key) const;
    void put(const CachedCompletion& entry) const;  // atomic write

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

// Cache first; on a miss, replay_only raises CacheMiss while live mode
// performs one chat request (single user message, n=1), retrying transient
// failures with exponential backoff before storing the result.
CachedCompletion complete(const ModelConfig& cfg, const std::string& prompt, CompletionMode mode,
                          const CompletionCache& cache);

// Debug logging of request/response JSON (API key redacted) to stderr,
// enabled via PDDLEVAL_DEBUG=1 or this switch.
void set_debug_logging(bool enabled);

}  // namespace pddleval::llm
