#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pbb::client {

struct ClientConfig {
    std::string endpoint;              // e.g. "http://127.0.0.1:8000"
    std::string model;
    std::string api_key_env = "PBB_API_KEY";
    int timeout_seconds = 120;
    int retry_budget = 5;
    int backoff_base_ms = 500;         // exponential, doubled per retry
    int backoff_max_ms = 30000;
    std::uint64_t jitter_seed = 0;     // 0: derive from time
    // Ask the endpoint for n samples in one call when true; otherwise issue
    // n independent single-sample calls. Result shape is identical.
    bool native_n = true;
    int max_tokens = 1024;
};

struct GenerationRequest {
    std::string prompt;
    int n = 16;
    double temperature = 0.8;
};

struct ItemResult {
    std::vector<std::string> completions;
    bool ok = false;
    std::string error;
    int retries = 0;
};

struct GenerationBatchResult {
    std::vector<ItemResult> items; // same order as the request list
    std::size_t succeeded = 0;
    std::size_t failed = 0;
};

// Collects chat completions for a batch of prompts with at most
// `concurrency_limit` requests in flight. Transient failures (HTTP 429,
// 5xx, timeouts) retry with exponential backoff and jitter; per-item
// permanent failures are recorded without aborting the batch. Throws
// NetworkError only if every item failed.
class ChatClient {
public:
    explicit ChatClient(ClientConfig config);

    GenerationBatchResult generate(const std::vector<GenerationRequest>& requests,
                                   int concurrency_limit) const;

    // Single-prompt convenience used by the CoT paraphrase hook.
    ItemResult generate_one(const GenerationRequest& request) const;

    const ClientConfig& config() const { return config_; }

private:
    ItemResult run_item(const GenerationRequest& request, std::uint64_t jitter_stream) const;

    ClientConfig config_;
};

} // namespace pbb::client
