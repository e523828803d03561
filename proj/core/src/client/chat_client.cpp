#include "pbb/client/chat_client.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "pbb/common/errors.hpp"
#include "pbb/common/jsonl.hpp"
#include "pbb/common/rng.hpp"

namespace pbb::client {

namespace {

bool transient_status(int status) { return status == 429 || (status >= 500 && status < 600); }

struct Attempt {
    bool ok = false;
    bool transient = false;
    std::vector<std::string> completions;
    std::string error;
};

// "http://host:port/v1" -> {"http://host:port", "/v1"}; httplib clients
// only take scheme://host:port, the path prefix goes on each request.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const std::size_t scheme = endpoint.find("://");
    const std::size_t path_start =
        endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) return {endpoint, ""};
    std::string prefix = endpoint.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {endpoint.substr(0, path_start), prefix};
}

Attempt post_chat(const ClientConfig& cfg, const std::string& prompt, int n, double temperature) {
    Attempt attempt;
    const auto [base, prefix] = split_endpoint(cfg.endpoint);
    httplib::Client http(base);
    http.set_connection_timeout(cfg.timeout_seconds, 0);
    http.set_read_timeout(cfg.timeout_seconds, 0);
    http.set_write_timeout(cfg.timeout_seconds, 0);

    httplib::Headers headers;
    if (const char* key = std::getenv(cfg.api_key_env.c_str()); key != nullptr && *key != '\0')
        headers.emplace("Authorization", std::string("Bearer ") + key);

    json body;
    body["model"] = cfg.model;
    body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
    body["n"] = n;
    body["temperature"] = temperature;
    body["max_tokens"] = cfg.max_tokens;

    const httplib::Result res =
        http.Post(prefix + "/chat/completions", headers, body.dump(), "application/json");
    if (!res) {
        attempt.transient = true; // connect/read failure or timeout
        attempt.error = "transport error: " + httplib::to_string(res.error());
        return attempt;
    }
    if (res->status != 200) {
        attempt.transient = transient_status(res->status);
        attempt.error = "HTTP " + std::to_string(res->status);
        return attempt;
    }
    const json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array()) {
        attempt.error = "malformed completion response";
        return attempt;
    }
    for (const auto& choice : reply["choices"]) {
        if (choice.contains("message") && choice["message"].contains("content"))
            attempt.completions.push_back(choice["message"]["content"].get<std::string>());
    }
    if (attempt.completions.empty()) {
        attempt.error = "response carried no message content";
        return attempt;
    }
    attempt.ok = true;
    return attempt;
}

} // namespace

ChatClient::ChatClient(ClientConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty()) throw ConfigError("endpoint must be configured");
}

ItemResult ChatClient::run_item(const GenerationRequest& request,
                                std::uint64_t jitter_stream) const {
    ItemResult item;
    const std::uint64_t base_seed =
        config_.jitter_seed != 0
            ? config_.jitter_seed
            : static_cast<std::uint64_t>(
                  std::chrono::steady_clock::now().time_since_epoch().count());
    Rng jitter(Rng(base_seed).child("jitter", jitter_stream).next_u64());

    const int calls = config_.native_n ? 1 : request.n;
    const int per_call_n = config_.native_n ? request.n : 1;

    for (int call = 0; call < calls; ++call) {
        int delay_ms = config_.backoff_base_ms;
        for (int attempt = 0;; ++attempt) {
            const Attempt result =
                post_chat(config_, request.prompt, per_call_n, request.temperature);
            if (result.ok) {
                item.completions.insert(item.completions.end(), result.completions.begin(),
                                        result.completions.end());
                break;
            }
            item.error = result.error;
            if (!result.transient || attempt >= config_.retry_budget) {
                item.ok = false;
                return item;
            }
            ++item.retries;
            const int jittered =
                delay_ms > 0 ? static_cast<int>(jitter.uniform_int(delay_ms / 2, delay_ms)) : 0;
            std::this_thread::sleep_for(std::chrono::milliseconds(jittered));
            delay_ms = std::min(delay_ms * 2, config_.backoff_max_ms);
        }
    }
    item.ok = true;
    item.error.clear();
    return item;
}

GenerationBatchResult ChatClient::generate(const std::vector<GenerationRequest>& requests,
                                           int concurrency_limit) const {
    if (concurrency_limit < 1) throw ConfigError("concurrency_limit must be >= 1");
    GenerationBatchResult batch;
    batch.items.resize(requests.size());

    std::atomic<std::size_t> next{0};
    const std::size_t n_workers =
        std::min<std::size_t>(static_cast<std::size_t>(concurrency_limit), requests.size());
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        workers.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= requests.size()) return;
                batch.items[i] = run_item(requests[i], static_cast<std::uint64_t>(i));
            }
        });
    }
    for (auto& t : workers) t.join();

    for (const ItemResult& item : batch.items)
        (item.ok ? batch.succeeded : batch.failed) += 1;
    if (!requests.empty() && batch.succeeded == 0)
        throw NetworkError("every request in the batch failed; last error: " +
                           (batch.items.back().error.empty() ? std::string("unknown")
                                                             : batch.items.back().error));
    return batch;
}

ItemResult ChatClient::generate_one(const GenerationRequest& request) const {
    return run_item(request, 0);
}

} // namespace pbb::client
