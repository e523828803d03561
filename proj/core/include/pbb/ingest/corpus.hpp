#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pbb/common/jsonl.hpp"
#include "pbb/ingest/executor.hpp"

namespace pbb::ingest {

struct IngestedProblem {
    std::string slug;
    std::string difficulty; // easy | medium | hard
    std::string solution_source;
    std::string entry_point;
    std::vector<json> inputs;
};

struct LoadStats {
    std::size_t total = 0;
    std::size_t retained = 0;
    std::size_t dropped_multi_function = 0;
};

// Loads a JSON Lines corpus ({"slug","difficulty","solution_source",
// "entry_point","inputs"}), dropping solutions that are not a single
// top-level function. Import/comment/blank top-level lines are tolerated;
// any other top-level statement disqualifies the record.
std::vector<IngestedProblem> load_corpus(const std::filesystem::path& path,
                                         LoadStats* stats = nullptr);

bool is_single_function_solution(const std::string& source);

// Executor-backed ground truth with a content-addressed JSON file cache.
// Hits never spawn the executor.
class GroundTruthCache {
public:
    GroundTruthCache(ExecutorClient client, std::filesystem::path cache_dir);

    // Throws ExecutorFault when the solution raises or the executor fails.
    json ground_truth(const IngestedProblem& problem, const json& input);

    // Bounded-parallel batch over many inputs of one problem. Cache misses
    // are executed in one batch subprocess; the cache is filled after.
    std::vector<json> ground_truth_all(const IngestedProblem& problem,
                                       const std::vector<json>& inputs);

    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }

private:
    std::filesystem::path entry_path(const std::string& key) const;
    std::optional<json> lookup(const std::string& key);
    void store(const std::string& key, const json& reply);

    ExecutorClient client_;
    std::filesystem::path dir_;
    std::mutex mutex_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

std::string ground_truth_key(const std::string& source, const std::string& entry_point,
                             const json& input);

} // namespace pbb::ingest
