#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbb/common/jsonl.hpp"

namespace pbb::eval {

enum class AnswerType { Integer, Ciphertext };
enum class InferenceMode { Direct, Cot };

// Extraction looks for the LAST line of the form `Answer: <payload>`.
// Integers parse with an optional sign; ciphertext payloads are trimmed of
// surrounding whitespace and one layer of matching quotes. In strict mode a
// completion without a marker yields no answer; lenient mode falls back to
// the last signed integer anywhere in the text (integer answers only).
std::optional<std::string> extract_answer(const std::string& completion, AnswerType type,
                                          bool lenient = false);

struct EvalItem {
    std::string id;
    std::string prompt;
    std::string ground_truth;  // canonical answer string
    std::optional<int> bucket; // program length or cipher shift
    std::string group;
    InferenceMode mode = InferenceMode::Cot;
    AnswerType answer_type = AnswerType::Integer;
};

struct BucketRow {
    std::optional<int> bucket; // nullopt for the overall row
    std::size_t n_items = 0;
    std::size_t n_generations = 0;
    std::size_t n_correct = 0;
    double accuracy = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct EvalReport {
    BucketRow overall;
    std::vector<BucketRow> buckets; // ascending bucket order
    std::optional<double> uniformity; // max - min bucket accuracy, shift reports
    std::size_t samples_per_item = 0;
    json config_echo;
};

struct ScoreOptions {
    bool lenient = false;
    // Generation-level Bernoulli pooling; z pinned for the 95% interval.
    double z = 1.96;
    json config_echo = json::object();
};

// Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z);

bool answers_match(const std::string& truth, const std::optional<std::string>& answer,
                   AnswerType type);

// Exact-match scoring over generations, bucketed by EvalItem::bucket.
// Every item must carry the same number of generations.
EvalReport score(const std::vector<EvalItem>& items,
                 const std::map<std::string, std::vector<std::string>>& generations,
                 const ScoreOptions& options = {});

// As score(), with the uniformity statistic (max - min bucket accuracy)
// for accuracy-vs-shift reporting.
EvalReport per_shift_report(const std::vector<EvalItem>& items,
                            const std::map<std::string, std::vector<std::string>>& generations,
                            const ScoreOptions& options = {});

// 1 iff the rollout's extracted answer exactly matches the ground truth.
int rl_reward(const EvalItem& prompt_item, const std::string& rollout);

json report_to_json(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);
// One row per (bucket, metric) for plotting accuracy-vs-bucket curves.
std::string report_to_long_csv(const EvalReport& report, const std::string& bucket_label);

} // namespace pbb::eval
