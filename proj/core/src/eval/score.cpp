#include "pbb/eval/score.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>

#include "pbb/common/errors.hpp"

namespace pbb::eval {

namespace {

constexpr const char* kMarker = "Answer:";

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::optional<std::string> parse_integer_payload(const std::string& payload) {
    std::string p = trim(payload);
    if (!p.empty() && p.back() == '.') p.pop_back(); // tolerate a sentence-final period
    if (p.empty()) return std::nullopt;
    std::size_t i = (p[0] == '+' || p[0] == '-') ? 1 : 0;
    if (i == p.size()) return std::nullopt;
    for (std::size_t j = i; j < p.size(); ++j)
        if (p[j] < '0' || p[j] > '9') return std::nullopt;
    long long value = 0;
    const char* begin = p.data() + (p[0] == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(begin, p.data() + p.size(), value);
    if (ec != std::errc() || ptr != p.data() + p.size()) return std::nullopt;
    return std::to_string(value);
}

std::string normalize_ciphertext(const std::string& payload) {
    std::string p = trim(payload);
    if (p.size() >= 2 && ((p.front() == '"' && p.back() == '"') ||
                          (p.front() == '\'' && p.back() == '\'')))
        p = p.substr(1, p.size() - 2);
    return p;
}

std::optional<std::string> last_integer_in_text(const std::string& text) {
    std::optional<std::string> found;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t begin = i;
            if (begin > 0 && (text[begin - 1] == '-' || text[begin - 1] == '+')) --begin;
            std::size_t end = i;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            found = parse_integer_payload(text.substr(begin, end - begin));
            i = end;
        } else {
            ++i;
        }
    }
    return found;
}

} // namespace

std::optional<std::string> extract_answer(const std::string& completion, AnswerType type,
                                          bool lenient) {
    std::optional<std::string> payload;
    std::size_t pos = 0;
    while (pos <= completion.size()) {
        const std::size_t nl = completion.find('\n', pos);
        const std::string line =
            completion.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        const std::string stripped = trim(line);
        if (stripped.rfind(kMarker, 0) == 0) payload = stripped.substr(std::strlen(kMarker));
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }

    if (payload.has_value()) {
        if (type == AnswerType::Integer) return parse_integer_payload(*payload);
        return normalize_ciphertext(*payload);
    }
    if (lenient && type == AnswerType::Integer) return last_integer_in_text(completion);
    return std::nullopt;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    double lo = center - half;
    double hi = center + half;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

bool answers_match(const std::string& truth, const std::optional<std::string>& answer,
                   AnswerType type) {
    if (!answer.has_value()) return false;
    if (type == AnswerType::Integer) {
        const auto canonical_truth = parse_integer_payload(truth);
        return canonical_truth.has_value() && *canonical_truth == *answer;
    }
    return normalize_ciphertext(truth) == *answer;
}

namespace {

EvalReport score_impl(const std::vector<EvalItem>& items,
                      const std::map<std::string, std::vector<std::string>>& generations,
                      const ScoreOptions& options, bool with_uniformity) {
    EvalReport report;
    report.config_echo = options.config_echo;
    if (items.empty()) throw DataError("no items to score");

    std::size_t samples = 0;
    bool samples_set = false;
    struct Tally {
        std::size_t items = 0;
        std::size_t gens = 0;
        std::size_t correct = 0;
    };
    std::map<std::optional<int>, Tally> buckets;
    Tally overall;

    for (const EvalItem& item : items) {
        const auto it = generations.find(item.id);
        if (it == generations.end())
            throw IdMismatch("no generations for item '" + item.id + "'");
        const std::vector<std::string>& gens = it->second;
        if (!samples_set) {
            samples = gens.size();
            samples_set = true;
            if (samples == 0) throw RaggedGenerations("item '" + item.id + "' has no generations");
        } else if (gens.size() != samples) {
            throw RaggedGenerations("item '" + item.id + "' has " + std::to_string(gens.size()) +
                                    " generations, expected " + std::to_string(samples));
        }
        std::size_t correct = 0;
        for (const std::string& g : gens) {
            const auto answer = extract_answer(g, item.answer_type,
                                               options.lenient && item.mode == InferenceMode::Direct);
            if (answers_match(item.ground_truth, answer, item.answer_type)) ++correct;
        }
        overall.items += 1;
        overall.gens += gens.size();
        overall.correct += correct;
        Tally& b = buckets[item.bucket.value_or(0)];
        b.items += 1;
        b.gens += gens.size();
        b.correct += correct;
    }

    const auto fill_row = [&](std::optional<int> bucket, const Tally& t) {
        BucketRow row;
        row.bucket = bucket;
        row.n_items = t.items;
        row.n_generations = t.gens;
        row.n_correct = t.correct;
        row.accuracy = t.gens == 0 ? 0.0 : static_cast<double>(t.correct) / static_cast<double>(t.gens);
        const auto [lo, hi] = wilson_interval(t.correct, t.gens, options.z);
        row.ci_low = lo;
        row.ci_high = hi;
        return row;
    };

    report.samples_per_item = samples;
    report.overall = fill_row(std::nullopt, overall);
    for (const auto& [bucket, tally] : buckets) report.buckets.push_back(fill_row(bucket, tally));

    if (with_uniformity && !report.buckets.empty()) {
        double lo = report.buckets.front().accuracy;
        double hi = report.buckets.front().accuracy;
        for (const BucketRow& row : report.buckets) {
            lo = std::min(lo, row.accuracy);
            hi = std::max(hi, row.accuracy);
        }
        report.uniformity = hi - lo;
    }
    return report;
}

} // namespace

EvalReport score(const std::vector<EvalItem>& items,
                 const std::map<std::string, std::vector<std::string>>& generations,
                 const ScoreOptions& options) {
    return score_impl(items, generations, options, false);
}

EvalReport per_shift_report(const std::vector<EvalItem>& items,
                            const std::map<std::string, std::vector<std::string>>& generations,
                            const ScoreOptions& options) {
    return score_impl(items, generations, options, true);
}

int rl_reward(const EvalItem& prompt_item, const std::string& rollout) {
    const auto answer = extract_answer(rollout, prompt_item.answer_type, false);
    return answers_match(prompt_item.ground_truth, answer, prompt_item.answer_type) ? 1 : 0;
}

namespace {

json row_to_json(const BucketRow& row) {
    json j;
    if (row.bucket.has_value())
        j["bucket"] = *row.bucket;
    else
        j["bucket"] = nullptr;
    j["n_items"] = row.n_items;
    j["n_gen"] = row.n_generations;
    j["n_correct"] = row.n_correct;
    j["accuracy"] = row.accuracy;
    j["ci_low"] = row.ci_low;
    j["ci_high"] = row.ci_high;
    return j;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << std::fixed << v;
    return ss.str();
}

} // namespace

json report_to_json(const EvalReport& report) {
    json j;
    j["config"] = report.config_echo;
    j["samples_per_item"] = report.samples_per_item;
    j["overall"] = row_to_json(report.overall);
    j["buckets"] = json::array();
    for (const BucketRow& row : report.buckets) j["buckets"].push_back(row_to_json(row));
    if (report.uniformity.has_value()) j["uniformity"] = *report.uniformity;
    return j;
}

std::string report_to_csv(const EvalReport& report) {
    std::string out = "bucket,n_items,n_gen,accuracy,ci_low,ci_high\n";
    const auto emit = [&out](const std::string& bucket, const BucketRow& row) {
        out += bucket + "," + std::to_string(row.n_items) + "," +
               std::to_string(row.n_generations) + "," + fmt(row.accuracy) + "," +
               fmt(row.ci_low) + "," + fmt(row.ci_high) + "\n";
    };
    for (const BucketRow& row : report.buckets)
        emit(row.bucket.has_value() ? std::to_string(*row.bucket) : "all", row);
    emit("all", report.overall);
    return out;
}

std::string report_to_long_csv(const EvalReport& report, const std::string& bucket_label) {
    std::string out = bucket_label + ",metric,value\n";
    for (const BucketRow& row : report.buckets) {
        const std::string bucket = row.bucket.has_value() ? std::to_string(*row.bucket) : "all";
        out += bucket + ",accuracy," + fmt(row.accuracy) + "\n";
        out += bucket + ",ci_low," + fmt(row.ci_low) + "\n";
        out += bucket + ",ci_high," + fmt(row.ci_high) + "\n";
    }
    return out;
}

} // namespace pbb::eval
