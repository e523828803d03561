#include "pbb/ingest/corpus.hpp"

#include <fstream>

#include "pbb/common/errors.hpp"
#include "pbb/common/sha256.hpp"

namespace pbb::ingest {

bool is_single_function_solution(const std::string& source) {
    int top_level_defs = 0;
    std::size_t pos = 0;
    bool in_def_block = false;
    while (pos <= source.size()) {
        const std::size_t nl = source.find('\n', pos);
        const std::string_view line(source.data() + pos,
                                    (nl == std::string::npos ? source.size() : nl) - pos);
        pos = (nl == std::string::npos) ? source.size() + 1 : nl + 1;

        if (line.empty() || line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const bool indented = line[0] == ' ' || line[0] == '\t';
        if (indented) {
            if (!in_def_block) return false; // indented code outside any function
            continue;
        }
        in_def_block = false;
        if (line.rfind("def ", 0) == 0) {
            ++top_level_defs;
            in_def_block = true;
        } else if (line.rfind("import ", 0) == 0 || line.rfind("from ", 0) == 0 ||
                   line[0] == '#') {
            continue;
        } else if (line.rfind("@", 0) == 0) {
            continue; // decorator ahead of the def
        } else {
            return false; // class, global assignment, top-level call, ...
        }
    }
    return top_level_defs == 1;
}

std::vector<IngestedProblem> load_corpus(const std::filesystem::path& path, LoadStats* stats) {
    const std::vector<json> rows = read_jsonl(path);
    if (rows.empty()) throw SchemaError("corpus file contains no records", 0);

    LoadStats local;
    std::vector<IngestedProblem> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = rows[i];
        if (!row.is_object()) throw SchemaError("record is not an object", i);
        for (const char* field : {"slug", "difficulty", "solution_source", "entry_point"})
            if (!row.contains(field) || !row[field].is_string())
                throw SchemaError(std::string("missing or non-string field '") + field + "'", i);
        if (!row.contains("inputs") || !row["inputs"].is_array())
            throw SchemaError("missing or non-array field 'inputs'", i);

        ++local.total;
        IngestedProblem p;
        p.slug = row["slug"].get<std::string>();
        p.difficulty = row["difficulty"].get<std::string>();
        p.solution_source = row["solution_source"].get<std::string>();
        p.entry_point = row["entry_point"].get<std::string>();
        for (const auto& v : row["inputs"]) p.inputs.push_back(v);

        if (!is_single_function_solution(p.solution_source)) {
            ++local.dropped_multi_function;
            continue;
        }
        ++local.retained;
        out.push_back(std::move(p));
    }
    if (stats != nullptr) *stats = local;
    return out;
}

std::string ground_truth_key(const std::string& source, const std::string& entry_point,
                             const json& input) {
    Sha256 h;
    h.update(source);
    h.update("\x1f");
    h.update(entry_point);
    h.update("\x1f");
    h.update(input.dump());
    return h.hex_digest();
}

GroundTruthCache::GroundTruthCache(ExecutorClient client, std::filesystem::path cache_dir)
    : client_(std::move(client)), dir_(std::move(cache_dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
}

std::filesystem::path GroundTruthCache::entry_path(const std::string& key) const {
    return dir_ / (key + ".json");
}

std::optional<json> GroundTruthCache::lookup(const std::string& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto path = entry_path(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    json entry = json::parse(in, nullptr, false);
    if (entry.is_discarded()) return std::nullopt;
    ++hits_;
    return entry;
}

void GroundTruthCache::store(const std::string& key, const json& reply) {
    std::lock_guard<std::mutex> lock(mutex_);
    write_text_file(entry_path(key), reply.dump() + "\n");
}

namespace {

json unwrap(const ExecResult& result, const std::string& slug) {
    if (!result.ok)
        throw ExecutorFault("ground truth for '" + slug + "' failed: " + result.error);
    return result.output;
}

} // namespace

json GroundTruthCache::ground_truth(const IngestedProblem& problem, const json& input) {
    const std::string key = ground_truth_key(problem.solution_source, problem.entry_point, input);
    if (auto cached = lookup(key)) {
        ExecResult r;
        r.ok = (*cached).value("ok", false);
        if ((*cached).contains("output")) r.output = (*cached)["output"];
        r.error = (*cached).value("error", "");
        return unwrap(r, problem.slug);
    }
    const ExecResult result = client_.run(problem.solution_source, problem.entry_point, input);
    {
        json entry;
        entry["ok"] = result.ok;
        entry["output"] = result.output;
        if (!result.error.empty()) entry["error"] = result.error;
        store(key, entry);
        std::lock_guard<std::mutex> lock(mutex_);
        ++misses_;
    }
    return unwrap(result, problem.slug);
}

std::vector<json> GroundTruthCache::ground_truth_all(const IngestedProblem& problem,
                                                     const std::vector<json>& inputs) {
    std::vector<json> outputs(inputs.size());
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const std::string key =
            ground_truth_key(problem.solution_source, problem.entry_point, inputs[i]);
        if (auto cached = lookup(key)) {
            ExecResult r;
            r.ok = (*cached).value("ok", false);
            if ((*cached).contains("output")) r.output = (*cached)["output"];
            r.error = (*cached).value("error", "");
            outputs[i] = unwrap(r, problem.slug);
        } else {
            missing.push_back(i);
        }
    }
    if (!missing.empty()) {
        std::vector<json> batch_inputs;
        batch_inputs.reserve(missing.size());
        for (const std::size_t i : missing) batch_inputs.push_back(inputs[i]);
        const std::vector<ExecResult> results =
            client_.run_batch(problem.solution_source, problem.entry_point, batch_inputs);
        for (std::size_t j = 0; j < missing.size(); ++j) {
            const std::size_t i = missing[j];
            json entry;
            entry["ok"] = results[j].ok;
            entry["output"] = results[j].output;
            if (!results[j].error.empty()) entry["error"] = results[j].error;
            const std::string key =
                ground_truth_key(problem.solution_source, problem.entry_point, inputs[i]);
            store(key, entry);
            {
                std::lock_guard<std::mutex> lock(mutex_);
                ++misses_;
            }
            outputs[i] = unwrap(results[j], problem.slug);
        }
    }
    return outputs;
}

} // namespace pbb::ingest
