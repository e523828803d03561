#include "pbb/common/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "pbb/common/errors.hpp"

namespace pbb {

std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path.string());
    std::vector<json> out;
    std::string line;
    std::size_t index = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            ++index;
            continue;
        }
        json parsed = json::parse(line, nullptr, false);
        if (parsed.is_discarded()) throw SchemaError("invalid JSON", index);
        out.push_back(std::move(parsed));
        ++index;
    }
    return out;
}

std::string to_jsonl_payload(const std::vector<json>& records) {
    std::string payload;
    for (const auto& r : records) {
        payload += r.dump();
        payload += '\n';
    }
    return payload;
}

std::string write_jsonl(const std::filesystem::path& path, const std::vector<json>& records) {
    std::string payload = to_jsonl_payload(records);
    write_text_file(path, payload);
    return payload;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoFailure("short write to " + path.string());
}

} // namespace pbb
