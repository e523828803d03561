#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace pbb {

using json = nlohmann::ordered_json;

// Reads a JSON Lines file. Blank lines are skipped; a malformed line raises
// SchemaError carrying its zero-based record index.
std::vector<json> read_jsonl(const std::filesystem::path& path);

// Serializes one object per line, LF endings, no trailing spaces. Returns
// the exact payload written so callers can hash it.
std::string write_jsonl(const std::filesystem::path& path, const std::vector<json>& records);

std::string to_jsonl_payload(const std::vector<json>& records);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace pbb
