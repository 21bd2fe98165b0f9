#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace slink {

/// Hex-encoded SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

/// FNV-1a 64-bit hash. Stable across platforms; used for feature hashing.
std::uint64_t fnv1a64(std::string_view data);

/// Lowercased copy (ASCII).
std::string to_lower(std::string_view s);

/// Trim ASCII whitespace from both ends.
std::string_view trim_ws(std::string_view s);

/// Collapse internal whitespace runs to single spaces and trim the ends.
std::string collapse_ws(std::string_view s);

/// Maximal runs of [A-Za-z0-9], lowercased.
std::vector<std::string> tokenize(std::string_view text);

/// Split on any of the characters in `seps` (no empty pieces removed).
std::vector<std::string_view> split_any(std::string_view s, std::string_view seps);

std::string read_file(const std::filesystem::path& path);

/// Write via a temp file in the same directory, then rename into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Like write_file_atomic but keeps an existing file untouched (first writer
/// wins). Returns false when the file already existed.
bool write_file_if_absent(const std::filesystem::path& path, std::string_view content);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& value, int indent = 2);

} // namespace slink
