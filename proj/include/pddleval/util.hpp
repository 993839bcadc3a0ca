#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pddleval::util {

std::string read_file(const std::filesystem::path& path);
std::optional<std::string> try_read_file(const std::filesystem::path& path);

// Write via a temp file in the same directory followed by rename, so
// concurrent readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_lines(std::string_view s);

// Whitespace-delimited token count; the cheap length proxy used when
// comparing prompt sizes.
std::size_t approx_token_count(std::string_view s);

}  // namespace pddleval::util
