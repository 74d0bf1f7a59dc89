#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace loadcast {

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partially written file. Creates parent
/// directories. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Whole-file read. Throws std::runtime_error naming the path on failure.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

}  // namespace loadcast
