#pragma once

#include <filesystem>
#include <string_view>

namespace topicweave {

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace topicweave
