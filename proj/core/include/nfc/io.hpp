#pragma once

#include <filesystem>
#include <string_view>

namespace nfc {

/// Writes to a sibling temp file and renames it over `path`, so readers never
/// observe a truncated file. Creates missing parent directories.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace nfc
