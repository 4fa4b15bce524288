#pragma once

#include <filesystem>
#include <string_view>

namespace scamscope {

/// Locates a bundled data asset (prompt template, keyword table, ...).
/// Looks in $SCAMSCOPE_DATA_DIR, then the installed share directory, then
/// the source tree. Throws ConfigError when the file is nowhere.
std::filesystem::path data_file(std::string_view name);

std::string read_file(const std::filesystem::path& path);

}  // namespace scamscope
