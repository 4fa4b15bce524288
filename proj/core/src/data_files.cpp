#include "scamscope/data_files.hpp"

#include "scamscope/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace scamscope {

std::filesystem::path data_file(std::string_view name) {
    std::vector<std::filesystem::path> roots;
    if (const char* env = std::getenv("SCAMSCOPE_DATA_DIR"); env && *env) roots.emplace_back(env);
#ifdef SCAMSCOPE_INSTALL_DATA_DIR
    roots.emplace_back(SCAMSCOPE_INSTALL_DATA_DIR);
#endif
#ifdef SCAMSCOPE_SOURCE_DATA_DIR
    roots.emplace_back(SCAMSCOPE_SOURCE_DATA_DIR);
#endif
    for (const auto& root : roots) {
        auto candidate = root / name;
        if (std::filesystem::exists(candidate)) return candidate;
    }
    throw ConfigError("data file '" + std::string(name) + "' not found (set SCAMSCOPE_DATA_DIR)");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace scamscope
