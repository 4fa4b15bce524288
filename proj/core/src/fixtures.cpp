#include "scamscope/fixtures.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

namespace scamscope::tools {

using json = nlohmann::json;

namespace {

json to_json(const FixtureRecord& r) {
    json j = {{"schema_version", FixtureStore::kSchemaVersion},
              {"tool", r.tool},
              {"input", r.input},
              {"canonical_input", r.canonical_input},
              {"fetched_at", r.fetched_at},
              {"body", r.body},
              {"is_error", r.is_error}};
    if (r.is_error) {
        j["error_kind"] = r.error_kind;
        j["error_message"] = r.error_message;
        if (!r.error_reason.empty()) j["error_reason"] = r.error_reason;
    }
    if (r.page) {
        j["page"] = {{"status", r.page->status}, {"final_url", r.page->final_url}, {"html", r.page->html}};
    }
    return j;
}

FixtureRecord from_json(const json& j) {
    FixtureRecord r;
    r.tool = j.at("tool").get<std::string>();
    r.input = j.value("input", "");
    r.canonical_input = j.at("canonical_input").get<std::string>();
    r.fetched_at = j.value("fetched_at", "");
    r.body = j.value("body", "");
    r.is_error = j.value("is_error", false);
    r.error_kind = j.value("error_kind", "");
    r.error_reason = j.value("error_reason", "");
    r.error_message = j.value("error_message", "");
    if (j.contains("page")) {
        const auto& p = j["page"];
        r.page = StoredPage{p.value("status", 0), p.value("final_url", ""), p.value("html", "")};
    }
    return r;
}

}  // namespace

FixtureStore::FixtureStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path FixtureStore::path_for(const std::string& tool, const std::string& canonical_input) const {
    return root_ / (text::sha256_hex(tool + "\n" + canonical_input) + ".json");
}

FixtureRecord read_fixture(const std::filesystem::path& path) {
    try {
        return from_json(json::parse(read_file(path)));
    } catch (const json::exception& e) {
        throw ConfigError("corrupt fixture " + path.string() + ": " + e.what());
    }
}

std::optional<FixtureRecord> FixtureStore::load(const std::string& tool, const std::string& canonical_input) const {
    const auto path = path_for(tool, canonical_input);
    if (!std::filesystem::exists(path)) return std::nullopt;
    auto record = read_fixture(path);
    if (record.tool != tool || record.canonical_input != canonical_input) {
        throw ConfigError("fixture " + path.string() + " does not match its key");
    }
    return record;
}

void FixtureStore::save(const FixtureRecord& record) const {
    static std::atomic<std::uint64_t> counter{0};
    std::filesystem::create_directories(root_);
    const auto path = path_for(record.tool, record.canonical_input);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
           std::to_string(counter.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write fixture " + tmp.string());
        out << to_json(record).dump(2) << '\n';
        if (!out) throw ConfigError("cannot write fixture " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

bool FixtureStore::remove(const std::string& tool, const std::string& canonical_input) const {
    return std::filesystem::remove(path_for(tool, canonical_input));
}

std::vector<FixtureRecord> FixtureStore::list() const {
    std::vector<FixtureRecord> out;
    if (!std::filesystem::is_directory(root_)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(root_)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(read_fixture(entry.path()));
    }
    std::sort(out.begin(), out.end(), [](const FixtureRecord& a, const FixtureRecord& b) {
        return std::tie(a.tool, a.canonical_input) < std::tie(b.tool, b.canonical_input);
    });
    return out;
}

}  // namespace scamscope::tools
