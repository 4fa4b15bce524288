#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace scamscope::tools {

/// A page captured by Access URL. Stored with its fixture so extraction
/// tools can run on replayed pages.
struct StoredPage {
    int status = 0;
    std::string final_url;
    std::string html;
};

/// One recorded tool call: either an observation body or an error.
struct FixtureRecord {
    std::string tool;
    std::string input;
    std::string canonical_input;
    std::string fetched_at;
    std::string body;
    std::optional<StoredPage> page;
    bool is_error = false;
    std::string error_kind;
    std::string error_reason;  // FetchError only
    std::string error_message;
};

/// Directory of recorded tool calls, one UTF-8 JSON file per
/// (tool, canonical input), named by the SHA-256 of "tool\ncanonical".
class FixtureStore {
public:
    static constexpr int kSchemaVersion = 1;

    explicit FixtureStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path path_for(const std::string& tool, const std::string& canonical_input) const;

    std::optional<FixtureRecord> load(const std::string& tool, const std::string& canonical_input) const;

    /// Writes through a temporary file and a rename, so readers never see
    /// a partial fixture.
    void save(const FixtureRecord& record) const;

    bool remove(const std::string& tool, const std::string& canonical_input) const;

    /// Every readable fixture, sorted by (tool, canonical input).
    std::vector<FixtureRecord> list() const;

private:
    std::filesystem::path root_;
};

FixtureRecord read_fixture(const std::filesystem::path& path);

}  // namespace scamscope::tools
