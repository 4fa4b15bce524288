#pragma once

#include "scamscope/public_suffix.hpp"
#include "scamscope/tools.hpp"
#include "scamscope/verdict.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace scamscope::dataset {

enum class Label { scam, legitimate };
std::string_view to_string(Label label);
Label parse_label(std::string_view text);  // throws ParseError

inline constexpr int kDatasetSchemaVersion = 1;

inline constexpr std::string_view kLanguages[] = {"en", "de", "ja"};

struct DatasetEntry {
    std::string url;
    Label label = Label::scam;
    // Required for scam entries. Legitimate entries may carry the category
    // they were collected as a counterpart for, which places them in the
    // matching sampling cell.
    std::optional<verdict::ScamType> scam_type;
    std::string language = "en";
    std::string source;
    std::optional<bool> accessible;
    std::optional<std::string> excluded_reason;

    bool excluded() const { return excluded_reason.has_value(); }
};

nlohmann::json to_json(const DatasetEntry& e);
DatasetEntry entry_from_json(const nlohmann::json& j);  // throws ParseError

/// Reads candidates from CSV (header row naming url,label,scam_type,
/// language,source in any order) or JSONL, chosen by file extension.
std::vector<DatasetEntry> read_entries(const std::filesystem::path& path);
std::vector<DatasetEntry> parse_csv_entries(std::string_view csv);
std::vector<DatasetEntry> parse_jsonl_entries(std::string_view jsonl);
void write_entries(const std::filesystem::path& path, const std::vector<DatasetEntry>& entries);

/// RFC 4180 CSV rows.
std::vector<std::vector<std::string>> parse_csv(std::string_view csv);

/// Marks repeated URLs "duplicate" and URLs listed with both labels
/// "label_conflict" (every copy).
void mark_conflicts(std::vector<DatasetEntry>& entries);

class TopList {
public:
    /// "rank,domain" rows with ranks 1..N in order; an optional header row
    /// is skipped. Throws InvalidTopList.
    static TopList from_csv(std::string_view csv);
    static TopList from_file(const std::filesystem::path& path);

    std::optional<std::int64_t> rank(std::string_view domain) const;
    std::size_t size() const { return ranks_.size(); }

private:
    std::map<std::string, std::int64_t> ranks_;
};

inline constexpr std::int64_t kDefaultTopListCutoff = 100000;

/// Excludes ("toplist") entries whose host or registrable domain ranks at
/// or above the cutoff.
void filter_toplist(std::vector<DatasetEntry>& entries, const TopList& toplist,
                    std::int64_t cutoff = kDefaultTopListCutoff,
                    const PublicSuffixList& psl = PublicSuffixList::bundled());

struct AccessibilityOptions {
    std::size_t parallelism = 4;
    double per_host_per_second = 1.0;  // politeness; 0 disables
};

/// Fetches every non-excluded entry once through the registry's Access URL
/// tool. accessible = final status is 200; otherwise the entry is
/// excluded as "inaccessible" or "inaccessible:<fetch failure reason>".
void check_accessibility(std::vector<DatasetEntry>& entries, tools::ToolRegistry& registry,
                         const AccessibilityOptions& options = {});

struct Annotation {
    std::string url;
    bool keep = true;
    std::optional<verdict::ScamType> scam_type;
};

std::vector<Annotation> parse_annotations(std::string_view jsonl);

/// verdict=exclude marks the entry "manual"; keep may retype it.
/// Throws UnknownUrlInAnnotations before changing anything.
void merge_annotations(std::vector<DatasetEntry>& entries, const std::vector<Annotation>& annotations);

struct Cell {
    Label label;
    std::optional<verdict::ScamType> scam_type;
    std::string language;

    auto key() const { return std::tuple(label, scam_type, language); }
    bool operator<(const Cell& o) const { return key() < o.key(); }
    bool operator==(const Cell& o) const { return key() == o.key(); }
};

Cell cell_of(const DatasetEntry& e);
std::string describe(const Cell& cell);

/// Uniform integer in [0, bound) from a 64-bit generator by rejection, so
/// results do not depend on the standard library's distributions.
std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t bound);

/// Fisher-Yates over indices 0..n-1.
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed);

/// Exactly `per_cell` retained entries from every cell present in
/// `entries` (excluded entries still define cells). Output is grouped by
/// cell in sorted order. Throws InsufficientCell.
std::vector<DatasetEntry> balanced_sample(const std::vector<DatasetEntry>& entries, std::size_t per_cell,
                                          std::uint64_t seed);

struct PipelineSummary {
    std::size_t candidates = 0;
    std::map<std::string, std::size_t> excluded_by_reason;
    std::size_t retained = 0;
};

PipelineSummary summarize(const std::vector<DatasetEntry>& entries);

}  // namespace scamscope::dataset
