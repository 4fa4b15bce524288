#include "scamscope/dataset.hpp"

#include "scamscope/data_files.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/net.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

namespace scamscope::dataset {

using json = nlohmann::json;

namespace {

std::optional<verdict::ScamType> parse_type_field(std::string_view raw) {
    const auto t = text::trim(raw);
    if (t.empty()) return std::nullopt;
    if (const auto exact = verdict::parse_scam_type(text::to_lower(t))) return exact;
    return verdict::canonicalize_scam_type(t).canonical;
}

std::string validate_language(std::string_view raw) {
    const auto lang = text::to_lower(text::trim(raw));
    if (lang.empty()) return "en";
    for (const auto l : kLanguages) {
        if (lang == l) return lang;
    }
    throw ParseError("unsupported language '" + lang + "' (expected en, de or ja)");
}

DatasetEntry make_entry(std::string_view url, std::string_view label, std::string_view scam_type,
                        std::string_view language, std::string_view source) {
    DatasetEntry e;
    e.url = Url::parse_http(text::trim(url)).str();
    e.label = parse_label(label);
    e.scam_type = parse_type_field(scam_type);
    e.language = validate_language(language);
    e.source = text::trim(source);
    if (e.label == Label::scam && !e.scam_type) throw ParseError("scam entry " + e.url + " has no scam_type");
    return e;
}

std::string url_key(const std::string& url) { return canonical_url(url); }

}  // namespace

std::string_view to_string(Label label) { return label == Label::scam ? "scam" : "legitimate"; }

Label parse_label(std::string_view text) {
    const auto t = text::to_lower(text::trim(text));
    if (t == "scam" || t == "1" || t == "true") return Label::scam;
    if (t == "legitimate" || t == "legit" || t == "0" || t == "false") return Label::legitimate;
    throw ParseError("unknown label '" + std::string(text) + "' (expected scam or legitimate)");
}

json to_json(const DatasetEntry& e) {
    json j = {{"schema_version", kDatasetSchemaVersion}, {"url", e.url}, {"label", to_string(e.label)}};
    j["scam_type"] = e.scam_type ? json(verdict::to_string(*e.scam_type)) : json(nullptr);
    j["language"] = e.language;
    j["source"] = e.source;
    j["accessible"] = e.accessible ? json(*e.accessible) : json(nullptr);
    if (e.excluded_reason) j["excluded_reason"] = *e.excluded_reason;
    return j;
}

DatasetEntry entry_from_json(const json& j) {
    if (j.is_object() && j.value("schema_version", kDatasetSchemaVersion) != kDatasetSchemaVersion) {
        throw ParseError("unsupported dataset schema_version " + j["schema_version"].dump());
    }
    try {
        auto str = [&](const char* key) {
            return j.contains(key) && j[key].is_string() ? j[key].get<std::string>() : std::string();
        };
        auto e = make_entry(j.at("url").get<std::string>(), j.at("label").get<std::string>(), str("scam_type"),
                            str("language"), str("source"));
        if (j.contains("accessible") && j["accessible"].is_boolean()) e.accessible = j["accessible"].get<bool>();
        if (j.contains("excluded_reason") && j["excluded_reason"].is_string()) {
            e.excluded_reason = j["excluded_reason"].get<std::string>();
        }
        return e;
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed dataset entry: ") + ex.what());
    }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view csv) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    bool row_has_content = false;
    for (std::size_t i = 0; i < csv.size(); ++i) {
        const char c = csv[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < csv.size() && csv[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            row_has_content = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            row_has_content = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < csv.size() && csv[i + 1] == '\n') ++i;
            if (row_has_content || !cell.empty()) {
                row.push_back(std::move(cell));
                rows.push_back(std::move(row));
            }
            row.clear();
            cell.clear();
            row_has_content = false;
        } else {
            cell.push_back(c);
        }
    }
    if (quoted) throw ParseError("unterminated quoted CSV field");
    if (row_has_content || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<DatasetEntry> parse_csv_entries(std::string_view csv) {
    const auto rows = parse_csv(csv);
    if (rows.empty()) return {};
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < rows[0].size(); ++i) col[text::to_lower(text::trim(rows[0][i]))] = i;
    for (const char* required : {"url", "label"}) {
        if (!col.count(required)) throw ParseError(std::string("CSV header lacks the '") + required + "' column");
    }
    auto get = [&](const std::vector<std::string>& row, const char* name) -> std::string {
        const auto it = col.find(name);
        return it != col.end() && it->second < row.size() ? row[it->second] : std::string();
    };
    std::vector<DatasetEntry> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        try {
            out.push_back(make_entry(get(rows[r], "url"), get(rows[r], "label"), get(rows[r], "scam_type"),
                                     get(rows[r], "language"), get(rows[r], "source")));
        } catch (const Error& e) {
            throw ParseError("CSV row " + std::to_string(r + 1) + ": " + e.what());
        }
    }
    return out;
}

std::vector<DatasetEntry> parse_jsonl_entries(std::string_view jsonl) {
    std::vector<DatasetEntry> out;
    std::size_t line_no = 0;
    for (const auto& line : text::split_lines(jsonl)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        try {
            out.push_back(entry_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ParseError("JSONL line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw ParseError("JSONL line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<DatasetEntry> read_entries(const std::filesystem::path& path) {
    const auto content = read_file(path);
    if (path.extension() == ".csv") return parse_csv_entries(content);
    return parse_jsonl_entries(content);
}

void write_entries(const std::filesystem::path& path, const std::vector<DatasetEntry>& entries) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        for (const auto& e : entries) out << to_json(e).dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

void mark_conflicts(std::vector<DatasetEntry>& entries) {
    std::map<std::string, std::set<Label>> labels;
    for (const auto& e : entries) labels[url_key(e.url)].insert(e.label);
    std::set<std::string> seen;
    for (auto& e : entries) {
        const auto key = url_key(e.url);
        if (labels[key].size() > 1) {
            e.excluded_reason = "label_conflict";
        } else if (!seen.insert(key).second && !e.excluded()) {
            e.excluded_reason = "duplicate";
        }
    }
}

TopList TopList::from_csv(std::string_view csv) {
    TopList list;
    std::int64_t expected = 1;
    for (const auto& row : parse_csv(csv)) {
        if (row.size() < 2) throw InvalidTopList("top-list row " + std::to_string(expected) + " needs rank,domain");
        const auto rank_text = text::trim(row[0]);
        std::int64_t rank = 0;
        try {
            std::size_t used = 0;
            rank = std::stoll(rank_text, &used);
            if (used != rank_text.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            if (expected == 1 && list.ranks_.empty()) continue;  // header
            throw InvalidTopList("top-list rank '" + rank_text + "' is not an integer");
        }
        if (rank != expected) {
            throw InvalidTopList("top-list ranks must be contiguous from 1: expected " + std::to_string(expected) +
                                 ", found " + std::to_string(rank));
        }
        const auto domain = canonical_host(text::trim(row[1]));
        if (!list.ranks_.emplace(domain, rank).second) {
            throw InvalidTopList("domain '" + domain + "' listed twice in the top list");
        }
        ++expected;
    }
    return list;
}

TopList TopList::from_file(const std::filesystem::path& path) { return from_csv(read_file(path)); }

std::optional<std::int64_t> TopList::rank(std::string_view domain) const {
    const auto it = ranks_.find(canonical_host(domain));
    if (it == ranks_.end()) return std::nullopt;
    return it->second;
}

void filter_toplist(std::vector<DatasetEntry>& entries, const TopList& toplist, std::int64_t cutoff,
                    const PublicSuffixList& psl) {
    if (cutoff < 1) throw ConfigError("top-list cutoff must be at least 1");
    for (auto& e : entries) {
        if (e.excluded()) continue;
        const auto host = Url::parse_http(e.url).host();
        auto best = toplist.rank(host);
        if (const auto reg = toplist.rank(psl.registrable_domain(host)); reg && (!best || *reg < *best)) best = reg;
        if (best && *best <= cutoff) e.excluded_reason = "toplist";
    }
}

void check_accessibility(std::vector<DatasetEntry>& entries, tools::ToolRegistry& registry,
                         const AccessibilityOptions& options) {
    std::mutex limiter_mutex;
    std::map<std::string, std::unique_ptr<net::RateLimiter>> limiters;
    auto politeness = [&](const std::string& host) -> net::RateLimiter& {
        std::lock_guard lock(limiter_mutex);
        auto& slot = limiters[host];
        if (!slot) slot = std::make_unique<net::RateLimiter>(options.per_host_per_second, 0.0);
        return *slot;
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            auto& e = entries[i];
            if (e.excluded()) continue;
            std::string reason;
            try {
                if (options.per_host_per_second > 0) politeness(Url::parse_http(e.url).host()).acquire();
                tools::SessionPages pages;
                registry.dispatch(pages, tools::kAccessUrl, e.url);
                const auto* page = pages.find(e.url);
                e.accessible = page && page->page.status == 200;
                if (!*e.accessible) reason = "inaccessible";
            } catch (const FetchError& err) {
                e.accessible = false;
                reason = "inaccessible:" + err.reason();
            } catch (const InvalidUrl&) {
                e.accessible = false;
                reason = "inaccessible:invalid_url";
            } catch (const Error& err) {
                if (err.kind() == "FixtureMiss") throw;
                e.accessible = false;
                reason = "inaccessible:other";
            }
            if (!reason.empty()) e.excluded_reason = reason;
        }
    };

    const auto threads = std::max<std::size_t>(1, std::min(options.parallelism, entries.size()));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                worker();
            } catch (...) {
                failures[t] = std::current_exception();
                next = entries.size();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

std::vector<Annotation> parse_annotations(std::string_view jsonl) {
    std::vector<Annotation> out;
    std::size_t line_no = 0;
    for (const auto& line : text::split_lines(jsonl)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        try {
            const auto j = json::parse(line);
            Annotation a;
            a.url = Url::parse_http(j.at("url").get<std::string>()).str();
            const auto v = text::to_lower(j.at("verdict").get<std::string>());
            if (v == "keep") {
                a.keep = true;
            } else if (v == "exclude") {
                a.keep = false;
            } else {
                throw ParseError("verdict must be keep or exclude");
            }
            if (j.contains("scam_type") && j["scam_type"].is_string()) {
                a.scam_type = parse_type_field(j["scam_type"].get<std::string>());
            }
            out.push_back(std::move(a));
        } catch (const json::exception& e) {
            throw ParseError("annotation line " + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw ParseError("annotation line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

void merge_annotations(std::vector<DatasetEntry>& entries, const std::vector<Annotation>& annotations) {
    std::map<std::string, std::vector<std::size_t>> by_url;
    for (std::size_t i = 0; i < entries.size(); ++i) by_url[url_key(entries[i].url)].push_back(i);
    for (const auto& a : annotations) {
        if (!by_url.count(url_key(a.url))) throw UnknownUrlInAnnotations("annotation for unknown URL " + a.url);
    }
    for (const auto& a : annotations) {
        for (const auto i : by_url[url_key(a.url)]) {
            auto& e = entries[i];
            if (!a.keep) {
                if (!e.excluded()) e.excluded_reason = "manual";
            } else if (a.scam_type) {
                e.scam_type = a.scam_type;
            }
        }
    }
}

Cell cell_of(const DatasetEntry& e) { return Cell{e.label, e.scam_type, e.language}; }

std::string describe(const Cell& cell) {
    return std::string(to_string(cell.label)) + "/" +
           (cell.scam_type ? std::string(verdict::to_string(*cell.scam_type)) : std::string("-")) + "/" +
           cell.language;
}

std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) return 0;
    // reject the top partial bucket so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(bounded_random(rng, i));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

std::vector<DatasetEntry> balanced_sample(const std::vector<DatasetEntry>& entries, std::size_t per_cell,
                                          std::uint64_t seed) {
    if (per_cell == 0) throw ConfigError("per-cell sample size must be at least 1");
    std::map<Cell, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto& members = cells[cell_of(entries[i])];
        if (!entries[i].excluded()) members.push_back(i);
    }
    for (const auto& [cell, members] : cells) {
        if (members.size() < per_cell) {
            throw InsufficientCell("cell " + describe(cell) + " has " + std::to_string(members.size()) +
                                   " retained entries, " + std::to_string(per_cell) + " needed");
        }
    }
    std::vector<DatasetEntry> out;
    for (const auto& [cell, members] : cells) {
        // each cell draws from its own stream, keyed by the cell's name, so
        // adding a cell leaves the others' samples unchanged
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : describe(cell)) h = (h ^ c) * 0x100000001b3ULL;
        const auto order = permutation(members.size(), seed ^ h);
        for (std::size_t k = 0; k < per_cell; ++k) out.push_back(entries[members[order[k]]]);
    }
    return out;
}

PipelineSummary summarize(const std::vector<DatasetEntry>& entries) {
    PipelineSummary s;
    s.candidates = entries.size();
    for (const auto& e : entries) {
        if (e.excluded()) {
            ++s.excluded_by_reason[*e.excluded_reason];
        } else {
            ++s.retained;
        }
    }
    return s;
}

}  // namespace scamscope::dataset
