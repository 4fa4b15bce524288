#pragma once

#include "scamscope/clock.hpp"
#include "scamscope/fixtures.hpp"
#include "scamscope/providers.hpp"
#include "scamscope/public_suffix.hpp"
#include "scamscope/tool_spec.hpp"

#include <atomic>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scamscope::tools {

inline constexpr std::string_view kAccessUrl = "Access URL";
inline constexpr std::string_view kExtractText = "Extract Text";
inline constexpr std::string_view kExtractHyperlink = "Extract Hyperlink";
inline constexpr std::string_view kGetSearchResult = "Get Search Result";
inline constexpr std::string_view kSearchX = "Search X/Twitter";
inline constexpr std::string_view kSearchReddit = "Search Reddit";
inline constexpr std::string_view kRetrieveWhois = "Retrieve WHOIS";
inline constexpr std::string_view kRetrieveDns = "Retrieve DNS Record";
inline constexpr std::string_view kRetrieveCertificate = "Retrieve Certificate";

inline constexpr std::size_t kMaxSearchResults = 10;
inline constexpr std::size_t kMaxXPosts = 10;
inline constexpr std::size_t kMaxRedditPosts = 5;
inline constexpr std::size_t kMaxRedditComments = 5;
inline constexpr std::size_t kMaxCertificates = 5;

/// Desktop browser user agent sent with every page fetch.
inline constexpr std::string_view kUserAgent =
    "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 (KHTML, like Gecko) "
    "Chrome/122.0.0.0 Safari/537.36";

/// The nine built-in tools, in prompt order.
const std::vector<ToolSpec>& builtin_specs();
const ToolSpec* find_builtin(std::string_view name);

enum class Mode { live, replay, record };
std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);  // throws ConfigError

enum class Source { live, cache, fixture };
std::string_view to_string(Source source);

struct Observation {
    std::string tool;
    std::string input;
    std::string body;
    std::string fetched_at;
    Source source = Source::live;
};

/// Pages made available by Access URL within one analysis session, keyed
/// by canonical URL. Extraction tools read from here.
class SessionPages {
public:
    void put(const std::string& requested_url, const StoredPage& page, Source source);
    struct Entry {
        StoredPage page;
        Source source;
    };
    const Entry* find(const std::string& url) const;
    std::size_t size() const { return pages_.size(); }

private:
    std::map<std::string, Entry> pages_;
};

// Body formatters. Each applies the tool's result cap.
std::string format_access(const StoredPage& page);
std::string format_search(const std::vector<SearchHit>& hits);
std::string format_x_posts(std::vector<SocialPost> posts);
std::string format_reddit(const SocialResults& results);
std::string format_dns(const std::string& domain, const std::vector<std::pair<DnsType, DnsAnswer>>& answers);
std::string format_certs(std::vector<CertEntry> entries);

/// Replaces "@handle" and "u/handle" with placeholders.
std::string redact_handles(std::string_view text);

/// Newest first by not-before, ties broken by higher id.
std::vector<CertEntry> newest_certs(std::vector<CertEntry> entries, std::size_t limit = kMaxCertificates);

/// Canonical form of a tool input, used for cache and fixture keys.
/// Throws the tool's input validation error.
std::string canonical_input(std::string_view tool, std::string_view input, const PublicSuffixList& psl);

/// Routes tool calls by name. Results are cached per (tool, canonical
/// input) for the lifetime of the registry; concurrent callers asking for
/// the same key wait for one provider call. Failures are cached and
/// recorded like successes.
class ToolRegistry {
public:
    struct Options {
        Mode mode = Mode::replay;
        std::shared_ptr<FixtureStore> fixtures;  // required for replay and record
        std::shared_ptr<Clock> clock;            // defaults to the system clock
        std::vector<std::string> enabled;        // empty: all nine
        std::string user_agent = std::string(kUserAgent);
    };

    ToolRegistry(Providers providers, Options options);

    /// Enabled tools in prompt order.
    const std::vector<ToolSpec>& specs() const { return specs_; }
    bool has(std::string_view name) const;
    Mode mode() const { return options_.mode; }

    /// Throws UnknownTool, FixtureMiss, input validation errors and the
    /// provider's error (rebuilt with its concrete type).
    Observation dispatch(SessionPages& pages, std::string_view tool, std::string_view input);

    /// Provider calls made (live and record modes).
    std::size_t live_calls() const { return live_calls_.load(); }
    std::size_t cache_hits() const { return cache_hits_.load(); }

private:
    FixtureRecord compute(const std::string& tool, const std::string& input, const std::string& canonical);
    FixtureRecord call_provider(const std::string& tool, const std::string& input, const std::string& canonical);
    Observation extraction(SessionPages& pages, const std::string& tool, const std::string& input);

    Providers providers_;
    Options options_;
    std::vector<ToolSpec> specs_;
    const PublicSuffixList& psl_;
    std::mutex mutex_;
    std::map<std::string, std::shared_future<FixtureRecord>> cache_;
    std::atomic<std::size_t> live_calls_{0};
    std::atomic<std::size_t> cache_hits_{0};
};

}  // namespace scamscope::tools
