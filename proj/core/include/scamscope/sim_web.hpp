#pragma once

#include "scamscope/providers.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <map>

namespace scamscope::tools {

/// An offline stand-in for the internet, loaded from JSON "world" files.
/// Used to build the demo corpus and to exercise the tools against
/// over-supplied provider data. Every *.json file in a directory is merged:
///
///   { "pages":  { "<url>": {"status": 200, "body": "...", "body_file": "rel/path.html",
///                           "redirect": "<url>", "error": "timeout"} },
///     "search": { "<query>": [ {"url", "title", "summary"} ] },
///     "x":      { "<query>": [ {"timestamp", "text"} ] },
///     "reddit": { "<query>": {"posts": [ {"timestamp", "title", "text"} ], "comments": [...]} },
///     "whois":  { "<domain>": "raw text" },
///     "dns":    { "<domain>": {"A": ["..."], ...} | "NXDOMAIN" },
///     "certs":  { "<domain>": [ {"id", "issuer", "not_before", "not_after", "names": [...]} ] } }
///
/// Queries match after trimming and lowercasing; URLs and domains match in
/// canonical form.
class SimWeb final : public std::enable_shared_from_this<SimWeb> {
public:
    static std::shared_ptr<SimWeb> from_json(const nlohmann::json& world,
                                             const std::filesystem::path& base_dir = {});
    static std::shared_ptr<SimWeb> from_directory(const std::filesystem::path& dir);

    FetchResult fetch(const std::string& url);
    std::vector<SearchHit> web_search(const std::string& query);
    SocialResults social_search(Platform platform, const std::string& query);
    std::string whois(const std::string& domain);
    DnsAnswer dns(const std::string& domain, DnsType type);
    std::vector<CertEntry> certs(const std::string& domain);

    /// Number of lookups served, for tests that count provider traffic.
    std::size_t requests() const { return requests_.load(); }

    /// Provider adapters sharing ownership of this world.
    Providers providers();

private:
    void merge(const nlohmann::json& world, const std::filesystem::path& base_dir);

    struct Page {
        int status = 200;
        std::string body;
        std::string redirect;
        std::string error;
    };

    std::map<std::string, Page> pages_;
    std::map<std::string, std::vector<SearchHit>> search_;
    std::map<std::string, SocialResults> x_;
    std::map<std::string, SocialResults> reddit_;
    std::map<std::string, std::string> whois_;
    std::map<std::string, nlohmann::json> dns_;
    std::map<std::string, std::vector<CertEntry>> certs_;
    std::atomic<std::size_t> requests_{0};
};

}  // namespace scamscope::tools
