#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace scamscope::tools {

// Raw data sources behind the tools. Providers may over-supply; the tool
// layer applies the result caps.

struct FetchResult {
    int status = 0;
    std::string final_url;
    std::string body;
    std::string content_type;
};

class PageFetcher {
public:
    virtual ~PageFetcher() = default;
    /// Follows redirects. Throws FetchError on transport failure.
    virtual FetchResult fetch(const std::string& url, const std::string& user_agent) = 0;
};

struct SearchHit {
    std::string url;
    std::string title;
    std::string summary;
};

class SearchProvider {
public:
    virtual ~SearchProvider() = default;
    virtual std::vector<SearchHit> search(const std::string& query) = 0;
};

enum class Platform { x_twitter, reddit };

struct SocialPost {
    std::string timestamp;  // ISO 8601, UTC
    std::string title;      // reddit posts only
    std::string text;
};

struct SocialResults {
    std::vector<SocialPost> posts;
    std::vector<SocialPost> comments;  // reddit only
};

class SocialProvider {
public:
    virtual ~SocialProvider() = default;
    virtual SocialResults search(Platform platform, const std::string& query) = 0;
};

class WhoisProvider {
public:
    virtual ~WhoisProvider() = default;
    /// Raw registry/registrar response. Throws LookupError.
    virtual std::string lookup(const std::string& domain) = 0;
};

enum class DnsType { A, AAAA, NS, SOA, TXT, MX };

inline constexpr DnsType kDnsTypes[] = {DnsType::A, DnsType::AAAA, DnsType::NS,
                                        DnsType::SOA, DnsType::TXT, DnsType::MX};

const char* to_string(DnsType type);

struct DnsAnswer {
    enum class Status { ok, nodata, nxdomain, error };
    Status status = Status::nodata;
    std::vector<std::string> records;  // presentation format, one per record
    std::string error;
};

class DnsProvider {
public:
    virtual ~DnsProvider() = default;
    /// Throws ResolverUnreachable when the resolver cannot be reached.
    virtual DnsAnswer query(const std::string& domain, DnsType type) = 0;
};

struct CertEntry {
    std::int64_t id = 0;
    std::string issuer;
    std::string not_before;
    std::string not_after;
    std::vector<std::string> names;
};

class CertProvider {
public:
    virtual ~CertProvider() = default;
    virtual std::vector<CertEntry> lookup(const std::string& domain) = 0;
};

struct Providers {
    std::shared_ptr<PageFetcher> fetcher;
    std::shared_ptr<SearchProvider> search;
    std::shared_ptr<SocialProvider> social;
    std::shared_ptr<WhoisProvider> whois;
    std::shared_ptr<DnsProvider> dns;
    std::shared_ptr<CertProvider> certs;
};

}  // namespace scamscope::tools
