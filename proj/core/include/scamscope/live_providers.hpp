#pragma once

#include "scamscope/net.hpp"
#include "scamscope/providers.hpp"

#include <chrono>
#include <memory>
#include <string>

namespace scamscope::tools {

/// Endpoints, credentials and limits for the network-backed providers.
/// Credentials are read from the named environment variables at call
/// time, so a run that never uses a provider does not need its key.
struct LiveProviderConfig {
    std::chrono::milliseconds timeout{30000};
    double rate_per_second = 1.0;
    double rate_jitter = 0.1;
    int max_redirects = 10;

    std::string search_endpoint = "https://api.tavily.com/search";
    std::string search_key_env = "TAVILY_API_KEY";

    std::string x_endpoint = "https://api.twitter.com/2/tweets/search/recent";
    std::string x_token_env = "X_BEARER_TOKEN";

    std::string reddit_endpoint = "https://oauth.reddit.com";
    std::string reddit_token_env = "REDDIT_ACCESS_TOKEN";
    std::string reddit_user_agent = "scamscope/0.1";

    std::string crtsh_endpoint = "https://crt.sh/";

    std::string whois_server = "whois.iana.org";
    int whois_port = 43;

    std::string dns_server = "8.8.8.8";
    int dns_port = 53;
};

/// GET with manual redirect following (at most `max_redirects` hops).
class HttpPageFetcher final : public PageFetcher {
public:
    explicit HttpPageFetcher(const LiveProviderConfig& config);
    FetchResult fetch(const std::string& url, const std::string& user_agent) override;

private:
    std::chrono::milliseconds timeout_;
    int max_redirects_;
    net::RateLimiter limiter_;
};

/// Tavily search API.
class TavilySearch final : public SearchProvider {
public:
    explicit TavilySearch(const LiveProviderConfig& config);
    std::vector<SearchHit> search(const std::string& query) override;

private:
    LiveProviderConfig config_;
    net::RateLimiter limiter_;
};

/// X recent-search API and Reddit's OAuth API, each with its own limiter.
class ApiSocialProvider final : public SocialProvider {
public:
    explicit ApiSocialProvider(const LiveProviderConfig& config);
    SocialResults search(Platform platform, const std::string& query) override;

private:
    SocialResults search_x(const std::string& query);
    SocialResults search_reddit(const std::string& query);

    LiveProviderConfig config_;
    net::RateLimiter x_limiter_;
    net::RateLimiter reddit_limiter_;
};

/// Queries the root WHOIS server and follows one referral.
class WhoisClient final : public WhoisProvider {
public:
    explicit WhoisClient(const LiveProviderConfig& config);
    std::string lookup(const std::string& domain) override;

    /// One TCP/43 exchange: sends "query\r\n", reads until close.
    std::string query(const std::string& server, int port, const std::string& query);

private:
    LiveProviderConfig config_;
    net::RateLimiter limiter_;
};

/// The "refer:" / "whois:" server named in an IANA response, if any.
std::string whois_referral(const std::string& response);

/// Stub resolver aimed at one server (UDP, falling back to TCP on
/// truncation).
class ResolverDns final : public DnsProvider {
public:
    explicit ResolverDns(const LiveProviderConfig& config);
    DnsAnswer query(const std::string& domain, DnsType type) override;

private:
    LiveProviderConfig config_;
    net::RateLimiter limiter_;
};

/// crt.sh JSON output.
class CrtShCerts final : public CertProvider {
public:
    explicit CrtShCerts(const LiveProviderConfig& config);
    std::vector<CertEntry> lookup(const std::string& domain) override;

private:
    LiveProviderConfig config_;
    net::RateLimiter limiter_;
};

Providers make_live_providers(const LiveProviderConfig& config);

}  // namespace scamscope::tools
