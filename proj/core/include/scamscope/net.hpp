#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace scamscope::net {

/// Process-wide count of network operations attempted (HTTP requests,
/// WHOIS connections, DNS queries). Every live adapter bumps it before
/// touching a socket; replay runs must leave it unchanged.
std::uint64_t operation_count();
void count_operation();

/// Spaces out calls to one provider: at most `per_second` acquisitions per
/// second, each delayed by up to `jitter` of the interval extra.
class RateLimiter {
public:
    explicit RateLimiter(double per_second = 1.0, double jitter = 0.1, std::uint64_t seed = 0x5eed);

    void acquire();

private:
    using Clock = std::chrono::steady_clock;
    std::mutex mutex_;
    Clock::duration interval_;
    double jitter_;
    std::mt19937_64 rng_;
    std::optional<Clock::time_point> next_;
};

struct HttpRequest {
    std::string method = "GET";
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
    std::string content_type;
    std::chrono::milliseconds timeout{30000};
};

struct HttpResponse {
    int status = 0;
    std::string body;
    std::vector<std::pair<std::string, std::string>> headers;

    std::optional<std::string> header(std::string_view name) const;
};

/// One HTTP exchange, redirects not followed. Throws FetchError on
/// transport failure; any HTTP status is returned normally.
HttpResponse http_send(const HttpRequest& request);

/// Percent-encodes a query-string component.
std::string url_encode(std::string_view s);

}  // namespace scamscope::net
