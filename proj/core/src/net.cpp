#include "scamscope/net.hpp"

#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <httplib.h>

#include <atomic>
#include <thread>

namespace scamscope::net {

namespace {

std::atomic<std::uint64_t> g_operations{0};

std::string reason_for(httplib::Error err) {
    switch (err) {
        case httplib::Error::ConnectionTimeout:
        case httplib::Error::Read:
            return "timeout";
        case httplib::Error::Connection:
        case httplib::Error::BindIPAddress:
        case httplib::Error::ProxyConnection:
            return "connect";
        case httplib::Error::SSLConnection:
        case httplib::Error::SSLLoadingCerts:
        case httplib::Error::SSLServerVerification:
            return "tls";
        case httplib::Error::ExceedRedirectCount:
            return "redirects";
        default:
            return "other";
    }
}

}  // namespace

std::uint64_t operation_count() { return g_operations.load(); }

void count_operation() { g_operations.fetch_add(1); }

RateLimiter::RateLimiter(double per_second, double jitter, std::uint64_t seed)
    : interval_(per_second > 0 ? std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(1.0 / per_second))
                               : Clock::duration::zero()),
      jitter_(jitter),
      rng_(seed) {}

void RateLimiter::acquire() {
    Clock::time_point wake;
    {
        std::lock_guard lock(mutex_);
        const auto now = Clock::now();
        wake = next_ && *next_ > now ? *next_ : now;
        std::uniform_real_distribution<double> dist(0.0, jitter_);
        const auto extra = std::chrono::duration_cast<Clock::duration>(interval_ * dist(rng_));
        next_ = wake + interval_ + extra;
    }
    std::this_thread::sleep_until(wake);
}

std::optional<std::string> HttpResponse::header(std::string_view name) const {
    for (const auto& [key, value] : headers) {
        if (text::iequals(key, name)) return value;
    }
    return std::nullopt;
}

HttpResponse http_send(const HttpRequest& request) {
    const auto url = Url::parse_http(request.url);
    std::string origin = url.scheme + "://" + *url.authority;
    std::string target = url.path.empty() ? "/" : url.path;
    if (url.query) target += "?" + *url.query;

    count_operation();
    httplib::Client client(origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    client.set_follow_location(false);

    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);

    httplib::Result result;
    const auto content_type = request.content_type.empty() ? std::string("application/json") : request.content_type;
    if (request.method == "GET") {
        result = client.Get(target, headers);
    } else if (request.method == "POST") {
        result = client.Post(target, headers, request.body, content_type);
    } else if (request.method == "HEAD") {
        result = client.Head(target, headers);
    } else {
        throw InvalidRequest("unsupported HTTP method " + request.method);
    }
    if (!result) {
        const auto err = result.error();
        throw FetchError(reason_for(err), request.method + " " + request.url + ": " + httplib::to_string(err));
    }
    HttpResponse response;
    response.status = result->status;
    response.body = result->body;
    for (const auto& [k, v] : result->headers) response.headers.emplace_back(k, v);
    return response;
}

std::string url_encode(std::string_view s) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0x0F]);
        }
    }
    return out;
}

}  // namespace scamscope::net
