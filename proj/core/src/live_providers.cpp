#include "scamscope/live_providers.hpp"

#include "scamscope/clock.hpp"
#include "scamscope/errors.hpp"
#include "scamscope/text.hpp"
#include "scamscope/url.hpp"

#include <nlohmann/json.hpp>

#include <arpa/inet.h>
#include <arpa/nameser.h>
#include <netdb.h>
#include <netinet/in.h>
#include <resolv.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>

namespace scamscope::tools {

using json = nlohmann::json;

namespace {

std::string env_credential(const std::string& var, const std::string& what) {
    const char* value = std::getenv(var.c_str());
    if (!value || !*value) throw ProviderError(what + " credential missing: set " + var);
    return value;
}

json get_json(const net::HttpRequest& request, const std::string& what) {
    const auto response = net::http_send(request);
    if (response.status >= 400) {
        throw ProviderError(what + " returned HTTP " + std::to_string(response.status));
    }
    try {
        return json::parse(response.body);
    } catch (const json::exception& e) {
        throw ProviderError(what + " returned malformed JSON: " + e.what());
    }
}

std::string iso_from_epoch_seconds(double secs) {
    return format_iso8601(static_cast<std::int64_t>(secs) * 1000);
}

// crt.sh timestamps look like "2024-01-02T03:04:05" or with fractions.
std::string crtsh_time(const json& j) {
    if (!j.is_string()) return "";
    auto s = j.get<std::string>();
    if (const auto dot = s.find('.'); dot != std::string::npos) s.erase(dot);
    return s;
}

class Socket {
public:
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket() {
        if (fd_ >= 0) ::close(fd_);
    }
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    int fd() const { return fd_; }

private:
    int fd_;
};

ns_type ns_type_of(DnsType type) {
    switch (type) {
        case DnsType::A: return ns_t_a;
        case DnsType::AAAA: return ns_t_aaaa;
        case DnsType::NS: return ns_t_ns;
        case DnsType::SOA: return ns_t_soa;
        case DnsType::TXT: return ns_t_txt;
        case DnsType::MX: return ns_t_mx;
    }
    return ns_t_a;
}

}  // namespace

HttpPageFetcher::HttpPageFetcher(const LiveProviderConfig& config)
    : timeout_(config.timeout),
      max_redirects_(config.max_redirects),
      limiter_(config.rate_per_second, config.rate_jitter) {}

FetchResult HttpPageFetcher::fetch(const std::string& url, const std::string& user_agent) {
    std::string current = Url::parse_http(url).str();
    for (int hop = 0;; ++hop) {
        limiter_.acquire();
        net::HttpRequest request;
        request.url = current;
        request.timeout = timeout_;
        request.headers = {{"User-Agent", user_agent},
                           {"Accept", "text/html,application/xhtml+xml,*/*;q=0.8"},
                           {"Accept-Language", "en-US,en;q=0.9"}};
        auto response = net::http_send(request);
        const auto location = response.header("Location");
        if (response.status >= 300 && response.status < 400 && location) {
            if (hop >= max_redirects_) throw FetchError("redirects", "too many redirects from " + url);
            current = resolve(current, text::trim(*location));
            if (!is_http_url(current)) throw FetchError("other", "redirect to a non-http URL: " + current);
            continue;
        }
        return FetchResult{response.status, current, std::move(response.body),
                           response.header("Content-Type").value_or("")};
    }
}

TavilySearch::TavilySearch(const LiveProviderConfig& config)
    : config_(config), limiter_(config.rate_per_second, config.rate_jitter) {}

std::vector<SearchHit> TavilySearch::search(const std::string& query) {
    const auto key = env_credential(config_.search_key_env, "search API");
    limiter_.acquire();
    net::HttpRequest request;
    request.method = "POST";
    request.url = config_.search_endpoint;
    request.timeout = config_.timeout;
    request.headers = {{"Authorization", "Bearer " + key}};
    request.body = json{{"api_key", key}, {"query", query}, {"max_results", 10}}.dump();
    const auto j = get_json(request, "search API");
    std::vector<SearchHit> hits;
    for (const auto& r : j.value("results", json::array())) {
        hits.push_back({r.value("url", ""), r.value("title", ""), r.value("content", "")});
    }
    return hits;
}

ApiSocialProvider::ApiSocialProvider(const LiveProviderConfig& config)
    : config_(config),
      x_limiter_(config.rate_per_second, config.rate_jitter),
      reddit_limiter_(config.rate_per_second, config.rate_jitter) {}

SocialResults ApiSocialProvider::search(Platform platform, const std::string& query) {
    return platform == Platform::x_twitter ? search_x(query) : search_reddit(query);
}

SocialResults ApiSocialProvider::search_x(const std::string& query) {
    const auto token = env_credential(config_.x_token_env, "X API");
    x_limiter_.acquire();
    net::HttpRequest request;
    request.url = config_.x_endpoint + "?query=" + net::url_encode(query) + "&max_results=10&tweet.fields=created_at";
    request.timeout = config_.timeout;
    request.headers = {{"Authorization", "Bearer " + token}};
    const auto j = get_json(request, "X API");
    SocialResults results;
    for (const auto& t : j.value("data", json::array())) {
        auto ts = t.value("created_at", "");
        if (const auto dot = ts.find('.'); dot != std::string::npos) ts = ts.substr(0, dot) + "Z";
        results.posts.push_back({ts, "", t.value("text", "")});
    }
    return results;
}

SocialResults ApiSocialProvider::search_reddit(const std::string& query) {
    const auto token = env_credential(config_.reddit_token_env, "Reddit API");
    auto base_request = [&](const std::string& path) {
        net::HttpRequest r;
        r.url = config_.reddit_endpoint + path;
        r.timeout = config_.timeout;
        r.headers = {{"Authorization", "Bearer " + token}, {"User-Agent", config_.reddit_user_agent}};
        return r;
    };
    reddit_limiter_.acquire();
    const auto listing =
        get_json(base_request("/search?q=" + net::url_encode(query) + "&limit=5&sort=relevance&raw_json=1"),
                 "Reddit API");
    SocialResults results;
    std::vector<std::string> ids;
    for (const auto& child : listing.value("data", json::object()).value("children", json::array())) {
        const auto d = child.value("data", json::object());
        results.posts.push_back({iso_from_epoch_seconds(d.value("created_utc", 0.0)), d.value("title", ""),
                                 d.value("selftext", "")});
        ids.push_back(d.value("id", ""));
    }
    for (const auto& id : ids) {
        if (results.comments.size() >= 5 || id.empty()) break;
        reddit_limiter_.acquire();
        const auto thread = get_json(base_request("/comments/" + id + "?limit=5&sort=top&depth=1&raw_json=1"),
                                     "Reddit API");
        if (!thread.is_array() || thread.size() < 2) continue;
        for (const auto& child : thread[1].value("data", json::object()).value("children", json::array())) {
            if (child.value("kind", "") != "t1") continue;
            const auto d = child.value("data", json::object());
            results.comments.push_back({iso_from_epoch_seconds(d.value("created_utc", 0.0)), "", d.value("body", "")});
            if (results.comments.size() >= 5) break;
        }
    }
    return results;
}

WhoisClient::WhoisClient(const LiveProviderConfig& config)
    : config_(config), limiter_(config.rate_per_second, config.rate_jitter) {}

std::string whois_referral(const std::string& response) {
    for (const auto& line : text::split_lines(response)) {
        const auto t = text::trim(line);
        for (const char* key : {"refer:", "whois:"}) {
            if (text::istarts_with(t, key)) {
                auto server = text::trim(t.substr(std::strlen(key)));
                if (!server.empty()) return server;
            }
        }
    }
    return "";
}

std::string WhoisClient::query(const std::string& server, int port, const std::string& q) {
    limiter_.acquire();
    net::count_operation();
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (getaddrinfo(server.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res) {
        throw LookupError("cannot resolve WHOIS server " + server);
    }
    std::unique_ptr<addrinfo, decltype(&freeaddrinfo)> guard(res, freeaddrinfo);

    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    timeval tv{static_cast<time_t>(secs.count()),
               static_cast<suseconds_t>((config_.timeout - secs).count() * 1000)};
    for (auto* ai = res; ai; ai = ai->ai_next) {
        Socket sock(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
        if (sock.fd() < 0) continue;
        setsockopt(sock.fd(), SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
        setsockopt(sock.fd(), SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
        if (::connect(sock.fd(), ai->ai_addr, ai->ai_addrlen) != 0) continue;
        const auto line = q + "\r\n";
        if (::send(sock.fd(), line.data(), line.size(), MSG_NOSIGNAL) != static_cast<ssize_t>(line.size())) {
            throw LookupError("WHOIS server " + server + " closed the connection");
        }
        std::string out;
        char buf[4096];
        for (;;) {
            const auto n = ::recv(sock.fd(), buf, sizeof buf, 0);
            if (n == 0) break;
            if (n < 0) throw LookupError("WHOIS server " + server + " timed out");
            out.append(buf, static_cast<std::size_t>(n));
        }
        return out;
    }
    throw LookupError("cannot connect to WHOIS server " + server);
}

std::string WhoisClient::lookup(const std::string& domain) {
    const auto root = query(config_.whois_server, config_.whois_port, domain);
    const auto referral = whois_referral(root);
    if (referral.empty() || text::iequals(referral, config_.whois_server)) return root;
    return query(referral, config_.whois_port, domain);
}

ResolverDns::ResolverDns(const LiveProviderConfig& config)
    : config_(config), limiter_(config.rate_per_second * 6, config.rate_jitter) {}

DnsAnswer ResolverDns::query(const std::string& domain, DnsType type) {
    limiter_.acquire();
    net::count_operation();
    struct __res_state state {};
    if (res_ninit(&state) != 0) throw ResolverUnreachable("resolver initialisation failed");
    std::unique_ptr<struct __res_state, void (*)(struct __res_state*)> guard(&state, res_nclose);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(config_.dns_port));
    if (inet_pton(AF_INET, config_.dns_server.c_str(), &addr.sin_addr) != 1) {
        throw ResolverUnreachable("resolver address must be an IPv4 literal: " + config_.dns_server);
    }
    state.nscount = 1;
    state.nsaddr_list[0] = addr;
    state.retrans = std::max<int>(1, static_cast<int>(config_.timeout.count() / 1000 / 2));
    state.retry = 2;
    state.options &= ~static_cast<unsigned long>(RES_DNSRCH | RES_DEFNAMES);

    unsigned char buf[65536];
    const int len = res_nquery(&state, domain.c_str(), ns_c_in, ns_type_of(type), buf, sizeof buf);
    DnsAnswer answer;
    if (len < 0) {
        switch (state.res_h_errno) {
            case HOST_NOT_FOUND: answer.status = DnsAnswer::Status::nxdomain; break;
            case NO_DATA: answer.status = DnsAnswer::Status::nodata; break;
            case TRY_AGAIN:
                answer.status = DnsAnswer::Status::error;
                answer.error = "no answer from " + config_.dns_server;
                break;
            default:
                answer.status = DnsAnswer::Status::error;
                answer.error = "query failed";
                break;
        }
        return answer;
    }
    ns_msg msg;
    if (ns_initparse(buf, len, &msg) != 0) {
        answer.status = DnsAnswer::Status::error;
        answer.error = "malformed response";
        return answer;
    }
    const int count = ns_msg_count(msg, ns_s_an);
    for (int i = 0; i < count; ++i) {
        ns_rr rr;
        if (ns_parserr(&msg, ns_s_an, i, &rr) != 0) continue;
        char line[4096];
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"
        const int printed = ns_sprintrr(&msg, &rr, nullptr, nullptr, line, sizeof line);
#pragma GCC diagnostic pop
        if (printed < 0) continue;
        answer.records.push_back(text::collapse_whitespace(line));
    }
    answer.status = answer.records.empty() ? DnsAnswer::Status::nodata : DnsAnswer::Status::ok;
    return answer;
}

CrtShCerts::CrtShCerts(const LiveProviderConfig& config)
    : config_(config), limiter_(config.rate_per_second, config.rate_jitter) {}

std::vector<CertEntry> CrtShCerts::lookup(const std::string& domain) {
    limiter_.acquire();
    net::HttpRequest request;
    request.url = config_.crtsh_endpoint + "?q=" + net::url_encode(domain) + "&output=json";
    request.timeout = config_.timeout;
    const auto j = get_json(request, "crt.sh");
    std::vector<CertEntry> entries;
    if (!j.is_array()) throw ProviderError("crt.sh returned an unexpected document");
    for (const auto& e : j) {
        CertEntry c;
        c.id = e.value("id", std::int64_t{0});
        c.issuer = e.value("issuer_name", "");
        c.not_before = crtsh_time(e.value("not_before", json()));
        c.not_after = crtsh_time(e.value("not_after", json()));
        for (const auto& name : text::split_lines(e.value("name_value", ""))) {
            const auto n = text::trim(name);
            if (!n.empty()) c.names.push_back(n);
        }
        entries.push_back(std::move(c));
    }
    return entries;
}

Providers make_live_providers(const LiveProviderConfig& config) {
    Providers p;
    p.fetcher = std::make_shared<HttpPageFetcher>(config);
    p.search = std::make_shared<TavilySearch>(config);
    p.social = std::make_shared<ApiSocialProvider>(config);
    p.whois = std::make_shared<WhoisClient>(config);
    p.dns = std::make_shared<ResolverDns>(config);
    p.certs = std::make_shared<CrtShCerts>(config);
    return p;
}

}  // namespace scamscope::tools
