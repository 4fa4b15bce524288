#pragma once

#include "scamscope/react.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace scamscope::testing {

std::filesystem::path source_dir();  // repository root
std::filesystem::path test_data_dir();
std::filesystem::path demo_dir();

std::string slurp(const std::filesystem::path& path);
void spit(const std::filesystem::path& path, const std::string& content);

class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

/// Sets (or unsets, for nullopt) an environment variable for one scope.
class ScopedEnv {
public:
    ScopedEnv(std::string name, std::optional<std::string> value);
    ~ScopedEnv();

private:
    std::string name_;
    std::optional<std::string> previous_;
};

struct StubRequest {
    std::string method;
    std::string path;
    std::string body;
    std::map<std::string, std::string> params;   // query string
    std::map<std::string, std::string> headers;  // lowercase names
};

struct StubReply {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::vector<std::pair<std::string, std::string>> headers;
    int delay_ms = 0;
};

/// HTTP server on 127.0.0.1 with an ephemeral port, on its own thread.
/// Register routes before `start()`; unknown paths answer 404.
class StubHttpServer {
public:
    using Handler = std::function<StubReply(const StubRequest&)>;

    StubHttpServer();
    ~StubHttpServer();

    void on(const std::string& method, const std::string& path, Handler handler);
    void start();
    int port() const { return port_; }
    std::string url(const std::string& path = "/") const;
    std::vector<StubRequest> requests() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = 0;
};

/// TCP server answering every connection through `respond(query line)`,
/// then closing. Serves whois-style exchanges.
class StubTcpServer {
public:
    explicit StubTcpServer(std::function<std::string(const std::string&)> respond);
    ~StubTcpServer();

    int port() const { return port_; }
    std::vector<std::string> queries() const;

private:
    void loop();

    std::function<std::string(const std::string&)> respond_;
    int fd_ = -1;
    int port_ = 0;
    std::atomic<bool> stop_{false};
    std::thread thread_;
    mutable std::mutex mutex_;
    std::vector<std::string> queries_;
};

/// UDP DNS server for one zone of A/TXT records; names not in `zone`
/// answer NXDOMAIN, known names without the asked type answer NODATA.
class StubDnsServer {
public:
    struct Records {
        std::vector<std::string> a;    // dotted quads
        std::vector<std::string> txt;
    };
    explicit StubDnsServer(std::map<std::string, Records> zone);
    ~StubDnsServer();

    int port() const { return port_; }
    std::size_t queries() const { return queries_.load(); }

private:
    void loop();
    std::string answer(const std::string& packet) const;

    std::map<std::string, Records> zone_;
    int fd_ = -1;
    int port_ = 0;
    std::atomic<bool> stop_{false};
    std::atomic<std::size_t> queries_{0};
    std::thread thread_;
};

/// A free TCP port with nothing listening on it (best effort).
int unused_port();

/// Simulated-web world whose providers over-supply results:
///   search "exampleshop review": 12 hits, "no such thing": none
///   x "exampleshop review": 13 posts, "three posts": 3
///   reddit "exampleshop review": 8 posts and 9 comments
///   certs example.com: 9 entries, id 107 carries 40 names
///   whois example.com (2009, privacy service), dns example.com (A only)
///   pages: shop (200), gone (404), slow (timeout), redir -> shop/landing
nlohmann::json oversupply_world();

/// Scripted step text helpers.
std::string step(const std::string& thought, const std::string& action, const std::string& input);
std::string final_answer(const std::string& json);

/// Minimal session with a verdict, for scoring tests.
react::AnalysisSession verdict_session(const std::string& url, bool result,
                                       std::optional<std::string> scam_type = std::nullopt,
                                       const std::string& reason = "test");

}  // namespace scamscope::testing
