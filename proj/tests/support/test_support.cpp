#include "test_support.hpp"

#include <httplib.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace scamscope::testing {

namespace fs = std::filesystem;

fs::path source_dir() { return SCAMSCOPE_TEST_SOURCE_DIR; }
fs::path test_data_dir() { return source_dir() / "tests" / "data"; }
fs::path demo_dir() { return source_dir() / "demo"; }

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("scamscope-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" +
             std::to_string(rd() % 100000));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

ScopedEnv::ScopedEnv(std::string name, std::optional<std::string> value) : name_(std::move(name)) {
    if (const char* old = std::getenv(name_.c_str())) previous_ = old;
    if (value) {
        ::setenv(name_.c_str(), value->c_str(), 1);
    } else {
        ::unsetenv(name_.c_str());
    }
}

ScopedEnv::~ScopedEnv() {
    if (previous_) {
        ::setenv(name_.c_str(), previous_->c_str(), 1);
    } else {
        ::unsetenv(name_.c_str());
    }
}

struct StubHttpServer::Impl {
    httplib::Server server;
    std::thread thread;
    mutable std::mutex mutex;
    std::vector<StubRequest> requests;
};

StubHttpServer::StubHttpServer() : impl_(std::make_unique<Impl>()) {}

StubHttpServer::~StubHttpServer() {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

void StubHttpServer::on(const std::string& method, const std::string& path, Handler handler) {
    auto wrapped = [this, handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
        StubRequest r;
        r.method = req.method;
        r.path = req.path;
        r.body = req.body;
        for (const auto& [k, v] : req.params) r.params[k] = v;
        for (const auto& [k, v] : req.headers) {
            std::string key = k;
            for (auto& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            r.headers[key] = v;
        }
        {
            std::lock_guard lock(impl_->mutex);
            impl_->requests.push_back(r);
        }
        const auto reply = handler(r);
        if (reply.delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(reply.delay_ms));
        res.status = reply.status;
        for (const auto& [k, v] : reply.headers) res.set_header(k, v);
        res.set_content(reply.body, reply.content_type);
    };
    if (method == "GET") {
        impl_->server.Get(path, wrapped);
    } else if (method == "POST") {
        impl_->server.Post(path, wrapped);
    } else {
        throw std::invalid_argument("unsupported stub method " + method);
    }
}

void StubHttpServer::start() {
    port_ = impl_->server.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("stub server could not bind");
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

std::string StubHttpServer::url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
}

std::vector<StubRequest> StubHttpServer::requests() const {
    std::lock_guard lock(impl_->mutex);
    return impl_->requests;
}

namespace {

int bind_loopback(int type, int& port) {
    const int fd = ::socket(AF_INET, type, 0);
    if (fd < 0) throw std::runtime_error("socket failed");
    const int one = 1;
    setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        ::close(fd);
        throw std::runtime_error("bind failed");
    }
    socklen_t len = sizeof addr;
    getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    port = ntohs(addr.sin_port);
    return fd;
}

bool wait_readable(int fd, std::atomic<bool>& stop) {
    while (!stop.load()) {
        pollfd p{fd, POLLIN, 0};
        const int r = ::poll(&p, 1, 50);
        if (r > 0) return true;
    }
    return false;
}

}  // namespace

StubTcpServer::StubTcpServer(std::function<std::string(const std::string&)> respond)
    : respond_(std::move(respond)) {
    fd_ = bind_loopback(SOCK_STREAM, port_);
    ::listen(fd_, 8);
    thread_ = std::thread([this] { loop(); });
}

StubTcpServer::~StubTcpServer() {
    stop_ = true;
    if (thread_.joinable()) thread_.join();
    ::close(fd_);
}

std::vector<std::string> StubTcpServer::queries() const {
    std::lock_guard lock(mutex_);
    return queries_;
}

void StubTcpServer::loop() {
    while (wait_readable(fd_, stop_)) {
        const int client = ::accept(fd_, nullptr, nullptr);
        if (client < 0) continue;
        std::string line;
        char c;
        while (::recv(client, &c, 1, 0) == 1) {
            if (c == '\n') break;
            if (c != '\r') line += c;
        }
        {
            std::lock_guard lock(mutex_);
            queries_.push_back(line);
        }
        const auto reply = respond_(line);
        ::send(client, reply.data(), reply.size(), MSG_NOSIGNAL);
        ::close(client);
    }
}

StubDnsServer::StubDnsServer(std::map<std::string, Records> zone) : zone_(std::move(zone)) {
    fd_ = bind_loopback(SOCK_DGRAM, port_);
    thread_ = std::thread([this] { loop(); });
}

StubDnsServer::~StubDnsServer() {
    stop_ = true;
    if (thread_.joinable()) thread_.join();
    ::close(fd_);
}

void StubDnsServer::loop() {
    while (wait_readable(fd_, stop_)) {
        char buf[1500];
        sockaddr_in from{};
        socklen_t len = sizeof from;
        const auto n = ::recvfrom(fd_, buf, sizeof buf, 0, reinterpret_cast<sockaddr*>(&from), &len);
        if (n < 12) continue;
        ++queries_;
        const auto reply = answer(std::string(buf, static_cast<std::size_t>(n)));
        if (!reply.empty()) {
            ::sendto(fd_, reply.data(), reply.size(), 0, reinterpret_cast<sockaddr*>(&from), len);
        }
    }
}

std::string StubDnsServer::answer(const std::string& q) const {
    // question name starts at byte 12
    std::size_t p = 12;
    std::string name;
    while (p < q.size() && q[p] != 0) {
        const auto n = static_cast<unsigned char>(q[p]);
        if (!name.empty()) name += '.';
        name += q.substr(p + 1, n);
        p += n + 1;
    }
    if (p + 5 > q.size()) return {};
    const std::size_t question_end = p + 5;
    const int qtype = (static_cast<unsigned char>(q[p + 1]) << 8) | static_cast<unsigned char>(q[p + 2]);
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));

    std::vector<std::string> rdatas;
    int rcode = 0;
    const auto it = zone_.find(name);
    if (it == zone_.end()) {
        rcode = 3;
    } else if (qtype == 1) {
        for (const auto& a : it->second.a) {
            in_addr addr{};
            inet_pton(AF_INET, a.c_str(), &addr);
            rdatas.emplace_back(reinterpret_cast<const char*>(&addr), 4);
        }
    } else if (qtype == 16) {
        for (const auto& t : it->second.txt) rdatas.push_back(std::string(1, static_cast<char>(t.size())) + t);
    }

    std::string r;
    r += q.substr(0, 2);                                  // id
    r += static_cast<char>(0x81);                         // QR, RD
    r += static_cast<char>(0x80 | rcode);                 // RA, rcode
    r += std::string("\x00\x01", 2);                      // qdcount
    r += static_cast<char>(0);
    r += static_cast<char>(rdatas.size());                // ancount
    r += std::string(4, '\0');                            // nscount, arcount
    r += q.substr(12, question_end - 12);
    for (const auto& rd : rdatas) {
        r += std::string("\xc0\x0c", 2);
        r += static_cast<char>(0);
        r += static_cast<char>(qtype);
        r += std::string("\x00\x01\x00\x00\x01\x2c", 6);  // class IN, ttl 300
        r += static_cast<char>(rd.size() >> 8);
        r += static_cast<char>(rd.size() & 0xff);
        r += rd;
    }
    return r;
}

int unused_port() {
    int port = 0;
    const int fd = bind_loopback(SOCK_STREAM, port);
    ::close(fd);
    return port;
}

nlohmann::json oversupply_world() {
    using nlohmann::json;
    json w;
    w["pages"] = {
        {"http://shop.example/", {{"status", 200}, {"body", "<html><body><h1>Exampleshop</h1><p>Pay now</p>"
                                                              "<a href='/contact.html'>Contact Page</a></body></html>"}}},
        {"http://shop.example/landing", {{"status", 200}, {"body", "<p>Landing</p>"}}},
        {"http://gone.example/", {{"status", 404}, {"body", "<p>Not found</p>"}}},
        {"http://forbidden.example/", {{"status", 403}, {"body", ""}}},
        {"http://slow.example/", {{"error", "timeout"}}},
        {"http://redir.example/", {{"redirect", "http://shop.example/landing"}}},
    };
    json hits = json::array();
    for (int i = 1; i <= 12; ++i) {
        hits.push_back({{"url", "https://reviews.example/r" + std::to_string(i)},
                        {"title", "Review " + std::to_string(i)},
                        {"summary", "summary " + std::to_string(i)}});
    }
    w["search"] = {{"exampleshop review", hits}, {"no such thing", json::array()}};
    json posts = json::array();
    for (int i = 1; i <= 13; ++i) {
        char ts[32];
        std::snprintf(ts, sizeof ts, "2024-03-%02dT10:00:00Z", i);
        posts.push_back({{"timestamp", ts}, {"text", "post " + std::to_string(i) + " by @someone"}});
    }
    json three = json::array();
    for (int i = 1; i <= 3; ++i) three.push_back({{"timestamp", "2024-01-0" + std::to_string(i) + "T00:00:00Z"},
                                                  {"text", "exampleshop mention " + std::to_string(i)}});
    w["x"] = {{"exampleshop review", posts}, {"three posts", three}};
    json rposts = json::array();
    json rcomments = json::array();
    for (int i = 1; i <= 8; ++i) {
        rposts.push_back({{"timestamp", "2024-02-01T00:00:00Z"}, {"title", "Thread " + std::to_string(i)},
                          {"text", "is exampleshop legit? u/asker" + std::to_string(i)}});
    }
    for (int i = 1; i <= 9; ++i) {
        rcomments.push_back({{"timestamp", "2024-02-02T00:00:00Z"}, {"text", "comment " + std::to_string(i)}});
    }
    w["reddit"] = {{"exampleshop review", {{"posts", rposts}, {"comments", rcomments}}}};
    w["whois"] = {{"example.com",
                   "Domain Name: EXAMPLE.COM\nCreation Date: 2009-03-14T00:00:00Z\n"
                   "Registrant Organization: Privacy Service Provided by Withheld for Privacy ehf\n"}};
    w["dns"] = {{"example.com", {{"A", {"example.com. 300 IN A 203.0.113.7"}},
                                 {"NS", {"example.com. 300 IN NS ns1.example.net."}}}},
                {"missing.example", "NXDOMAIN"}};
    // newest five by not_before, ties to the higher id: 105 104 109 103 107
    const std::vector<std::pair<int, std::string>> certs = {
        {101, "2023-01-01T00:00:00"}, {102, "2023-02-01T00:00:00"}, {103, "2023-09-01T00:00:00"},
        {104, "2023-10-01T00:00:00"}, {105, "2023-11-01T00:00:00"}, {106, "2023-03-01T00:00:00"},
        {107, "2023-08-01T00:00:00"}, {108, "2023-04-01T00:00:00"}, {109, "2023-09-01T00:00:00"}};
    json clist = json::array();
    for (const auto& [id, nb] : certs) {
        json names = json::array({"example.com"});
        if (id == 107) {
            names = json::array();
            for (int k = 1; k <= 40; ++k) names.push_back("san" + std::to_string(k) + ".example.com");
        }
        clist.push_back({{"id", id}, {"issuer", "C=US, O=Test CA"}, {"not_before", nb},
                         {"not_after", "2025-01-01T00:00:00"}, {"names", names}});
    }
    w["certs"] = {{"example.com", clist}};
    return w;
}

std::string step(const std::string& thought, const std::string& action, const std::string& input) {
    return "Thought: " + thought + "\nAction: " + action + "\nAction Input: " + input;
}

std::string final_answer(const std::string& json) {
    return "Thought: I now know the final answer\nFinal Answer: " + json;
}

react::AnalysisSession verdict_session(const std::string& url, bool result, std::optional<std::string> scam_type,
                                       const std::string& reason) {
    react::AnalysisSession s;
    s.url = url;
    s.termination = react::Termination::final_answer;
    verdict::Verdict v;
    v.result = result;
    v.scam_type = std::move(scam_type);
    v.reason = reason;
    s.verdict = v;
    return s;
}

}  // namespace scamscope::testing
