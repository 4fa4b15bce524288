#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace scamscope {

/// An RFC 3986 URI split into its components. Absent components are
/// distinguished from empty ones (`http://h/?` has an empty query).
struct Url {
    std::string scheme;
    std::optional<std::string> authority;  // userinfo@host:port, verbatim
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;

    /// Parses any URI reference (absolute or relative). Never throws;
    /// returns nullopt only for strings with characters that cannot appear
    /// in a URI (whitespace, control bytes).
    static std::optional<Url> parse_reference(std::string_view text);

    /// Parses an absolute http(s) URL with a non-empty host.
    /// Throws InvalidUrl otherwise.
    static Url parse_http(std::string_view text);

    std::string host() const;  // lowercased, port and userinfo removed
    std::optional<int> port() const;
    bool is_absolute() const { return !scheme.empty(); }

    std::string str() const;
};

/// Resolves `reference` against `base` (RFC 3986 section 5.2).
Url resolve(const Url& base, const Url& reference);
std::string resolve(std::string_view base, std::string_view reference);

bool is_http_url(std::string_view text);

/// Syntactic check for a DNS name with at least two labels.
bool is_valid_domain(std::string_view text);

/// Lowercases the host and strips one trailing dot. Other characters,
/// including percent escapes, are left as written.
std::string canonical_host(std::string_view host);

/// Canonical http(s) URL for cache keys: lowercase scheme and host,
/// stripped trailing dot, "/" for an empty path, everything else untouched.
std::string canonical_url(std::string_view url);

/// Accepts a bare domain or a URL and returns the canonical host.
/// Throws InvalidToolInput when neither form yields a valid domain.
std::string domain_from_input(std::string_view input);

}  // namespace scamscope
