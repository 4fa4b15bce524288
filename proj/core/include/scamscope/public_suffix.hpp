#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

namespace scamscope {

/// Public Suffix List matcher (normal, wildcard and exception rules).
/// Hosts under a suffix the list does not know fall back to the implicit
/// "*" rule, so "shop.popular.example" reduces to "popular.example".
class PublicSuffixList {
public:
    static PublicSuffixList from_string(std::string_view dat);
    static PublicSuffixList from_file(const std::filesystem::path& path);

    /// The bundled snapshot, loaded once.
    static const PublicSuffixList& bundled();

    std::string public_suffix(std::string_view host) const;

    /// Suffix plus one label. A host that is itself a public suffix (or an
    /// IP literal) is returned unchanged.
    std::string registrable_domain(std::string_view host) const;

    std::size_t rule_count() const { return rules_.size() + wildcards_.size() + exceptions_.size(); }

private:
    std::unordered_set<std::string> rules_;
    std::unordered_set<std::string> wildcards_;   // stored without the "*."
    std::unordered_set<std::string> exceptions_;  // stored without the "!"
};

}  // namespace scamscope
