#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scamscope::html {

/// A forgiving HTML tree. Comments and doctypes are dropped while parsing;
/// entity references in text and attribute values are decoded.
struct Node {
    enum class Kind { document, element, text };

    Kind kind = Kind::document;
    std::string tag;  // lowercase, elements only
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;  // text nodes only
    std::vector<std::unique_ptr<Node>> children;
    Node* parent = nullptr;

    bool is_element(std::string_view name) const { return kind == Kind::element && tag == name; }
    std::optional<std::string> attr(std::string_view name) const;
};

struct Document {
    std::unique_ptr<Node> root;
};

Document parse(std::string_view markup);

std::string decode_entities(std::string_view s);

bool is_void_element(std::string_view tag);

}  // namespace scamscope::html
