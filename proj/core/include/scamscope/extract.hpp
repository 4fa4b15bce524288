#pragma once

#include "scamscope/html.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace scamscope::extract {

inline constexpr std::size_t kSiblingGroup = 3;

/// Visible text of a page as a list of blocks.
///
/// An element is a *leaf* when none of its visible descendants is a
/// block-level element; its text is its innerText with whitespace
/// collapsed. Walking the tree, the leaves and loose text nodes that are
/// consecutive siblings under one parent form a run; each run is cut into
/// blocks of at most `group` items joined by a space. A non-leaf sibling
/// ends the current run and contributes its own blocks in place.
///
/// Hidden content (head, script, style, noscript, template, elements with
/// the `hidden` attribute or an inline display:none / visibility:hidden
/// style) is skipped and does not end a run.
std::vector<std::string> text_blocks(const html::Document& doc, std::size_t group = kSiblingGroup);

/// Blocks joined by newlines. Throws EmptyDocument when there are none.
std::string visible_text(const html::Document& doc, std::size_t group = kSiblingGroup);

struct Hyperlink {
    std::string href;  // absolute
    std::string text;

    bool operator==(const Hyperlink&) const = default;
};

/// Every <a href> in document order, duplicates removed. The label is the
/// anchor's own text plus the direct text of its child elements; text
/// nested two or more levels below the anchor is ignored. Relative hrefs
/// are resolved against <base href> when present, else `page_url`.
std::vector<Hyperlink> hyperlinks(const html::Document& doc, std::string_view page_url);

/// One "(href, text)" line per link.
std::string format_hyperlinks(const std::vector<Hyperlink>& links);

bool is_block_element(std::string_view tag);

}  // namespace scamscope::extract
