#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace scamscope::text {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);

// ASCII case-insensitive substring search; npos when absent.
std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from = 0);

// Whole-word variant: the match must not be flanked by [A-Za-z0-9].
std::size_t ifind_word(std::string_view haystack, std::string_view needle, std::size_t from = 0);

// Collapses every whitespace run into one space and trims both ends.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
/// Lines without terminators (LF or CRLF); a final newline adds no empty line.
std::vector<std::string> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Longest prefix of `s` of at most `max_bytes` bytes that does not cut a
// UTF-8 sequence in half.
std::string_view utf8_prefix(std::string_view s, std::size_t max_bytes);

// Cuts `s` to at most `max_bytes`, ending with `suffix` when anything was
// dropped. The result never exceeds `max_bytes`.
std::string truncate_with_suffix(std::string_view s, std::size_t max_bytes, std::string_view suffix);

std::string sha256_hex(std::string_view data);

}  // namespace scamscope::text
