#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace newsagg::core {

std::string_view trim(std::string_view s);
std::string ascii_lower(std::string_view s);
bool is_ascii_space(char c);

// Simple (1:1) Unicode case folding over UTF-8 for the Latin, Greek and
// Cyrillic blocks. Other code points pass through unchanged; invalid bytes
// are copied verbatim so the output is always defined.
std::string fold_case(std::string_view utf8);

// Runs of ASCII whitespace become one space; ends trimmed.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Longest prefix of `s` not exceeding `max_bytes` that does not cut a
// UTF-8 sequence in half.
std::size_t utf8_safe_prefix(std::string_view s, std::size_t max_bytes);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string to_hex64(std::uint64_t v);
std::uint64_t from_hex64(std::string_view hex);

}  // namespace newsagg::core
