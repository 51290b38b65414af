#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semicrf {

// Splits a UTF-8 string into one string per code point. Bytes that do not
// form a valid sequence are passed through as single-byte strings.
std::vector<std::string> utf8_chars(const std::string& s);

// Decodes the code point starting at s[pos]; advances pos past it.
// Returns 0xFFFD on malformed input (pos advances by one byte).
std::uint32_t utf8_decode(const std::string& s, std::size_t& pos);

std::string utf8_encode(std::uint32_t cp);

// Full-width ASCII variants (U+FF01..U+FF5E) to their single-byte forms,
// ideographic space U+3000 to a plain space. Other code points unchanged.
std::string normalize_fullwidth(const std::string& utf8_char);

// ASCII whitespace or U+3000
bool is_space_codepoint(std::uint32_t cp);

// Splits on runs of whitespace code points (ASCII + U+3000).
std::vector<std::string> split_words(const std::string& line);

}
