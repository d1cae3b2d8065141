#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace graphrag {

// Decodes the UTF-8 sequence starting at text[pos]. Returns the code point and
// advances pos. Malformed bytes are returned as single code points (latin-1
// fallback) so that byte-level round-trips still hold.
std::uint32_t utf8_decode(std::string_view text, std::size_t& pos);

bool is_unicode_whitespace(std::uint32_t cp);

// Splits into code point strings; used by edit distance.
std::vector<std::string> utf8_codepoints(std::string_view text);

std::string to_lower_ascii(std::string_view text);

// Case-fold (ASCII) and collapse internal whitespace runs to single spaces,
// trimming the ends. Applied before entity string comparison.
std::string normalize_name(std::string_view text);

// Lowercased whitespace tokens; the shared basis for metric scoring and the
// mock providers' lexical features.
std::vector<std::string> lower_tokens(std::string_view text);

}  // namespace graphrag
