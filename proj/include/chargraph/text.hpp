// UTF-8 helpers shared by sentence splitting, alias matching, sentiment
// scoring and topic preprocessing.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace chargraph::text {

/// Decodes UTF-8; malformed sequences become U+FFFD.
std::u32string decode(std::string_view utf8);
std::string encode(char32_t cp);
std::string encode(std::u32string_view cps);

/// Number of code points in a UTF-8 string.
std::size_t codepoint_count(std::string_view utf8);

/// Simple (per code point) Unicode case folding. Scripts without case
/// (Bengali, Devanagari, ...) pass through unchanged.
std::string fold_case(std::string_view utf8);

/// Letters, digits, combining marks and the zero-width joiners count as
/// word characters; everything else separates tokens.
bool is_word_char(char32_t cp);
bool is_space(char32_t cp);

/// Splits a sentence into word tokens, optionally case-folded.
std::vector<std::string> word_tokens(std::string_view sentence, bool fold);

/// Trims Unicode whitespace at both ends and collapses internal runs to a
/// single ASCII space.
std::string normalize_space(std::string_view utf8);

std::string_view trim_ascii(std::string_view s);

}  // namespace chargraph::text
