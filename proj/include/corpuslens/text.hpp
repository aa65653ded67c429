// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace corpuslens::text {

/// Decodes UTF-8, throwing EncodingError with the offending byte offset.
/// Overlong forms, surrogates and code points above U+10FFFF are rejected.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

// Character classes cover ASCII plus the Latin-1 and Latin Extended-A blocks,
// which is what German text uses in practice.
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_upper(char32_t c);
bool is_space(char32_t c);
inline bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }

char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view s);
std::string to_lower_utf8(std::string_view s);

/// Number of alphabetic code points.
std::size_t count_letters(std::u32string_view s);

/// Trim ASCII/Unicode whitespace from both ends.
std::string_view trim(std::string_view s);

/// Collapse whitespace runs to one space and trim; used for round-trip checks.
std::string collapse_whitespace(std::string_view s);

}  // namespace corpuslens::text
