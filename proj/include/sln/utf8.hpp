#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sln::utf8 {

/// Appends the UTF-8 encoding of `cp` (which must be a Unicode scalar value).
void append(std::string& out, char32_t cp);

/// Decodes one scalar value starting at `pos`; advances `pos`.
/// Returns nullopt on malformed input (overlong, surrogate, truncated, > U+10FFFF).
std::optional<char32_t> decode_one(std::string_view text, std::size_t& pos);

bool is_valid(std::string_view text);

/// XML 1.0 `Char` production.
constexpr bool is_xml_char(char32_t cp) {
    return cp == 0x9 || cp == 0xA || cp == 0xD || (cp >= 0x20 && cp <= 0xD7FF) ||
           (cp >= 0xE000 && cp <= 0xFFFD) || (cp >= 0x10000 && cp <= 0x10FFFF);
}

/// Byte offset of the first sequence that is either malformed UTF-8 or not an
/// XML character; nullopt when the whole text is acceptable document content.
std::optional<std::size_t> first_non_xml_char(std::string_view text);

std::u32string to_u32(std::string_view text);
std::string from_u32(std::u32string_view text);

} // namespace sln::utf8
