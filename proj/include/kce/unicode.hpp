#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

// Minimal UTF-8 helpers. All character offsets in the data model are Unicode
// scalar-value indices, so spans stay stable no matter which annotator
// produced them. Invalid bytes are treated as one code point each so that a
// scan never stalls.

namespace kce {

// Decodes the code point starting at byte `pos` and advances `pos` past it.
inline std::uint32_t next_codepoint(std::string_view s, std::size_t& pos) {
    const unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c < 0x80) {
        ++pos;
        return c;
    }
    std::size_t len = 1;
    std::uint32_t cp = c;
    if ((c >> 5) == 0x6) {
        len = 2;
        cp = c & 0x1F;
    } else if ((c >> 4) == 0xE) {
        len = 3;
        cp = c & 0x0F;
    } else if ((c >> 3) == 0x1E) {
        len = 4;
        cp = c & 0x07;
    }
    if (pos + len > s.size()) {
        ++pos;
        return c;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char cont = static_cast<unsigned char>(s[pos + k]);
        if ((cont >> 6) != 0x2) {
            ++pos;
            return c;
        }
        cp = (cp << 6) | (cont & 0x3F);
    }
    pos += len;
    return cp;
}

inline std::size_t codepoint_count(std::string_view s) {
    std::size_t pos = 0;
    std::size_t n = 0;
    while (pos < s.size()) {
        next_codepoint(s, pos);
        ++n;
    }
    return n;
}

// Byte offset of the cp_index-th code point; clamps to s.size().
inline std::size_t codepoint_to_byte(std::string_view s, std::size_t cp_index) {
    std::size_t pos = 0;
    std::size_t n = 0;
    while (pos < s.size() && n < cp_index) {
        next_codepoint(s, pos);
        ++n;
    }
    return pos;
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = ascii_lower(c);
    return out;
}

inline bool is_ascii_alnum(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

} // namespace kce
