#include "graphrag/text.hpp"

#include <cctype>

namespace graphrag {

std::uint32_t utf8_decode(std::string_view text, std::size_t& pos) {
    const unsigned char b0 = static_cast<unsigned char>(text[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xe0) == 0xc0) {
        len = 2;
        cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
        len = 3;
        cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return b0;  // stray continuation byte
    }
    if (pos + static_cast<std::size_t>(len) > text.size()) {
        ++pos;
        return b0;
    }
    for (int i = 1; i < len; ++i) {
        const unsigned char b = static_cast<unsigned char>(text[pos + static_cast<std::size_t>(i)]);
        if ((b & 0xc0) != 0x80) {
            ++pos;
            return b0;
        }
        cp = (cp << 6) | (b & 0x3f);
    }
    pos += static_cast<std::size_t>(len);
    return cp;
}

bool is_unicode_whitespace(std::uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d: case 0x20:
        case 0x85: case 0xa0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202f: case 0x205f: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200a;
    }
}

std::vector<std::string> utf8_codepoints(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t start = pos;
        utf8_decode(text, pos);
        out.emplace_back(text.substr(start, pos - start));
    }
    return out;
}

std::string to_lower_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string normalize_name(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    bool pending_space = false;
    while (pos < text.size()) {
        std::size_t start = pos;
        std::uint32_t cp = utf8_decode(text, pos);
        if (is_unicode_whitespace(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        if (cp < 0x80) {
            out.push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
        } else {
            out.append(text.substr(start, pos - start));
        }
    }
    return out;
}

std::vector<std::string> lower_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t start = pos;
        std::uint32_t cp = utf8_decode(text, pos);
        if (is_unicode_whitespace(cp)) {
            if (!current.empty()) {
                out.push_back(current);
                current.clear();
            }
            continue;
        }
        if (cp < 0x80) {
            current.push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
        } else {
            current.append(text.substr(start, pos - start));
        }
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

}  // namespace graphrag
