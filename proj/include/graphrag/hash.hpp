#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace graphrag {

// FNV-1a, used for content checksums, cache keys, and derived identifiers.
// Not cryptographic; collisions only risk test-fixture scale data.
inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 14695981039346656037ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string to_hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline std::string hex_digest(std::string_view data) { return to_hex64(fnv1a64(data)); }

// Short digest used in mock provider templates.
inline std::string hex_digest8(std::string_view data) { return hex_digest(data).substr(8); }

}  // namespace graphrag
