#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace sbeauty::detail {

// FNV-1a; used for content fingerprints and author-key hashing.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xCBF29CE484222325ULL) {
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a_u64(std::uint64_t v, std::uint64_t h = 0xCBF29CE484222325ULL) {
    for (int i = 0; i < 8; ++i) {
        h ^= v & 0xFF;
        h *= 0x100000001B3ULL;
        v >>= 8;
    }
    return h;
}

// Shortest round-trip decimal rendering; keeps generated files byte-stable.
inline std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline void append_double(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

inline void append_int(std::string& out, std::int64_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

// Quotes a CSV field only when needed (comma, quote, newline).
inline std::string csv_field(std::string_view s) {
    bool needs_quote = false;
    for (const char c : s) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quote = true;
            break;
        }
    }
    if (!needs_quote) return std::string(s);
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (const char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace sbeauty::detail
