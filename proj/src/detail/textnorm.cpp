#include "detail/textnorm.hpp"

#include <cstdint>

namespace sbeauty::detail {

namespace {

// Folds one Unicode code point to ASCII. Returns nullptr when there is no
// sensible mapping (caller substitutes a space).
const char* fold_codepoint(std::uint32_t cp) {
    // Latin-1 supplement letters.
    if (cp >= 0x00C0 && cp <= 0x00FF) {
        static const char* table[] = {
            "a", "a", "a", "a", "a", "a", "ae", "c",   // C0-C7
            "e", "e", "e", "e", "i", "i", "i", "i",    // C8-CF
            "d", "n", "o", "o", "o", "o", "o", nullptr,// D0-D7 (D7 = ×)
            "o", "u", "u", "u", "u", "y", "th", "ss",  // D8-DF
            "a", "a", "a", "a", "a", "a", "ae", "c",   // E0-E7
            "e", "e", "e", "e", "i", "i", "i", "i",    // E8-EF
            "d", "n", "o", "o", "o", "o", "o", nullptr,// F0-F7 (F7 = ÷)
            "o", "u", "u", "u", "u", "y", "th", "y",   // F8-FF
        };
        return table[cp - 0x00C0];
    }
    // Latin Extended-A: the block is organized in (accented, accented)
    // pairs per base letter; map by range.
    if (cp >= 0x0100 && cp <= 0x017F) {
        struct Range { std::uint32_t lo, hi; const char* out; };
        static const Range ranges[] = {
            {0x0100, 0x0105, "a"}, {0x0106, 0x010D, "c"}, {0x010E, 0x0111, "d"},
            {0x0112, 0x011B, "e"}, {0x011C, 0x0123, "g"}, {0x0124, 0x0127, "h"},
            {0x0128, 0x0131, "i"}, {0x0132, 0x0133, "ij"}, {0x0134, 0x0135, "j"},
            {0x0136, 0x0138, "k"}, {0x0139, 0x0142, "l"}, {0x0143, 0x014B, "n"},
            {0x014C, 0x0151, "o"}, {0x0152, 0x0153, "oe"}, {0x0154, 0x0159, "r"},
            {0x015A, 0x0161, "s"}, {0x0162, 0x0167, "t"}, {0x0168, 0x0173, "u"},
            {0x0174, 0x0175, "w"}, {0x0176, 0x0178, "y"}, {0x0179, 0x017E, "z"},
            {0x017F, 0x017F, "s"},
        };
        for (const auto& r : ranges) {
            if (cp >= r.lo && cp <= r.hi) return r.out;
        }
    }
    return nullptr;
}

}  // namespace

std::string fold_to_ascii_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                               : static_cast<char>(c));
            ++i;
            continue;
        }
        // Decode one UTF-8 sequence; malformed bytes become spaces.
        std::uint32_t cp = 0;
        std::size_t len = 0;
        if ((c & 0xE0) == 0xC0) { cp = c & 0x1F; len = 2; }
        else if ((c & 0xF0) == 0xE0) { cp = c & 0x0F; len = 3; }
        else if ((c & 0xF8) == 0xF0) { cp = c & 0x07; len = 4; }
        if (len == 0 || i + len > n) {
            out.push_back(' ');
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char cc = static_cast<unsigned char>(text[i + k]);
            if ((cc & 0xC0) != 0x80) { ok = false; break; }
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (!ok) {
            out.push_back(' ');
            ++i;
            continue;
        }
        const char* folded = fold_codepoint(cp);
        out.append(folded ? folded : " ");
        i += len;
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    const std::string folded = fold_to_ascii_lower(text);
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < folded.size()) {
        while (i < folded.size() && !is_word_char(folded[i])) ++i;
        std::size_t j = i;
        while (j < folded.size() && is_word_char(folded[j])) ++j;
        if (j > i) tokens.emplace_back(folded.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace sbeauty::detail
