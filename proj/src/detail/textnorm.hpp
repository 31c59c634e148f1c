#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sbeauty::detail {

// Lowercases ASCII and folds common Latin-1 / Latin Extended-A accented
// letters to their base ASCII letter(s) ("é"->"e", "ß"->"ss"). Bytes that
// cannot be folded become spaces so they act as token separators.
std::string fold_to_ascii_lower(std::string_view text);

// Splits folded text into lowercase alphanumeric tokens. Every
// non-alphanumeric character (including hyphens) is a separator, so
// "multi-hop" yields {"multi", "hop"}.
std::vector<std::string> tokenize(std::string_view text);

inline bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace sbeauty::detail
