#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sbeauty/corpus.hpp"
#include "sbeauty/patentlink.hpp"

namespace sbeauty {

/// Normalized person-name key: folded lowercase last name with separators
/// collapsed, plus the ordered first letters of the given names.
struct NameKey {
    std::string last_name;
    std::string initials;

    bool operator==(const NameKey&) const = default;
    auto operator<=>(const NameKey&) const = default;

    std::uint64_t hash() const;
    /// Canonical display form, e.g. "moreira a".
    std::string display() const;
    /// A raw name string that normalizes back to this key.
    std::string render_raw() const;
};

/// Normalizes a raw person name. "Last, First M." and "F. M. Last" orders
/// are both handled (comma heuristic); diacritics are folded and punctuation
/// stripped; compound last names collapse to one token ("Reboud Ravaux" ->
/// "reboudravaux"). Throws std::invalid_argument when the input has no
/// alphabetic content.
NameKey normalize_name(std::string_view raw);

/// Non-throwing variant for bulk ingestion paths.
std::optional<NameKey> try_normalize_name(std::string_view raw);

struct MatchRecord {
    int link_type = 0;            // 1 = inventor-author self-citation, 2 = other patents
    NameKey name_key;
    std::string pub_id;
    std::vector<std::string> family_ids;  // sorted
};

/// For each SB-SNPR, compares its author keys with inventor keys of
/// (a) the families citing it -> type 1 and (b) every other family in the
/// corpus -> type 2. One record per (pub, name, type), ordered by pub_id,
/// then name key, then link type.
std::vector<MatchRecord> match_inventor_authors(const Corpus& corpus,
                                                const std::vector<SnprRecord>& snprs);

/// Publications whose author keys intersect the inventor keys of the given
/// families. Throws std::invalid_argument for an unknown family id.
/// Result is sorted by pub_id.
std::vector<std::string> find_inventor_papers(const Corpus& corpus,
                                              const std::vector<std::string>& family_ids);

}  // namespace sbeauty
