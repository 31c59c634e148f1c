#include "sbeauty/namematch.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "detail/strings.hpp"
#include "detail/textnorm.hpp"

namespace sbeauty {

namespace {

bool has_alpha(std::string_view s) {
    for (const char c : s)
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
    return false;
}

// Splits folded text into alphabetic-ish tokens (letters and digits kept,
// everything else separates).
std::vector<std::string> name_tokens(std::string_view folded) {
    std::vector<std::string> tokens;
    std::string cur;
    for (const char c : folded) {
        if (detail::is_word_char(c)) {
            cur.push_back(c);
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::string concat(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) out += t;
    return out;
}

std::string first_letters(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens)
        if (!t.empty()) out.push_back(t.front());
    return out;
}

}  // namespace

std::uint64_t NameKey::hash() const {
    return detail::fnv1a(initials, detail::fnv1a(last_name) * 0x100000001B3ULL ^ 0x1F);
}

std::string NameKey::display() const {
    return initials.empty() ? last_name : last_name + " " + initials;
}

std::string NameKey::render_raw() const {
    std::string out = last_name;
    if (!initials.empty()) {
        out += ",";
        for (const char c : initials) {
            out += ' ';
            out += c;
            out += '.';
        }
    }
    return out;
}

std::optional<NameKey> try_normalize_name(std::string_view raw) {
    const std::string folded = detail::fold_to_ascii_lower(raw);
    if (!has_alpha(folded)) return std::nullopt;

    NameKey key;
    const auto comma = folded.find(',');
    if (comma != std::string::npos) {
        // "Last, First M." order.
        key.last_name = concat(name_tokens(std::string_view(folded).substr(0, comma)));
        key.initials = first_letters(name_tokens(std::string_view(folded).substr(comma + 1)));
    } else {
        // "F. M. Last" order: the final token is the last name.
        auto tokens = name_tokens(folded);
        if (tokens.empty()) return std::nullopt;
        key.last_name = tokens.back();
        tokens.pop_back();
        key.initials = first_letters(tokens);
    }
    if (key.last_name.empty()) return std::nullopt;
    return key;
}

NameKey normalize_name(std::string_view raw) {
    auto key = try_normalize_name(raw);
    if (!key)
        throw std::invalid_argument("name has no usable content: \"" + std::string(raw) + "\"");
    return *key;
}

namespace {

std::vector<NameKey> keys_of(const std::vector<std::string>& raw_names) {
    std::vector<NameKey> keys;
    keys.reserve(raw_names.size());
    for (const auto& n : raw_names)
        if (auto k = try_normalize_name(n)) keys.push_back(std::move(*k));
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

bool intersects(const std::vector<NameKey>& a, const std::vector<NameKey>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return true;
        if (*ia < *ib) ++ia; else ++ib;
    }
    return false;
}

}  // namespace

std::vector<MatchRecord> match_inventor_authors(const Corpus& corpus,
                                                const std::vector<SnprRecord>& snprs) {
    // Inventor keys per family, computed once.
    std::vector<std::vector<NameKey>> family_keys(corpus.family_count());
    for (FamilyIndex f = 0; f < corpus.family_count(); ++f)
        family_keys[f] = keys_of(corpus.family(f).inventors);

    // (pub_id, key, type) -> family ids
    std::map<std::tuple<std::string, NameKey, int>, std::set<std::string>> hits;

    for (const auto& snpr : snprs) {
        const auto pub = corpus.find_publication(snpr.pub_id);
        if (!pub) continue;
        const auto author_keys = keys_of(corpus.publication(*pub).authors);
        if (author_keys.empty()) continue;

        std::set<std::string> citing(snpr.citing_family_ids.begin(),
                                     snpr.citing_family_ids.end());

        for (FamilyIndex f = 0; f < corpus.family_count(); ++f) {
            const Patent& fam = corpus.family(f);
            const int type = citing.count(fam.family_id) ? 1 : 2;
            for (const auto& k : family_keys[f]) {
                if (std::binary_search(author_keys.begin(), author_keys.end(), k))
                    hits[{snpr.pub_id, k, type}].insert(fam.family_id);
            }
        }
    }

    std::vector<MatchRecord> records;
    records.reserve(hits.size());
    for (auto& [key, families] : hits) {
        MatchRecord rec;
        rec.pub_id = std::get<0>(key);
        rec.name_key = std::get<1>(key);
        rec.link_type = std::get<2>(key);
        rec.family_ids.assign(families.begin(), families.end());
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<std::string> find_inventor_papers(const Corpus& corpus,
                                              const std::vector<std::string>& family_ids) {
    std::vector<NameKey> inventor_keys;
    for (const auto& fid : family_ids) {
        const auto f = corpus.find_family(fid);
        if (!f) throw std::invalid_argument("unknown patent family: " + fid);
        for (const auto& name : corpus.family(*f).inventors)
            if (auto k = try_normalize_name(name)) inventor_keys.push_back(std::move(*k));
    }
    std::sort(inventor_keys.begin(), inventor_keys.end());
    inventor_keys.erase(std::unique(inventor_keys.begin(), inventor_keys.end()),
                        inventor_keys.end());

    std::vector<std::string> out;
    for (PubIndex p = 0; p < corpus.publication_count(); ++p) {
        const auto author_keys = keys_of(corpus.publication(p).authors);
        if (intersects(author_keys, inventor_keys)) out.push_back(corpus.publication(p).id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sbeauty
