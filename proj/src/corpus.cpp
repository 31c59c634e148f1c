#include "sbeauty/corpus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "detail/lineio.hpp"
#include "detail/strings.hpp"
#include "sbeauty/namematch.hpp"

namespace sbeauty {

namespace {

constexpr std::size_t kWarningCap = 50;

void warn(LoadStats& stats, std::string message) {
    if (stats.warnings.size() < kWarningCap) stats.warnings.push_back(std::move(message));
}

template <typename T>
std::vector<std::uint64_t> csr_offsets(std::size_t n_rows, const std::vector<T>& rows) {
    std::vector<std::uint64_t> offsets(n_rows + 1, 0);
    for (const auto r : rows) ++offsets[r + 1];
    for (std::size_t i = 1; i <= n_rows; ++i) offsets[i] += offsets[i - 1];
    return offsets;
}

}  // namespace

std::optional<PubIndex> Corpus::find_publication(std::string_view id) const {
    const auto it = pub_by_id_.find(id);
    if (it == pub_by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<FamilyIndex> Corpus::find_family(std::string_view family_id) const {
    const auto it = fam_by_id_.find(family_id);
    if (it == fam_by_id_.end()) return std::nullopt;
    return it->second;
}

std::span<const PubIndex> Corpus::citers_of(PubIndex i) const {
    return {in_targets_.data() + in_offsets_[i],
            static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i])};
}

std::span<const PubIndex> Corpus::references_of(PubIndex i) const {
    return {out_targets_.data() + out_offsets_[i],
            static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i])};
}

std::span<const FamilyIndex> Corpus::citing_families_of(PubIndex i) const {
    return {fam_targets_.data() + fam_offsets_[i],
            static_cast<std::size_t>(fam_offsets_[i + 1] - fam_offsets_[i])};
}

std::span<const PubIndex> Corpus::publications_in_year(int year) const {
    if (publications_.empty() || year < min_year_ || year > max_year_) return {};
    const auto row = static_cast<std::size_t>(year - min_year_);
    return {year_members_.data() + year_offsets_[row],
            static_cast<std::size_t>(year_offsets_[row + 1] - year_offsets_[row])};
}

std::span<const std::uint64_t> Corpus::author_keys_of(PubIndex i) const {
    return {key_values_.data() + key_offsets_[i],
            static_cast<std::size_t>(key_offsets_[i + 1] - key_offsets_[i])};
}

bool Corpus::shares_author_key(PubIndex a, PubIndex b) const {
    const auto ka = author_keys_of(a);
    const auto kb = author_keys_of(b);
    std::size_t ia = 0, ib = 0;
    while (ia < ka.size() && ib < kb.size()) {
        if (ka[ia] == kb[ib]) return true;
        if (ka[ia] < kb[ib]) ++ia; else ++ib;
    }
    return false;
}

Corpus Corpus::build(std::vector<Publication> publications, std::vector<CitationEdge> edges,
                     std::vector<Patent> patents, const BuildOptions& options) {
    // Resolve edge endpoints to indexes; unknown ids are dropped or fatal.
    std::unordered_map<std::string_view, PubIndex> lookup;
    lookup.reserve(publications.size() * 2);
    for (PubIndex i = 0; i < publications.size(); ++i) lookup[publications[i].id] = i;

    std::vector<std::pair<PubIndex, PubIndex>> indexed;
    indexed.reserve(edges.size());
    std::size_t dropped = 0;
    for (const auto& e : edges) {
        const auto c = lookup.find(e.citing_id);
        const auto d = lookup.find(e.cited_id);
        if (c == lookup.end() || d == lookup.end()) {
            if (options.strict)
                throw std::runtime_error("dangling citation endpoint: " +
                                         (c == lookup.end() ? e.citing_id : e.cited_id));
            ++dropped;
            continue;
        }
        indexed.emplace_back(c->second, d->second);
    }

    Corpus corpus = build_indexed(std::move(publications), std::move(indexed),
                                  std::move(patents), options);
    corpus.stats_.dropped_edges += dropped;
    if (dropped)
        warn(corpus.stats_, "dropped " + std::to_string(dropped) +
                                " citation edges with unknown endpoints");
    return corpus;
}

Corpus Corpus::build_indexed(std::vector<Publication> publications,
                             std::vector<std::pair<PubIndex, PubIndex>> edges,
                             std::vector<Patent> patents, const BuildOptions& options) {
    Corpus c;
    c.field_table_ = options.field_table ? options.field_table : &bundled_field_table();

    const std::size_t n_input = publications.size();

    // Canonical publication order (by id) makes ingestion order-independent;
    // edge endpoints are remapped through the sort permutation.
    std::vector<PubIndex> order(n_input);
    for (PubIndex i = 0; i < n_input; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&publications](PubIndex a, PubIndex b) {
        return publications[a].id < publications[b].id;
    });
    std::vector<PubIndex> old_to_new(n_input);
    c.publications_.reserve(n_input);
    for (PubIndex new_i = 0; new_i < n_input; ++new_i) {
        old_to_new[order[new_i]] = new_i;
        c.publications_.push_back(std::move(publications[order[new_i]]));
    }

    for (PubIndex i = 0; i < c.publications_.size(); ++i) {
        if (options.enforce && i > 0 && c.publications_[i].id == c.publications_[i - 1].id)
            throw std::runtime_error("duplicate publication id: " + c.publications_[i].id);
        c.pub_by_id_.emplace(c.publications_[i].id, i);
    }

    // Drop or reject invalid edges, remap to sorted order, then dedupe.
    std::vector<std::pair<PubIndex, PubIndex>> kept;
    kept.reserve(edges.size());
    std::size_t dropped = 0;
    for (const auto& [citing, cited] : edges) {
        if (citing >= n_input || cited >= n_input) {
            if (options.strict) throw std::runtime_error("citation edge index out of range");
            ++dropped;
            continue;
        }
        if (citing == cited) {
            if (options.strict)
                throw std::runtime_error("self-loop citation on " +
                                         c.publications_[old_to_new[citing]].id);
            ++dropped;
            continue;
        }
        kept.emplace_back(old_to_new[citing], old_to_new[cited]);
    }
    std::sort(kept.begin(), kept.end());
    const auto last = std::unique(kept.begin(), kept.end());
    dropped += static_cast<std::size_t>(kept.end() - last);
    kept.erase(last, kept.end());

    c.edge_citing_.reserve(kept.size());
    c.edge_cited_.reserve(kept.size());
    for (const auto& [citing, cited] : kept) {
        c.edge_citing_.push_back(citing);
        c.edge_cited_.push_back(cited);
    }

    const std::size_t n = c.publications_.size();

    c.out_offsets_ = csr_offsets(n, c.edge_citing_);
    c.out_targets_.resize(kept.size());
    {
        auto cursor = c.out_offsets_;
        for (std::size_t e = 0; e < kept.size(); ++e)
            c.out_targets_[cursor[kept[e].first]++] = kept[e].second;
    }
    c.in_offsets_ = csr_offsets(n, c.edge_cited_);
    c.in_targets_.resize(kept.size());
    {
        auto cursor = c.in_offsets_;
        for (std::size_t e = 0; e < kept.size(); ++e)
            c.in_targets_[cursor[kept[e].second]++] = kept[e].first;
    }
    // Neighbor lists sorted for deterministic traversal and binary search.
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(c.out_targets_.begin() + c.out_offsets_[i],
                  c.out_targets_.begin() + c.out_offsets_[i + 1]);
        std::sort(c.in_targets_.begin() + c.in_offsets_[i],
                  c.in_targets_.begin() + c.in_offsets_[i + 1]);
    }

    // Year index.
    if (n > 0) {
        c.min_year_ = c.publications_[0].year;
        c.max_year_ = c.publications_[0].year;
        for (const auto& p : c.publications_) {
            c.min_year_ = std::min(c.min_year_, p.year);
            c.max_year_ = std::max(c.max_year_, p.year);
        }
        const std::size_t n_years = static_cast<std::size_t>(c.max_year_ - c.min_year_ + 1);
        std::vector<std::uint64_t> year_rows;
        year_rows.reserve(n);
        for (const auto& p : c.publications_)
            year_rows.push_back(static_cast<std::uint64_t>(p.year - c.min_year_));
        c.year_offsets_.assign(n_years + 1, 0);
        for (const auto y : year_rows) ++c.year_offsets_[y + 1];
        for (std::size_t i = 1; i <= n_years; ++i) c.year_offsets_[i] += c.year_offsets_[i - 1];
        c.year_members_.resize(n);
        auto cursor = c.year_offsets_;
        for (PubIndex i = 0; i < n; ++i) c.year_members_[cursor[year_rows[i]]++] = i;
    }

    // Patents: canonical order, id uniqueness, NPL handling.
    std::sort(patents.begin(), patents.end(),
              [](const Patent& a, const Patent& b) { return a.family_id < b.family_id; });
    std::unordered_set<std::string_view> member_ids;
    std::vector<std::pair<PubIndex, FamilyIndex>> npl;
    for (auto& fam : patents) {
        if (options.enforce) {
            if (fam.patent_ids.empty())
                throw std::runtime_error("patent family without member patents: " +
                                         fam.family_id);
            for (const auto& pid : fam.patent_ids)
                if (!member_ids.insert(pid).second)
                    throw std::runtime_error("patent id in more than one family: " + pid);
        }
        std::vector<std::string> resolved;
        resolved.reserve(fam.npl_cited_ids.size());
        for (const auto& cited : fam.npl_cited_ids) {
            const auto it = c.pub_by_id_.find(cited);
            if (it == c.pub_by_id_.end()) {
                if (options.strict)
                    throw std::runtime_error("patent " + fam.family_id +
                                             " cites unknown publication " + cited);
                ++c.stats_.dropped_npl_refs;
                continue;
            }
            resolved.push_back(cited);
        }
        std::sort(resolved.begin(), resolved.end());
        resolved.erase(std::unique(resolved.begin(), resolved.end()), resolved.end());
        if (options.enforce) fam.npl_cited_ids = std::move(resolved);
        // Without enforcement the raw (possibly dangling) list is kept so
        // that validate() can report it.
    }
    c.patents_ = std::move(patents);
    for (FamilyIndex f = 0; f < c.patents_.size(); ++f) {
        if (options.enforce && f > 0 &&
            c.patents_[f].family_id == c.patents_[f - 1].family_id)
            throw std::runtime_error("duplicate patent family id: " + c.patents_[f].family_id);
        c.fam_by_id_.emplace(c.patents_[f].family_id, f);
        for (const auto& cited : c.patents_[f].npl_cited_ids) {
            const auto it = c.pub_by_id_.find(cited);
            if (it != c.pub_by_id_.end()) npl.emplace_back(it->second, f);
        }
    }
    std::sort(npl.begin(), npl.end());
    npl.erase(std::unique(npl.begin(), npl.end()), npl.end());
    c.fam_offsets_.assign(n + 1, 0);
    for (const auto& [pub, fam] : npl) ++c.fam_offsets_[pub + 1];
    for (std::size_t i = 1; i <= n; ++i) c.fam_offsets_[i] += c.fam_offsets_[i - 1];
    c.fam_targets_.resize(npl.size());
    {
        auto cursor = c.fam_offsets_;
        for (const auto& [pub, fam] : npl) c.fam_targets_[cursor[pub]++] = fam;
    }

    // Author-name keys for self-citation tests.
    c.key_offsets_.assign(n + 1, 0);
    std::vector<std::uint64_t> keys;
    for (PubIndex i = 0; i < n; ++i) {
        std::vector<std::uint64_t> mine;
        for (const auto& author : c.publications_[i].authors) {
            if (options.enforce && author.empty())
                throw std::runtime_error("empty author name on " + c.publications_[i].id);
            if (const auto key = try_normalize_name(author)) mine.push_back(key->hash());
        }
        std::sort(mine.begin(), mine.end());
        mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
        c.key_offsets_[i + 1] = c.key_offsets_[i] + mine.size();
        keys.insert(keys.end(), mine.begin(), mine.end());
    }
    c.key_values_ = std::move(keys);

    c.stats_.publications = n;
    c.stats_.citation_edges = c.edge_citing_.size();
    c.stats_.patent_families = c.patents_.size();
    c.stats_.dropped_edges += dropped;
    return c;
}

std::uint64_t Corpus::fingerprint() const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const auto mix_str = [&h](std::string_view s) {
        h = detail::fnv1a(s, h);
        h = detail::fnv1a_u64(s.size(), h);
    };
    const auto mix_int = [&h](std::int64_t v) {
        h = detail::fnv1a_u64(static_cast<std::uint64_t>(v), h);
    };
    for (const auto& p : publications_) {
        mix_str(p.id);
        mix_int(p.year);
        mix_str(p.title);
        mix_str(p.abstract);
        for (const auto& a : p.authors) mix_str(a);
        for (const auto f : p.field_codes) mix_int(f);
        for (const auto& cc : p.country_codes) mix_str(cc);
        mix_str(p.journal);
    }
    for (std::size_t e = 0; e < edge_citing_.size(); ++e) {
        mix_str(publications_[edge_citing_[e]].id);
        mix_str(publications_[edge_cited_[e]].id);
    }
    for (const auto& fam : patents_) {
        mix_str(fam.family_id);
        for (const auto& pid : fam.patent_ids) mix_str(pid);
        mix_str(fam.title);
        for (const auto& inv : fam.inventors) mix_str(inv);
        for (const auto& ipc : fam.ipc_codes) mix_str(ipc);
        mix_int(fam.application_year);
        for (const auto& cited : fam.npl_cited_ids) mix_str(cited);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

using nlohmann::json;

json parse_json_line(const detail::LineReader& reader, std::string_view line) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object())
        throw std::runtime_error(reader.path() + ":" + std::to_string(reader.line_number()) +
                                 ": malformed record");
    return record;
}

std::string require_string(const json& record, const char* key,
                           const detail::LineReader& reader) {
    const auto it = record.find(key);
    if (it == record.end() || !it->is_string())
        throw std::runtime_error(reader.path() + ":" + std::to_string(reader.line_number()) +
                                 ": missing or non-string \"" + key + "\"");
    return it->get<std::string>();
}

int require_int(const json& record, const char* key, const detail::LineReader& reader) {
    const auto it = record.find(key);
    if (it == record.end() || !it->is_number_integer())
        throw std::runtime_error(reader.path() + ":" + std::to_string(reader.line_number()) +
                                 ": missing or non-integer \"" + key + "\"");
    return it->get<int>();
}

std::vector<std::string> string_list(const json& record, const char* key,
                                     const detail::LineReader& reader, bool required) {
    const auto it = record.find(key);
    if (it == record.end()) {
        if (required)
            throw std::runtime_error(reader.path() + ":" +
                                     std::to_string(reader.line_number()) + ": missing \"" +
                                     key + "\"");
        return {};
    }
    if (!it->is_array())
        throw std::runtime_error(reader.path() + ":" + std::to_string(reader.line_number()) +
                                 ": \"" + std::string(key) + "\" must be an array");
    std::vector<std::string> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_string())
            throw std::runtime_error(reader.path() + ":" +
                                     std::to_string(reader.line_number()) + ": \"" +
                                     std::string(key) + "\" must contain strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::vector<Publication> read_publications(const std::string& path, const LoadOptions& options,
                                           LoadStats& stats) {
    std::vector<Publication> pubs;
    detail::LineReader reader(path);
    std::string_view line;
    while (reader.next(line)) {
        if (line.empty()) continue;
        const json record = parse_json_line(reader, line);
        Publication p;
        p.id = require_string(record, "id", reader);
        p.year = require_int(record, "year", reader);
        p.title = require_string(record, "title", reader);
        if (const auto it = record.find("abstract"); it != record.end() && it->is_string())
            p.abstract = it->get<std::string>();
        p.authors = string_list(record, "authors", reader, true);
        if (const auto it = record.find("field_codes"); it != record.end()) {
            if (!it->is_array())
                throw std::runtime_error(reader.path() + ":" +
                                         std::to_string(reader.line_number()) +
                                         ": \"field_codes\" must be an array");
            for (const auto& v : *it) p.field_codes.push_back(v.get<int>());
        }
        p.country_codes = string_list(record, "country_codes", reader, false);
        if (const auto it = record.find("journal"); it != record.end() && it->is_string())
            p.journal = it->get<std::string>();
        if (const auto it = record.find("doc_type"); it != record.end() && it->is_string())
            p.doc_type = it->get<std::string>();

        for (const auto& a : p.authors)
            if (a.empty())
                throw std::runtime_error(reader.path() + ":" +
                                         std::to_string(reader.line_number()) +
                                         ": empty author string on " + p.id);

        if (!options.year_range.contains(p.year)) {
            if (options.strict)
                throw std::runtime_error(reader.path() + ":" +
                                         std::to_string(reader.line_number()) + ": year " +
                                         std::to_string(p.year) + " outside corpus range");
            ++stats.dropped_publications;
            warn(stats, "dropped " + p.id + ": year " + std::to_string(p.year) +
                            " outside corpus range");
            continue;
        }
        if (!p.doc_type.empty() &&
            std::find(options.exclude_doc_types.begin(), options.exclude_doc_types.end(),
                      p.doc_type) != options.exclude_doc_types.end()) {
            ++stats.dropped_publications;
            continue;
        }
        pubs.push_back(std::move(p));
    }
    return pubs;
}

bool looks_like_csv(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return true;
    detail::LineReader probe(path);
    std::string_view first;
    if (!probe.next(first)) return false;
    return first.rfind("citing_id,", 0) == 0;
}

std::vector<CitationEdge> read_citations(const std::string& path, LoadStats& stats) {
    std::vector<CitationEdge> edges;
    detail::LineReader reader(path);
    std::string_view line;
    if (looks_like_csv(path)) {
        bool first = true;
        while (reader.next(line)) {
            if (line.empty()) continue;
            if (first) {
                first = false;
                if (line == "citing_id,cited_id") continue;
            }
            const auto comma = line.find(',');
            if (comma == std::string_view::npos || comma == 0 || comma + 1 == line.size())
                throw std::runtime_error(reader.path() + ":" +
                                         std::to_string(reader.line_number()) +
                                         ": expected citing_id,cited_id");
            edges.push_back({std::string(line.substr(0, comma)),
                             std::string(line.substr(comma + 1))});
        }
    } else {
        while (reader.next(line)) {
            if (line.empty()) continue;
            const json record = parse_json_line(reader, line);
            edges.push_back({require_string(record, "citing_id", reader),
                             require_string(record, "cited_id", reader)});
        }
    }
    (void)stats;
    return edges;
}

std::vector<Patent> read_patents(const std::string& path, LoadStats& stats) {
    std::vector<Patent> patents;
    detail::LineReader reader(path);
    std::string_view line;
    while (reader.next(line)) {
        if (line.empty()) continue;
        const json record = parse_json_line(reader, line);
        Patent fam;
        fam.family_id = require_string(record, "family_id", reader);
        fam.patent_ids = string_list(record, "patent_ids", reader, true);
        if (fam.patent_ids.empty())
            throw std::runtime_error(reader.path() + ":" +
                                     std::to_string(reader.line_number()) +
                                     ": patent family needs at least one patent id");
        fam.title = require_string(record, "title", reader);
        fam.inventors = string_list(record, "inventors", reader, false);
        fam.ipc_codes = string_list(record, "ipc_codes", reader, false);
        fam.application_year = require_int(record, "application_year", reader);
        fam.npl_cited_ids = string_list(record, "npl_cited_ids", reader, false);
        patents.push_back(std::move(fam));
    }
    (void)stats;
    return patents;
}

}  // namespace

Corpus load_corpus(const std::string& publications_path, const std::string& citations_path,
                   const std::string& patents_path, const LoadOptions& options) {
    LoadStats stats;
    std::vector<Publication> pubs = read_publications(publications_path, options, stats);
    // Empty paths mean "no such records"; a corpus without patents is valid.
    std::vector<CitationEdge> edges =
        citations_path.empty() ? std::vector<CitationEdge>{} : read_citations(citations_path, stats);
    std::vector<Patent> patents =
        patents_path.empty() ? std::vector<Patent>{} : read_patents(patents_path, stats);

    BuildOptions build_options;
    build_options.enforce = true;
    build_options.strict = options.strict;
    build_options.field_table = options.field_table;
    Corpus corpus = Corpus::build(std::move(pubs), std::move(edges), std::move(patents),
                                  build_options);

    // Merge reader-side stats into the corpus stats.
    corpus.stats_.dropped_publications += stats.dropped_publications;
    for (auto& w : stats.warnings) warn(corpus.stats_, std::move(w));
    return corpus;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const Corpus& corpus) {
    ValidationReport report;
    const auto add = [&report](Violation::Kind kind, std::string subject,
                               std::string message) {
        report.violations.push_back({kind, std::move(subject), std::move(message)});
    };

    // Publications are stored sorted by id, so duplicates are adjacent.
    for (PubIndex i = 1; i < corpus.publication_count(); ++i)
        if (corpus.publication(i).id == corpus.publication(i - 1).id)
            add(Violation::Kind::duplicate_publication, corpus.publication(i).id,
                "duplicate publication id " + corpus.publication(i).id);

    for (PubIndex i = 0; i < corpus.publication_count(); ++i) {
        const Publication& p = corpus.publication(i);
        for (const auto& a : p.authors)
            if (a.empty())
                add(Violation::Kind::empty_author, p.id, "empty author string on " + p.id);
    }

    for (FamilyIndex f = 0; f < corpus.family_count(); ++f) {
        const Patent& fam = corpus.family(f);
        if (f > 0 && fam.family_id == corpus.family(f - 1).family_id)
            add(Violation::Kind::duplicate_family, fam.family_id,
                "duplicate patent family id " + fam.family_id);
        for (const auto& cited : fam.npl_cited_ids) {
            const auto pub = corpus.find_publication(cited);
            if (!pub) {
                add(Violation::Kind::npl_dangling, fam.family_id,
                    "patent family " + fam.family_id + " cites unknown publication " + cited);
            } else if (corpus.publication(*pub).year > fam.application_year) {
                add(Violation::Kind::npl_before_publication, fam.family_id,
                    "patent family " + fam.family_id + " (application year " +
                        std::to_string(fam.application_year) + ") cites " + cited +
                        " published " + std::to_string(corpus.publication(*pub).year));
            }
        }
    }
    // Member patent ids must be disjoint across families.
    {
        std::unordered_map<std::string_view, std::string_view> seen;
        for (FamilyIndex f = 0; f < corpus.family_count(); ++f)
            for (const auto& pid : corpus.family(f).patent_ids) {
                const auto [it, inserted] =
                    seen.emplace(pid, corpus.family(f).family_id);
                if (!inserted && it->second != corpus.family(f).family_id)
                    add(Violation::Kind::duplicate_patent_id, pid,
                        "patent id " + pid + " appears in families " +
                            std::string(it->second) + " and " + corpus.family(f).family_id);
            }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Citation series

YearSeries citation_series(const Corpus& corpus, PubIndex pub, bool exclude_self_citations,
                           YearRange range) {
    if (pub >= corpus.publication_count())
        throw std::invalid_argument("publication index out of range");
    if (range.empty()) throw std::invalid_argument("empty year range");

    YearSeries series(range.first, range.last);
    for (const PubIndex citer : corpus.citers_of(pub)) {
        if (exclude_self_citations && corpus.shares_author_key(citer, pub)) continue;
        series.add(corpus.publication(citer).year, 1);
    }
    return series;
}

YearSeries citation_series(const Corpus& corpus, std::string_view pub_id,
                           bool exclude_self_citations, YearRange range) {
    const auto pub = corpus.find_publication(pub_id);
    if (!pub) throw std::invalid_argument("unknown publication id: " + std::string(pub_id));
    return citation_series(corpus, *pub, exclude_self_citations, range);
}

}  // namespace sbeauty
