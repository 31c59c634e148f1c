#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sbeauty/field_table.hpp"
#include "sbeauty/year_series.hpp"

namespace sbeauty {

using PubIndex = std::uint32_t;
using FamilyIndex = std::uint32_t;

struct Publication {
    std::string id;
    int year = 0;
    std::string title;
    std::string abstract;                 // empty when absent
    std::vector<std::string> authors;     // raw name strings
    std::vector<int> field_codes;
    std::vector<std::string> country_codes;
    std::string journal;                  // empty when absent
    std::string doc_type;                 // optional; used by the ingest filter
};

struct CitationEdge {
    std::string citing_id;
    std::string cited_id;
};

/// One patent family. application_year is the earliest application year
/// among member patents; member patents are listed in patent_ids.
struct Patent {
    std::string family_id;
    std::vector<std::string> patent_ids;
    std::string title;
    std::vector<std::string> inventors;
    std::vector<std::string> ipc_codes;
    int application_year = 0;
    std::vector<std::string> npl_cited_ids;
};

struct LoadOptions {
    bool strict = false;                      // dangling refs fatal instead of dropped
    YearRange year_range{1980, 2030};         // acceptable publication years
    std::vector<std::string> exclude_doc_types;  // ingestion filter, default off
    const FieldTable* field_table = nullptr;  // defaults to the bundled table
};

struct LoadStats {
    std::size_t publications = 0;
    std::size_t citation_edges = 0;
    std::size_t patent_families = 0;
    std::size_t dropped_publications = 0;   // year filter / doc-type filter
    std::size_t dropped_edges = 0;          // dangling, self-loop, duplicate
    std::size_t dropped_npl_refs = 0;       // dangling patent NPL references
    std::vector<std::string> warnings;      // capped; see warning_cap
};

struct Violation {
    enum class Kind {
        duplicate_publication,
        duplicate_family,
        duplicate_patent_id,
        dangling_citation,
        self_loop,
        duplicate_edge,
        year_out_of_range,
        empty_author,
        npl_dangling,
        npl_before_publication,
    };
    Kind kind;
    std::string subject;   // the offending id
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool clean() const { return violations.empty(); }
};

/// Options for building a corpus from in-memory records.
struct BuildOptions {
    bool enforce = true;   // throw on broken invariants instead of keeping them
    bool strict = false;   // dangling refs fatal instead of dropped
    const FieldTable* field_table = nullptr;
};

/// Immutable, index-backed view of a publication/citation/patent corpus.
/// Analyses only ever read from it, so concurrent readers are safe.
class Corpus {
public:
    Corpus() = default;
    // Id lookup views point into owned storage: movable, not copyable.
    Corpus(const Corpus&) = delete;
    Corpus& operator=(const Corpus&) = delete;
    Corpus(Corpus&&) = default;
    Corpus& operator=(Corpus&&) = default;

    static Corpus build(std::vector<Publication> publications,
                        std::vector<CitationEdge> edges,
                        std::vector<Patent> patents,
                        const BuildOptions& options = {});

    /// Index-valued edge variant; used by the synthetic generator to avoid
    /// materializing millions of id strings.
    static Corpus build_indexed(std::vector<Publication> publications,
                                std::vector<std::pair<PubIndex, PubIndex>> edges,
                                std::vector<Patent> patents,
                                const BuildOptions& options = {});

    std::size_t publication_count() const { return publications_.size(); }
    std::size_t edge_count() const { return edge_citing_.size(); }
    std::size_t family_count() const { return patents_.size(); }

    const Publication& publication(PubIndex i) const { return publications_[i]; }
    const Patent& family(FamilyIndex i) const { return patents_[i]; }

    std::optional<PubIndex> find_publication(std::string_view id) const;
    std::optional<FamilyIndex> find_family(std::string_view family_id) const;

    /// Publications citing `i` (cited -> citing adjacency).
    std::span<const PubIndex> citers_of(PubIndex i) const;
    /// Publications cited by `i` (citing -> cited adjacency).
    std::span<const PubIndex> references_of(PubIndex i) const;
    /// Patent families citing publication `i` through their NPL references.
    std::span<const FamilyIndex> citing_families_of(PubIndex i) const;
    /// Publications published in `year`.
    std::span<const PubIndex> publications_in_year(int year) const;

    int min_year() const { return min_year_; }
    int max_year() const { return max_year_; }

    /// Sorted unique author-name key hashes of publication `i`.
    std::span<const std::uint64_t> author_keys_of(PubIndex i) const;
    /// True when the two publications share at least one author name key.
    bool shares_author_key(PubIndex a, PubIndex b) const;

    const FieldTable& field_table() const { return *field_table_; }
    const LoadStats& load_stats() const { return stats_; }

    /// Content hash over publications, edges and patents in canonical order.
    std::uint64_t fingerprint() const;

private:
    friend ValidationReport validate(const Corpus&);
    friend Corpus load_corpus(const std::string&, const std::string&, const std::string&,
                              const LoadOptions&);

    std::vector<Publication> publications_;
    std::vector<Patent> patents_;

    // Canonical (citing, cited) edge list plus CSR adjacency both ways.
    std::vector<PubIndex> edge_citing_;
    std::vector<PubIndex> edge_cited_;
    std::vector<std::uint64_t> out_offsets_;
    std::vector<PubIndex> out_targets_;
    std::vector<std::uint64_t> in_offsets_;
    std::vector<PubIndex> in_targets_;

    // Publication -> citing patent families.
    std::vector<std::uint64_t> fam_offsets_;
    std::vector<FamilyIndex> fam_targets_;

    // Year index.
    int min_year_ = 0;
    int max_year_ = 0;
    std::vector<std::uint64_t> year_offsets_;
    std::vector<PubIndex> year_members_;

    // Author-name keys, flattened.
    std::vector<std::uint64_t> key_offsets_;
    std::vector<std::uint64_t> key_values_;

    std::unordered_map<std::string_view, PubIndex> pub_by_id_;
    std::unordered_map<std::string_view, FamilyIndex> fam_by_id_;

    const FieldTable* field_table_ = nullptr;
    LoadStats stats_;
};

/// Reads the three line-delimited files and builds a validated corpus.
/// citations_path may be JSONL or CSV (detected by header/extension).
Corpus load_corpus(const std::string& publications_path,
                   const std::string& citations_path,
                   const std::string& patents_path,
                   const LoadOptions& options = {});

/// Scans a corpus for invariant violations. Reporting only; never throws.
ValidationReport validate(const Corpus& corpus);

/// Annual counts of papers citing `pub`. With exclude_self_citations set,
/// citing papers that share an author name key with the cited paper are
/// skipped. Throws std::invalid_argument for an unknown id.
YearSeries citation_series(const Corpus& corpus, PubIndex pub,
                           bool exclude_self_citations, YearRange range);
YearSeries citation_series(const Corpus& corpus, std::string_view pub_id,
                           bool exclude_self_citations, YearRange range);

}  // namespace sbeauty
