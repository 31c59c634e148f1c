#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sbeauty/corpus.hpp"
#include "sbeauty/sbdetect.hpp"

namespace sbeauty {

/// A Sleeping Beauty cited by at least one patent family.
struct SnprRecord {
    std::string pub_id;
    int publication_year = 0;
    std::vector<std::string> citing_family_ids;  // sorted, nonempty
    std::size_t n_families = 0;
    int first_citation_year = 0;  // earliest application year among families
    int pcy = 0;                  // first_citation_year - publication_year
};

struct CohortRow {
    std::string period_label;
    std::size_t n = 0;
    std::optional<double> mean_pcy;
    std::optional<double> sd_pcy;       // sample sd; absent when n < 2
    std::optional<int> most_extreme_year;  // Y: first-citation year of the
                                           // max-pcy record, ties -> latest
};

struct RepresentationRow {
    std::string key;          // field name or country code
    std::size_t n_snpr = 0;   // unique SB-SNPR publications carrying the key
    double share_snpr = 0.0;  // percent of all SB-SNPRs
    double share_sb = 0.0;    // percent of all SBs
    double share_pubs = 0.0;  // percent of all in-scope publications
    std::optional<double> ratio_snpr_vs_pubs;
    std::optional<double> ratio_sb_vs_pubs;
};

enum class RepresentationKey { field, country };

/// Links SBs to citing patent families. Families are counted once however
/// many member patents they hold; families whose application year precedes
/// the publication (data noise) are ignored. SBs with no remaining citing
/// family are absent from the result. Ordered by pub_id.
std::vector<SnprRecord> link_snprs(const Corpus& corpus,
                                   const std::vector<SBRecord>& sb_records);

/// Per publication-year cohort: N, mean pcy, sample sd and the most extreme
/// year Y. Buckets are bucket_years wide, anchored at range.first; empty
/// buckets are emitted with N = 0 and absent stats.
std::vector<CohortRow> cohort_lag_stats(const std::vector<SnprRecord>& snprs,
                                        YearRange range, int bucket_years = 3);

/// Share of each field (or country) among SB-SNPRs, SBs and all in-scope
/// publications, over unique-publication denominators. A publication with k
/// fields contributes to k rows. Rows ordered by share_snpr descending.
/// main_field_scope restricts the publication universe ("all" or a main
/// field name); throws std::invalid_argument for an unknown scope.
std::vector<RepresentationRow> representation(const Corpus& corpus,
                                              const std::vector<SBRecord>& sb_records,
                                              const std::vector<SnprRecord>& snprs,
                                              RepresentationKey key,
                                              const std::string& main_field_scope = "all");

struct BucketCounts {
    std::vector<std::string> labels;
    std::vector<std::int64_t> counts;
    std::vector<double> normalized;  // empty unless normalization requested
};

/// Counts publication years per bucket. When normalize_base_label is given,
/// also emits 100 * count / base-bucket count; a zero base is an error.
BucketCounts count_series(const std::vector<int>& publication_years, YearRange range,
                          int bucket_years = 3,
                          const std::optional<std::string>& normalize_base_label = {});

struct LagAwakeScatter {
    std::vector<std::pair<int, std::int64_t>> points;  // (pcy, Ca) per SB-SNPR
    double r = 0.0;
};

/// Pairs each SB-SNPR's pcy with the SB's total awake-window citations and
/// computes Pearson r. Throws std::invalid_argument when fewer than 3 pairs
/// exist or an snpr lacks a matching SBRecord; degenerate variance surfaces
/// as std::domain_error from the correlation.
LagAwakeScatter lag_vs_awake_scatter(const std::vector<SnprRecord>& snprs,
                                     const std::vector<SBRecord>& sb_records);

}  // namespace sbeauty
