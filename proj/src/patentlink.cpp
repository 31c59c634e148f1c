#include "sbeauty/patentlink.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sbeauty {

std::vector<SnprRecord> link_snprs(const Corpus& corpus,
                                   const std::vector<SBRecord>& sb_records) {
    std::vector<SnprRecord> out;
    for (const auto& sb : sb_records) {
        const auto pub = corpus.find_publication(sb.pub_id);
        if (!pub) continue;
        const int pub_year = corpus.publication(*pub).year;

        SnprRecord rec;
        rec.pub_id = sb.pub_id;
        rec.publication_year = pub_year;
        int first_year = 0;
        for (const FamilyIndex f : corpus.citing_families_of(*pub)) {
            const Patent& fam = corpus.family(f);
            // A family "citing" an SB from before the SB existed is data
            // noise; it neither counts nor contributes a first-citation year.
            if (fam.application_year < pub_year) continue;
            rec.citing_family_ids.push_back(fam.family_id);
            if (rec.citing_family_ids.size() == 1 || fam.application_year < first_year)
                first_year = fam.application_year;
        }
        if (rec.citing_family_ids.empty()) continue;
        std::sort(rec.citing_family_ids.begin(), rec.citing_family_ids.end());
        rec.n_families = rec.citing_family_ids.size();
        rec.first_citation_year = first_year;
        rec.pcy = first_year - pub_year;
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(),
              [](const SnprRecord& a, const SnprRecord& b) { return a.pub_id < b.pub_id; });
    return out;
}

std::vector<CohortRow> cohort_lag_stats(const std::vector<SnprRecord>& snprs, YearRange range,
                                        int bucket_years) {
    if (bucket_years < 1) throw std::invalid_argument("bucket size must be >= 1 year");
    if (range.empty()) throw std::invalid_argument("empty year range");

    std::vector<CohortRow> rows;
    for (int start = range.first; start <= range.last; start += bucket_years) {
        const YearRange bucket{start, std::min(start + bucket_years - 1, range.last)};
        CohortRow row;
        row.period_label = bucket.label();

        double sum = 0.0;
        int max_pcy = -1;
        int extreme_year = 0;
        std::vector<double> values;
        for (const auto& s : snprs) {
            if (!bucket.contains(s.publication_year)) continue;
            values.push_back(static_cast<double>(s.pcy));
            sum += s.pcy;
            // Y: first-citation year of the longest-lag record; ties resolve
            // to the latest year.
            if (s.pcy > max_pcy ||
                (s.pcy == max_pcy && s.first_citation_year > extreme_year)) {
                max_pcy = s.pcy;
                extreme_year = s.first_citation_year;
            }
        }
        row.n = values.size();
        if (!values.empty()) {
            row.mean_pcy = sum / static_cast<double>(values.size());
            row.most_extreme_year = extreme_year;
            if (values.size() >= 2) {
                double ss = 0.0;
                for (const double v : values) {
                    const double d = v - *row.mean_pcy;
                    ss += d * d;
                }
                row.sd_pcy = std::sqrt(ss / static_cast<double>(values.size() - 1));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

// Key incidence over a set of publications: which unique pubs carry which key.
std::unordered_map<std::string, std::size_t> key_incidence(
    const Corpus& corpus, const std::vector<PubIndex>& pubs, RepresentationKey key) {
    std::unordered_map<std::string, std::size_t> counts;
    for (const PubIndex p : pubs) {
        const Publication& pub = corpus.publication(p);
        std::set<std::string> keys;  // dedupe within one publication
        if (key == RepresentationKey::field) {
            for (const int code : pub.field_codes)
                keys.insert(corpus.field_table().name_of(code));
        } else {
            for (const auto& cc : pub.country_codes) keys.insert(cc);
        }
        for (const auto& k : keys) ++counts[k];
    }
    return counts;
}

std::vector<PubIndex> resolve_ids(const Corpus& corpus, const std::vector<std::string>& ids) {
    std::vector<PubIndex> out;
    out.reserve(ids.size());
    for (const auto& id : ids)
        if (const auto p = corpus.find_publication(id)) out.push_back(*p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool pub_in_scope(const Corpus& corpus, const Publication& pub, const std::string& scope) {
    if (scope == "all") return true;
    for (const int code : pub.field_codes)
        if (corpus.field_table().code_in_main_field(code, scope)) return true;
    return false;
}

}  // namespace

std::vector<RepresentationRow> representation(const Corpus& corpus,
                                              const std::vector<SBRecord>& sb_records,
                                              const std::vector<SnprRecord>& snprs,
                                              RepresentationKey key,
                                              const std::string& main_field_scope) {
    if (main_field_scope != "all" && !corpus.field_table().is_main_field(main_field_scope))
        throw std::invalid_argument("unknown main field scope: " + main_field_scope);

    std::vector<std::string> sb_ids;
    sb_ids.reserve(sb_records.size());
    for (const auto& r : sb_records) sb_ids.push_back(r.pub_id);
    std::vector<std::string> snpr_ids;
    snpr_ids.reserve(snprs.size());
    for (const auto& s : snprs) snpr_ids.push_back(s.pub_id);

    const auto in_scope = [&](std::vector<PubIndex> pubs) {
        std::vector<PubIndex> kept;
        kept.reserve(pubs.size());
        for (const PubIndex p : pubs)
            if (pub_in_scope(corpus, corpus.publication(p), main_field_scope))
                kept.push_back(p);
        return kept;
    };

    const std::vector<PubIndex> snpr_pubs = in_scope(resolve_ids(corpus, snpr_ids));
    const std::vector<PubIndex> sb_pubs = in_scope(resolve_ids(corpus, sb_ids));
    std::vector<PubIndex> all_pubs;
    for (PubIndex p = 0; p < corpus.publication_count(); ++p)
        if (pub_in_scope(corpus, corpus.publication(p), main_field_scope)) all_pubs.push_back(p);

    const auto snpr_counts = key_incidence(corpus, snpr_pubs, key);
    const auto sb_counts = key_incidence(corpus, sb_pubs, key);
    const auto all_counts = key_incidence(corpus, all_pubs, key);

    const auto share = [](std::size_t count, std::size_t denom) {
        return denom == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(denom);
    };

    std::vector<RepresentationRow> rows;
    for (const auto& [k, n_snpr] : snpr_counts) {
        RepresentationRow row;
        row.key = k;
        row.n_snpr = n_snpr;
        row.share_snpr = share(n_snpr, snpr_pubs.size());
        const auto sb_it = sb_counts.find(k);
        row.share_sb = share(sb_it == sb_counts.end() ? 0 : sb_it->second, sb_pubs.size());
        const auto all_it = all_counts.find(k);
        row.share_pubs =
            share(all_it == all_counts.end() ? 0 : all_it->second, all_pubs.size());
        if (row.share_pubs > 0.0) {
            row.ratio_snpr_vs_pubs = row.share_snpr / row.share_pubs;
            row.ratio_sb_vs_pubs = row.share_sb / row.share_pubs;
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const RepresentationRow& a,
                                           const RepresentationRow& b) {
        if (a.share_snpr != b.share_snpr) return a.share_snpr > b.share_snpr;
        return a.key < b.key;
    });
    return rows;
}

BucketCounts count_series(const std::vector<int>& publication_years, YearRange range,
                          int bucket_years,
                          const std::optional<std::string>& normalize_base_label) {
    if (bucket_years < 1) throw std::invalid_argument("bucket size must be >= 1 year");
    if (range.empty()) throw std::invalid_argument("empty year range");

    BucketCounts out;
    for (int start = range.first; start <= range.last; start += bucket_years) {
        const YearRange bucket{start, std::min(start + bucket_years - 1, range.last)};
        std::int64_t count = 0;
        for (const int y : publication_years)
            if (bucket.contains(y)) ++count;
        out.labels.push_back(bucket.label());
        out.counts.push_back(count);
    }
    if (normalize_base_label) {
        const auto it = std::find(out.labels.begin(), out.labels.end(), *normalize_base_label);
        if (it == out.labels.end())
            throw std::invalid_argument("normalization base bucket not found: " +
                                        *normalize_base_label);
        const std::int64_t base = out.counts[static_cast<std::size_t>(it - out.labels.begin())];
        if (base == 0)
            throw std::invalid_argument("normalization base bucket has zero count");
        out.normalized.reserve(out.counts.size());
        for (const auto c : out.counts)
            out.normalized.push_back(100.0 * static_cast<double>(c) /
                                     static_cast<double>(base));
    }
    return out;
}

LagAwakeScatter lag_vs_awake_scatter(const std::vector<SnprRecord>& snprs,
                                     const std::vector<SBRecord>& sb_records) {
    std::unordered_map<std::string, const SBRecord*> by_id;
    for (const auto& r : sb_records) by_id[r.pub_id] = &r;

    LagAwakeScatter out;
    for (const auto& s : snprs) {
        const auto it = by_id.find(s.pub_id);
        if (it == by_id.end())
            throw std::invalid_argument("SB-SNPR without a matching SB record: " + s.pub_id);
        out.points.emplace_back(s.pcy, it->second->total_awake_citations);
    }
    if (out.points.size() < 3)
        throw std::invalid_argument("scatter needs at least 3 SB-SNPRs");

    std::vector<double> xs, ys;
    xs.reserve(out.points.size());
    ys.reserve(out.points.size());
    for (const auto& [pcy, ca] : out.points) {
        xs.push_back(static_cast<double>(pcy));
        ys.push_back(static_cast<double>(ca));
    }
    out.r = pearson_correlation(xs, ys);
    return out;
}

}  // namespace sbeauty
