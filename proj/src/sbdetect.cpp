#include "sbeauty/sbdetect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "sbeauty/patentlink.hpp"

namespace sbeauty {

std::vector<std::string> SBParams::validate() const {
    if (sleep_years < 1) throw std::invalid_argument("sleep length must be >= 1 year");
    if (awake_min_years < 1) throw std::invalid_argument("awake window must be >= 1 year");
    if (awake_min_years > awake_max_years)
        throw std::invalid_argument("awake_min must not exceed awake_max");
    if (cs_max < 0.0) throw std::invalid_argument("cs_max must be >= 0");
    if (ca_min < 0.0) throw std::invalid_argument("ca_min must be >= 0");

    std::vector<std::string> warnings;
    if (ca_min <= cs_max)
        warnings.push_back("ca_min <= cs_max: the awake threshold does not exceed the "
                           "sleep ceiling, so \"awakening\" may be indistinguishable "
                           "from sleep");
    return warnings;
}

const char* to_string(DepthLabel d) {
    switch (d) {
        case DepthLabel::coma: return "coma";
        case DepthLabel::very_deep: return "very_deep";
        case DepthLabel::deep: return "deep";
        case DepthLabel::light: return "light";
    }
    return "light";
}

DepthLabel depth_label_for(double cs) {
    if (cs == 0.0) return DepthLabel::coma;
    if (cs <= 0.5) return DepthLabel::very_deep;
    if (cs <= 1.0) return DepthLabel::deep;
    return DepthLabel::light;
}

std::optional<int> awakening_year(const YearSeries& series, int publication_year,
                                  double threshold, int persistence) {
    if (persistence < 1) throw std::invalid_argument("persistence must be >= 1");
    for (int t = std::max(publication_year + 1, series.start_year);
         t <= series.end_year(); ++t) {
        if (static_cast<double>(series.at(t)) < threshold) continue;
        // Years past the series range count as zero.
        const double mean =
            static_cast<double>(series.sum_range(t, t + persistence - 1)) / persistence;
        if (mean >= threshold) return t;
    }
    return std::nullopt;
}

std::vector<SBRecord> detect_sbs(const Corpus& corpus, const SBParams& params,
                                 YearRange pub_year_range,
                                 const std::string& main_field_filter,
                                 const DetectOptions& options) {
    params.validate();
    if (pub_year_range.empty()) throw std::invalid_argument("empty publication year range");
    const bool filter_all = main_field_filter == "all";
    if (!filter_all && !corpus.field_table().is_main_field(main_field_filter))
        throw std::invalid_argument("unknown main field: " + main_field_filter);

    std::vector<SBRecord> records;
    if (corpus.publication_count() == 0) return records;

    const int horizon = corpus.max_year();
    const bool exclude_self = !options.include_self_citations;

    for (PubIndex i = 0; i < corpus.publication_count(); ++i) {
        const Publication& pub = corpus.publication(i);
        const int y = pub.year;
        if (!pub_year_range.contains(y)) continue;
        if (!filter_all) {
            bool in_field = false;
            for (const int code : pub.field_codes)
                if (corpus.field_table().code_in_main_field(code, main_field_filter)) {
                    in_field = true;
                    break;
                }
            if (!in_field) continue;
        }

        // Awake window: a_max years after the sleep, clipped to the corpus
        // horizon; too-recent publications are skipped, not judged short.
        const int awake_start = y + params.sleep_years;
        const int available = horizon - awake_start + 1;
        const int a = std::min(params.awake_max_years, available);
        if (a < params.awake_min_years) continue;

        const YearRange sleep{y, y + params.sleep_years - 1};
        const YearRange awake{awake_start, awake_start + a - 1};

        const YearSeries series =
            citation_series(corpus, i, exclude_self, YearRange{y, horizon});
        const std::int64_t sleep_total = series.sum_range(sleep.first, sleep.last);
        const std::int64_t awake_total = series.sum_range(awake.first, awake.last);
        const double cs = static_cast<double>(sleep_total) / params.sleep_years;
        const double ca = static_cast<double>(awake_total) / a;
        if (cs > params.cs_max || ca < params.ca_min) continue;

        SBRecord rec;
        rec.pub_id = pub.id;
        rec.sleep_window = sleep;
        rec.awake_window = awake;
        rec.cs = cs;
        rec.ca = ca;
        rec.total_awake_citations = awake_total;
        rec.depth = depth_label_for(cs);
        rec.awakening_year =
            awakening_year(series, y, params.ca_min, options.awakening_persistence);
        records.push_back(std::move(rec));
    }
    // Publications are scanned in id order, so records are already canonical.
    return records;
}

namespace {

struct MeanSd {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample sd, meaningful when n >= 2
};

MeanSd mean_and_sample_sd(const std::vector<double>& values) {
    MeanSd out;
    out.n = values.size();
    if (out.n == 0) return out;
    double sum = 0.0;
    for (const double v : values) sum += v;
    out.mean = sum / static_cast<double>(out.n);
    if (out.n < 2) return out;
    double ss = 0.0;
    for (const double v : values) {
        const double d = v - out.mean;
        ss += d * d;
    }
    out.sd = std::sqrt(ss / static_cast<double>(out.n - 1));
    return out;
}

StatsRow stats_row(const std::string& label, const std::vector<double>& values) {
    const MeanSd m = mean_and_sample_sd(values);
    StatsRow row;
    row.period_label = label;
    row.n = m.n;
    if (m.n >= 1) row.mean = m.mean;
    if (m.n >= 2) row.sd = m.sd;
    return row;
}

}  // namespace

std::vector<CsCaRow> cohort_cs_ca_stats(const std::vector<SBRecord>& records, YearRange range,
                                        int bucket_years, bool split_by_snpr,
                                        const std::vector<SnprRecord>* snprs) {
    if (bucket_years < 1) throw std::invalid_argument("bucket size must be >= 1 year");
    if (range.empty()) throw std::invalid_argument("empty year range");

    std::unordered_set<std::string> snpr_ids;
    if (split_by_snpr && snprs)
        for (const auto& s : *snprs) snpr_ids.insert(s.pub_id);

    const auto groups = split_by_snpr
                            ? std::vector<std::string>{"snpr", "non_snpr"}
                            : std::vector<std::string>{"all"};

    std::vector<CsCaRow> rows;
    for (int start = range.first; start <= range.last; start += bucket_years) {
        const YearRange bucket{start, std::min(start + bucket_years - 1, range.last)};
        for (const auto& group : groups) {
            std::vector<double> cs_values;
            std::vector<double> ca_values;
            for (const auto& rec : records) {
                const int pub_year = rec.sleep_window.first;
                if (!bucket.contains(pub_year)) continue;
                if (split_by_snpr) {
                    const bool is_snpr = snpr_ids.count(rec.pub_id) > 0;
                    if ((group == "snpr") != is_snpr) continue;
                }
                cs_values.push_back(rec.cs);
                ca_values.push_back(rec.ca);
            }
            CsCaRow row;
            row.period_label = bucket.label();
            row.group = group;
            row.cs = stats_row(bucket.label(), cs_values);
            row.ca = stats_row(bucket.label(), ca_values);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("correlation inputs differ in length");
    if (xs.size() < 3)
        throw std::invalid_argument("correlation needs at least 3 points");

    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::domain_error("correlation undefined: zero variance");
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

}  // namespace sbeauty
