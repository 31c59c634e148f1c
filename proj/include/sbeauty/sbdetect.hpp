#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbeauty/corpus.hpp"
#include "sbeauty/year_series.hpp"

namespace sbeauty {

/// The four tunable search variables. The canonical preset is
/// [10, 1.0, 10, 5.0]: ten quiet years at no more than one citation per
/// year on average, then ten years at five or more.
struct SBParams {
    int sleep_years = 10;        // s
    double cs_max = 1.0;         // max mean citations/year while sleeping
    int awake_min_years = 10;    // a_min
    int awake_max_years = 10;    // a_max
    double ca_min = 5.0;         // min mean citations/year while awake

    /// Throws std::invalid_argument on broken invariants; returns
    /// human-readable warnings for suspicious-but-legal settings.
    std::vector<std::string> validate() const;
};

enum class DepthLabel { coma, very_deep, deep, light };

const char* to_string(DepthLabel d);
DepthLabel depth_label_for(double cs);

struct SBRecord {
    std::string pub_id;
    YearRange sleep_window;
    YearRange awake_window;
    double cs = 0.0;             // mean citations/year in the sleep window
    double ca = 0.0;             // mean citations/year in the awake window
    std::int64_t total_awake_citations = 0;  // Ca
    DepthLabel depth = DepthLabel::light;
    std::optional<int> awakening_year;
};

struct DetectOptions {
    bool include_self_citations = false;
    int awakening_persistence = 2;   // persistence window for the awakening rule
};

/// Scans the corpus for Sleeping Beauties. Emits one record per qualifying
/// publication, ordered by pub_id. The sleep window is [y, y+s-1]; the awake
/// window starts at y+s and runs for a_max years, clipped to the corpus
/// horizon; publications whose clipped window would fall below a_min are
/// skipped rather than judged on a short window.
/// main_field_filter is "all" or a main-field name from the field table.
std::vector<SBRecord> detect_sbs(const Corpus& corpus, const SBParams& params,
                                 YearRange pub_year_range,
                                 const std::string& main_field_filter = "all",
                                 const DetectOptions& options = {});

/// First year t after publication_year with citations(t) >= threshold whose
/// mean over [t, t+persistence-1] also reaches the threshold. Years beyond
/// the series range count as zero.
std::optional<int> awakening_year(const YearSeries& series, int publication_year,
                                  double threshold, int persistence = 2);

struct StatsRow {
    std::string period_label;
    std::size_t n = 0;
    std::optional<double> mean;  // absent when n == 0
    std::optional<double> sd;    // sample sd; absent when n < 2
};

struct CsCaRow {
    std::string period_label;
    std::string group;   // "all", "snpr" or "non_snpr"
    StatsRow cs;
    StatsRow ca;
};

struct SnprRecord;  // patentlink

/// Per publication-year cohort (bucket_years wide, anchored at range.first):
/// N, mean and sample sd of cs and ca. With split_by_snpr, rows are emitted
/// separately for records that are / are not present in `snprs`.
std::vector<CsCaRow> cohort_cs_ca_stats(const std::vector<SBRecord>& records,
                                        YearRange range, int bucket_years = 3,
                                        bool split_by_snpr = false,
                                        const std::vector<SnprRecord>* snprs = nullptr);

/// Pearson r. Throws std::invalid_argument for size mismatch or n < 3 and
/// std::domain_error when either side has zero variance.
double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace sbeauty
