// Command-line front end for the sleeping-beauty citation analytics library.
// One subcommand per analysis; a shared JSON config supplies corpus paths and
// defaults, flags override the config. Exit codes: 0 ok, 1 usage, 2 data.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "detail/strings.hpp"
#include "sbeauty/corpus.hpp"
#include "sbeauty/namematch.hpp"
#include "sbeauty/netgraph.hpp"
#include "sbeauty/patentlink.hpp"
#include "sbeauty/sbdetect.hpp"
#include "sbeauty/synth.hpp"
#include "sbeauty/textmine.hpp"

namespace {

using sbeauty::detail::csv_field;
using sbeauty::detail::fmt_double;

constexpr const char* kConfigEnvVar = "SBEAUTY_CONFIG";

struct RunConfig {
    std::string publications;
    std::string citations;
    std::string patents;
    bool strict = false;
    std::string field_table_path;
    std::vector<std::string> exclude_doc_types;

    sbeauty::SBParams sb;
    bool include_self_citations = false;
    int persistence = 2;
    std::string years;       // "A:B", empty = corpus span
    std::string field = "all";

    int buckets = 3;
    std::int64_t cocite_threshold = 1;
    std::int64_t coupling_threshold = 1;
    std::int64_t prince_c_min = 100;
    std::int64_t min_occurrences = 10;

    std::string output_dir = ".";
    std::uint64_t seed = 42;
};

[[noreturn]] void config_fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config " + path + ": " + what);
}

void reject_unknown(const nlohmann::json& obj, const std::unordered_set<std::string>& known,
                    const std::string& path, const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!known.count(key))
            config_fail(path, "unknown key \"" + where + key + "\"");
}

RunConfig load_run_config(const std::string& path) {
    RunConfig config;
    if (path.empty()) return config;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        config_fail(path, e.what());
    }
    if (!j.is_object()) config_fail(path, "expected a JSON object");
    reject_unknown(j, {"corpus", "sb", "buckets", "thresholds", "output_dir", "seed"},
                   path, "");

    if (const auto it = j.find("corpus"); it != j.end()) {
        reject_unknown(*it,
                       {"publications", "citations", "patents", "strict", "field_table",
                        "exclude_doc_types"},
                       path, "corpus.");
        config.publications = it->value("publications", config.publications);
        config.citations = it->value("citations", config.citations);
        config.patents = it->value("patents", config.patents);
        config.strict = it->value("strict", config.strict);
        config.field_table_path = it->value("field_table", config.field_table_path);
        if (const auto d = it->find("exclude_doc_types"); d != it->end())
            config.exclude_doc_types = d->get<std::vector<std::string>>();
    }
    if (const auto it = j.find("sb"); it != j.end()) {
        reject_unknown(*it,
                       {"sleep", "cs_max", "awake_min", "awake_max", "ca_min",
                        "include_self_citations", "persistence", "years", "field"},
                       path, "sb.");
        config.sb.sleep_years = it->value("sleep", config.sb.sleep_years);
        config.sb.cs_max = it->value("cs_max", config.sb.cs_max);
        config.sb.awake_min_years = it->value("awake_min", config.sb.awake_min_years);
        config.sb.awake_max_years = it->value("awake_max", config.sb.awake_max_years);
        config.sb.ca_min = it->value("ca_min", config.sb.ca_min);
        config.include_self_citations =
            it->value("include_self_citations", config.include_self_citations);
        config.persistence = it->value("persistence", config.persistence);
        if (const auto y = it->find("years"); y != it->end()) {
            if (!y->is_array() || y->size() != 2) config_fail(path, "sb.years must be [from, to]");
            config.years = std::to_string(y->at(0).get<int>()) + ":" +
                           std::to_string(y->at(1).get<int>());
        }
        config.field = it->value("field", config.field);
    }
    config.buckets = j.value("buckets", config.buckets);
    if (const auto it = j.find("thresholds"); it != j.end()) {
        reject_unknown(*it, {"cocite", "coupling", "c_min", "min_occurrences"}, path,
                       "thresholds.");
        config.cocite_threshold = it->value("cocite", config.cocite_threshold);
        config.coupling_threshold = it->value("coupling", config.coupling_threshold);
        config.prince_c_min = it->value("c_min", config.prince_c_min);
        config.min_occurrences = it->value("min_occurrences", config.min_occurrences);
    }
    config.output_dir = j.value("output_dir", config.output_dir);
    config.seed = j.value("seed", config.seed);
    return config;
}

sbeauty::YearRange parse_year_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("year range must look like 1980:1994, got \"" + text + "\"");
    try {
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad year range \"" + text + "\"");
    }
}

// ---------------------------------------------------------------------------
// Shared pipeline pieces

struct Session {
    explicit Session(RunConfig& cfg) : config(cfg) {}

    // Flag validation that must run before any file is touched.
    void precheck() const {
        if (!config.years.empty()) parse_year_range(config.years);
        for (const auto& w : config.sb.validate()) std::cerr << "warning: " << w << "\n";
    }

    RunConfig& config;
    std::optional<sbeauty::FieldTable> user_field_table;
    std::optional<sbeauty::Corpus> corpus;

    const sbeauty::Corpus& load() {
        if (!corpus) {
            if (config.publications.empty())
                throw std::invalid_argument(
                    "no corpus: set --pubs/--citations/--patents or a config file");
            sbeauty::LoadOptions options;
            options.strict = config.strict;
            options.exclude_doc_types = config.exclude_doc_types;
            if (!config.field_table_path.empty()) {
                user_field_table = sbeauty::load_field_table(config.field_table_path);
                options.field_table = &*user_field_table;
            }
            corpus = sbeauty::load_corpus(config.publications, config.citations,
                                          config.patents, options);
        }
        return *corpus;
    }

    sbeauty::YearRange detect_range(const sbeauty::Corpus& c) const {
        if (!config.years.empty()) return parse_year_range(config.years);
        if (c.publication_count() == 0) return {0, 0};
        return {c.min_year(), c.max_year()};
    }

    std::vector<sbeauty::SBRecord> detect(const sbeauty::Corpus& c) const {
        sbeauty::DetectOptions options;
        options.include_self_citations = config.include_self_citations;
        options.awakening_persistence = config.persistence;
        return sbeauty::detect_sbs(c, config.sb, detect_range(c), config.field, options);
    }

    std::string out_path(const std::string& name) const {
        std::filesystem::create_directories(config.output_dir);
        return config.output_dir + "/" + name;
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
}

void write_sb_csv(const std::vector<sbeauty::SBRecord>& records, const std::string& path) {
    auto out = open_out(path);
    out << "pub_id,year,cs,ca,Ca,depth,awakening_year\n";
    for (const auto& r : records) {
        out << csv_field(r.pub_id) << ',' << r.sleep_window.first << ','
            << fmt_double(r.cs) << ',' << fmt_double(r.ca) << ',' << r.total_awake_citations
            << ',' << sbeauty::to_string(r.depth) << ','
            << (r.awakening_year ? std::to_string(*r.awakening_year) : std::string()) << '\n';
    }
}

void write_snpr_csv(const std::vector<sbeauty::SnprRecord>& snprs, const std::string& path) {
    auto out = open_out(path);
    out << "pub_id,year,n_families,first_citation_year,pcy,family_ids\n";
    for (const auto& s : snprs) {
        std::string families;
        for (const auto& f : s.citing_family_ids) {
            if (!families.empty()) families += ';';
            families += f;
        }
        out << csv_field(s.pub_id) << ',' << s.publication_year << ',' << s.n_families << ','
            << s.first_citation_year << ',' << s.pcy << ',' << csv_field(families) << '\n';
    }
}

void write_graph_output(const sbeauty::WeightedGraph& graph, const std::string& format,
                        const std::string& path) {
    sbeauty::export_graph(graph, sbeauty::graph_format_from_string(format), path);
    std::cout << "wrote " << path << " (" << graph.nodes.size() << " nodes, "
              << graph.edges.size() << " edges)\n";
}

std::vector<sbeauty::PubIndex> read_id_file(const sbeauty::Corpus& corpus,
                                            const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open id file " + path);
    std::vector<sbeauty::PubIndex> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto p = corpus.find_publication(line);
        if (!p)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": unknown publication id " + line);
        out.push_back(*p);
    }
    return out;
}

std::vector<sbeauty::PubIndex> citers_of_id(const sbeauty::Corpus& corpus,
                                            const std::string& id) {
    const auto p = corpus.find_publication(id);
    if (!p) throw std::runtime_error("unknown publication id " + id);
    const auto span = corpus.citers_of(*p);
    return {span.begin(), span.end()};
}

sbeauty::YearSeries read_timeline_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open timeline " + path);
    std::vector<std::pair<int, std::int64_t>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("year,", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected year,count");
        try {
            rows.emplace_back(std::stoi(line.substr(0, comma)),
                              std::stoll(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected year,count");
        }
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty timeline");
    int lo = rows.front().first, hi = rows.front().first;
    for (const auto& [y, c] : rows) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    sbeauty::YearSeries series(lo, hi);
    for (const auto& [y, c] : rows) series.add(y, c);
    return series;
}

}  // namespace

int main(int argc, char** argv) {
    // The config file is read before CLI11 parses, so that flag defaults can
    // come from it and explicit flags still win.
    std::string config_path;
    if (const char* env = std::getenv(kConfigEnvVar)) config_path = env;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string_view(argv[i]) == "--config") config_path = argv[i + 1];

    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Citation-corpus analytics: sleeping-beauty detection, patent linkage,\n"
                 "citation networks and topic mining over JSONL corpora."};
    app.require_subcommand(1);
    app.fallthrough();  // global corpus/output flags may follow the subcommand
    app.set_help_all_flag("--help-all", "print help for every subcommand");
    app.option_defaults()->always_capture_default();

    std::string config_flag;  // consumed above; declared so CLI11 accepts it
    app.add_option("--config", config_flag,
                   "JSON config file (default: $" + std::string(kConfigEnvVar) + ")");
    app.add_option("--pubs", cfg.publications, "publications.jsonl path");
    app.add_option("--citations", cfg.citations, "citations.jsonl or .csv path");
    app.add_option("--patents", cfg.patents, "patents.jsonl path");
    app.add_flag("--strict", cfg.strict, "treat dangling references as fatal");
    app.add_option("--field-table", cfg.field_table_path,
                   "override the bundled subject-category table (CSV)");
    app.add_option("--out", cfg.output_dir, "output directory");

    Session session(cfg);

    const auto add_sb_flags = [&cfg](CLI::App* cmd) {
        cmd->add_option("--sleep", cfg.sb.sleep_years, "sleep length s in years");
        cmd->add_option("--cs-max", cfg.sb.cs_max, "max mean citations/year while sleeping");
        cmd->add_option("--awake-min", cfg.sb.awake_min_years, "min awake window in years");
        cmd->add_option("--awake-max", cfg.sb.awake_max_years, "max awake window in years");
        cmd->add_option("--ca-min", cfg.sb.ca_min, "min mean citations/year while awake");
        cmd->add_option("--years", cfg.years, "publication year range, e.g. 1980:1994");
        cmd->add_option("--field", cfg.field, "main field filter or \"all\"");
        cmd->add_flag("--include-self-citations", cfg.include_self_citations,
                      "count citations from papers sharing an author name key");
        cmd->add_option("--persistence", cfg.persistence,
                        "years the awakening rate must persist");
    };

    // --- ingest / validate
    auto* cmd_ingest = app.add_subcommand("ingest", "load the corpus and report counts");
    cmd_ingest->callback([&] {
        const auto& corpus = session.load();
        const auto& stats = corpus.load_stats();
        std::cout << "publications: " << stats.publications << "\n"
                  << "citation_edges: " << stats.citation_edges << "\n"
                  << "patent_families: " << stats.patent_families << "\n"
                  << "dropped_publications: " << stats.dropped_publications << "\n"
                  << "dropped_edges: " << stats.dropped_edges << "\n"
                  << "dropped_npl_refs: " << stats.dropped_npl_refs << "\n";
        for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";
    });

    auto* cmd_validate = app.add_subcommand("validate", "report corpus invariant violations");
    cmd_validate->callback([&] {
        const auto& corpus = session.load();
        const auto report = sbeauty::validate(corpus);
        for (const auto& v : report.violations) std::cout << v.message << "\n";
        std::cout << (report.clean() ? "corpus is well-formed\n"
                                     : std::to_string(report.violations.size()) +
                                           " violation(s) found\n");
        if (!report.clean()) throw std::runtime_error("corpus failed validation");
    });

    // --- detection and statistics
    auto* cmd_detect = app.add_subcommand("detect-sb", "run the sleeping-beauty search");
    add_sb_flags(cmd_detect);
    cmd_detect->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto records = session.detect(corpus);
        const auto path = session.out_path("sb_records.csv");
        write_sb_csv(records, path);
        std::cout << "wrote " << path << " (" << records.size() << " records)\n";
    });

    auto* cmd_link = app.add_subcommand("link-patents",
                                        "link detected SBs to citing patent families");
    add_sb_flags(cmd_link);
    cmd_link->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto records = session.detect(corpus);
        const auto snprs = sbeauty::link_snprs(corpus, records);
        const auto path = session.out_path("snprs.csv");
        write_snpr_csv(snprs, path);
        std::cout << "wrote " << path << " (" << snprs.size() << " of " << records.size()
                  << " SBs cited in patents)\n";
    });

    auto* cmd_lag = app.add_subcommand("lag-stats",
                                       "publication-to-first-patent-citation lag cohorts");
    add_sb_flags(cmd_lag);
    cmd_lag->add_option("--bucket", cfg.buckets, "cohort width in years");
    cmd_lag->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto records = session.detect(corpus);
        const auto snprs = sbeauty::link_snprs(corpus, records);
        const auto rows =
            sbeauty::cohort_lag_stats(snprs, session.detect_range(corpus), cfg.buckets);
        const auto path = session.out_path("lag_stats.csv");
        auto out = open_out(path);
        out << "period,N,mean_pcy,sd_pcy,Y\n";
        for (const auto& r : rows) {
            out << r.period_label << ',' << r.n << ',' << opt_cell(r.mean_pcy) << ','
                << opt_cell(r.sd_pcy) << ','
                << (r.most_extreme_year ? std::to_string(*r.most_extreme_year)
                                        : std::string())
                << '\n';
        }
        std::cout << "wrote " << path << " (" << rows.size() << " cohorts)\n";
    });

    auto* cmd_repr = app.add_subcommand(
        "representation", "field/country shares of SB-SNPRs vs SBs vs all publications");
    add_sb_flags(cmd_repr);
    std::string repr_key = "field";
    std::string repr_scope = "all";
    cmd_repr->add_option("--key", repr_key, "field or country")
        ->check(CLI::IsMember({"field", "country"}));
    cmd_repr->add_option("--scope", repr_scope, "main-field scope or \"all\"");
    cmd_repr->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto records = session.detect(corpus);
        const auto snprs = sbeauty::link_snprs(corpus, records);
        const auto rows = sbeauty::representation(
            corpus, records, snprs,
            repr_key == "field" ? sbeauty::RepresentationKey::field
                                : sbeauty::RepresentationKey::country,
            repr_scope);
        const auto path = session.out_path("representation.csv");
        auto out = open_out(path);
        out << "key,n_snpr,share_snpr,share_sb,share_pubs,ratio_snpr_vs_pubs,"
               "ratio_sb_vs_pubs\n";
        for (const auto& r : rows) {
            out << csv_field(r.key) << ',' << r.n_snpr << ',' << fmt_double(r.share_snpr)
                << ',' << fmt_double(r.share_sb) << ',' << fmt_double(r.share_pubs) << ','
                << opt_cell(r.ratio_snpr_vs_pubs) << ',' << opt_cell(r.ratio_sb_vs_pubs)
                << '\n';
        }
        std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
    });

    auto* cmd_cohort = app.add_subcommand("cohort-stats",
                                          "cs/ca cohort statistics (or bucket counts)");
    add_sb_flags(cmd_cohort);
    bool cohort_split = false;
    bool cohort_counts = false;
    std::string normalize_base;
    cmd_cohort->add_option("--bucket", cfg.buckets, "cohort width in years");
    cmd_cohort->add_flag("--split-by-snpr", cohort_split,
                         "separate patent-cited and uncited SBs");
    cmd_cohort->add_flag("--counts", cohort_counts, "emit bucket counts instead of cs/ca");
    cmd_cohort->add_option("--normalize-base", normalize_base,
                           "with --counts: index buckets to this period label = 100");
    cmd_cohort->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto records = session.detect(corpus);
        const auto range = session.detect_range(corpus);
        const auto snprs = sbeauty::link_snprs(corpus, records);
        if (cohort_counts) {
            std::unordered_set<std::string> snpr_ids;
            for (const auto& s : snprs) snpr_ids.insert(s.pub_id);
            const auto groups =
                cohort_split ? std::vector<std::string>{"snpr", "non_snpr"}
                             : std::vector<std::string>{"all"};
            const auto path = session.out_path("sb_counts.csv");
            auto out = open_out(path);
            out << "period,group,count" << (normalize_base.empty() ? "" : ",normalized")
                << "\n";
            for (const auto& group : groups) {
                std::vector<int> years;
                for (const auto& r : records) {
                    if (cohort_split &&
                        (group == "snpr") != (snpr_ids.count(r.pub_id) > 0))
                        continue;
                    years.push_back(r.sleep_window.first);
                }
                const auto counts = sbeauty::count_series(
                    years, range, cfg.buckets,
                    normalize_base.empty() ? std::nullopt
                                           : std::optional<std::string>(normalize_base));
                for (std::size_t i = 0; i < counts.labels.size(); ++i) {
                    out << counts.labels[i] << ',' << group << ',' << counts.counts[i];
                    if (!counts.normalized.empty())
                        out << ',' << fmt_double(counts.normalized[i]);
                    out << '\n';
                }
            }
            std::cout << "wrote " << path << "\n";
            return;
        }
        const auto rows = sbeauty::cohort_cs_ca_stats(records, range, cfg.buckets,
                                                      cohort_split, &snprs);
        const auto path = session.out_path("cohort_stats.csv");
        auto out = open_out(path);
        out << "period,group,N,cs_mean,cs_sd,ca_mean,ca_sd\n";
        for (const auto& r : rows) {
            out << r.period_label << ',' << r.group << ',' << r.cs.n << ','
                << opt_cell(r.cs.mean) << ',' << opt_cell(r.cs.sd) << ','
                << opt_cell(r.ca.mean) << ',' << opt_cell(r.ca.sd) << '\n';
        }
        std::cout << "wrote " << path << " (" << rows.size() << " rows)\n";
    });

    auto* cmd_corr = app.add_subcommand("correlate", "cs-ca or pcy-Ca scatter and Pearson r");
    add_sb_flags(cmd_corr);
    std::string corr_kind = "cs-ca";
    cmd_corr->add_option("--kind", corr_kind, "cs-ca or pcy-ca")
        ->check(CLI::IsMember({"cs-ca", "pcy-ca"}));
    cmd_corr->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto records = session.detect(corpus);
        const auto path = session.out_path("scatter.csv");
        auto out = open_out(path);
        double r = 0.0;
        if (corr_kind == "cs-ca") {
            std::vector<double> xs, ys;
            out << "pub_id,cs,ca\n";
            for (const auto& rec : records) {
                xs.push_back(rec.cs);
                ys.push_back(rec.ca);
                out << csv_field(rec.pub_id) << ',' << fmt_double(rec.cs) << ','
                    << fmt_double(rec.ca) << '\n';
            }
            r = sbeauty::pearson_correlation(xs, ys);
        } else {
            const auto snprs = sbeauty::link_snprs(corpus, records);
            const auto scatter = sbeauty::lag_vs_awake_scatter(snprs, records);
            out << "pcy,Ca\n";
            for (const auto& [pcy, ca] : scatter.points) out << pcy << ',' << ca << '\n';
            r = scatter.r;
        }
        std::cout << "wrote " << path << "\n" << "pearson_r: " << fmt_double(r) << "\n";
    });

    auto* cmd_awaken = app.add_subcommand("awakening",
                                          "awakening year of one publication");
    add_sb_flags(cmd_awaken);
    std::string awaken_pub;
    double awaken_threshold = -1.0;
    cmd_awaken->add_option("--pub", awaken_pub, "publication id")->required();
    cmd_awaken->add_option("--threshold", awaken_threshold,
                           "citations/year threshold (default: ca-min)");
    cmd_awaken->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto pub = corpus.find_publication(awaken_pub);
        if (!pub) throw std::runtime_error("unknown publication id " + awaken_pub);
        const int start = corpus.publication(*pub).year;
        const auto series = sbeauty::citation_series(
            corpus, *pub, !cfg.include_self_citations,
            sbeauty::YearRange{start, corpus.max_year()});
        const double threshold = awaken_threshold >= 0.0 ? awaken_threshold : cfg.sb.ca_min;
        const auto year =
            sbeauty::awakening_year(series, start, threshold, cfg.persistence);
        std::cout << awaken_pub << ": "
                  << (year ? std::to_string(*year) : std::string("none")) << "\n";
    });

    auto* cmd_inv = app.add_subcommand("inventor-author",
                                       "inventor-author links for patent-cited SBs");
    add_sb_flags(cmd_inv);
    std::string inv_type = "all";
    cmd_inv->add_option("--type", inv_type, "1, 2 or all")
        ->check(CLI::IsMember({"1", "2", "all"}));
    cmd_inv->callback([&] {
        session.precheck();
        const auto& corpus = session.load();
        const auto records = session.detect(corpus);
        const auto snprs = sbeauty::link_snprs(corpus, records);
        const auto matches = sbeauty::match_inventor_authors(corpus, snprs);
        const auto path = session.out_path("inventor_author.csv");
        auto out = open_out(path);
        out << "link_type,name,pub_id,family_id\n";
        std::size_t rows = 0;
        for (const auto& m : matches) {
            if (inv_type != "all" && std::to_string(m.link_type) != inv_type) continue;
            for (const auto& fid : m.family_ids) {
                out << m.link_type << ',' << csv_field(m.name_key.display()) << ','
                    << csv_field(m.pub_id) << ',' << csv_field(fid) << '\n';
                ++rows;
            }
        }
        std::cout << "wrote " << path << " (" << rows << " rows)\n";
    });

    // --- networks
    std::string graph_format = "graphml";

    auto* cmd_cocite = app.add_subcommand("cocite", "co-citation graph of a citing set");
    std::string cocite_citers_of;
    std::string cocite_set_file;
    bool keep_isolates = false;
    cmd_cocite->add_option("--citers-of", cocite_citers_of,
                           "use all papers citing this publication as the citing set");
    cmd_cocite->add_option("--citing-set", cocite_set_file,
                           "file with one publication id per line");
    cmd_cocite->add_option("--threshold", cfg.cocite_threshold, "min co-citation weight");
    cmd_cocite->add_flag("--keep-isolates", keep_isolates, "keep nodes with no edges");
    cmd_cocite->add_option("--format", graph_format, "graphml, dot or edgelist");
    cmd_cocite->callback([&] {
        const auto& corpus = session.load();
        std::vector<sbeauty::PubIndex> citing_set;
        if (!cocite_citers_of.empty())
            citing_set = citers_of_id(corpus, cocite_citers_of);
        else if (!cocite_set_file.empty())
            citing_set = read_id_file(corpus, cocite_set_file);
        else
            throw std::invalid_argument("cocite needs --citers-of or --citing-set");
        const auto graph = sbeauty::cocitation_graph(corpus, citing_set,
                                                     cfg.cocite_threshold, keep_isolates);
        write_graph_output(graph, graph_format,
                           session.out_path("cocitation." + graph_format));
    });

    auto* cmd_couple = app.add_subcommand("bibcouple",
                                          "bibliographic-coupling graph of a paper set");
    std::string couple_file;
    std::string couple_early_of;
    int couple_k = 25;
    std::string couple_normalize = "none";
    cmd_couple->add_option("--papers", couple_file, "file with one publication id per line");
    cmd_couple->add_option("--early-citers-of", couple_early_of,
                           "use this publication plus its first k citers");
    cmd_couple->add_option("--k", couple_k, "number of early citers");
    cmd_couple->add_option("--min-shared", cfg.coupling_threshold,
                           "min shared references");
    cmd_couple->add_option("--normalize", couple_normalize, "none or cosine")
        ->check(CLI::IsMember({"none", "cosine"}));
    cmd_couple->add_option("--format", graph_format, "graphml, dot or edgelist");
    cmd_couple->callback([&] {
        const auto& corpus = session.load();
        std::vector<sbeauty::PubIndex> papers;
        if (!couple_early_of.empty()) {
            const auto graph = sbeauty::early_citer_subnet(corpus, couple_early_of, couple_k);
            for (const auto& n : graph.nodes)
                papers.push_back(*corpus.find_publication(n.id));
        } else if (!couple_file.empty()) {
            papers = read_id_file(corpus, couple_file);
        } else {
            throw std::invalid_argument("bibcouple needs --papers or --early-citers-of");
        }
        const auto graph = sbeauty::bibcoupling_graph(
            corpus, papers, cfg.coupling_threshold,
            couple_normalize == "cosine" ? sbeauty::CouplingNormalize::cosine
                                         : sbeauty::CouplingNormalize::none);
        write_graph_output(graph, graph_format,
                           session.out_path("bibcoupling." + graph_format));
    });

    auto* cmd_early = app.add_subcommand("early-citers",
                                         "citation subnet of a publication's first citers");
    std::string early_sb;
    int early_k = 25;
    cmd_early->add_option("--sb", early_sb, "publication id")->required();
    cmd_early->add_option("--k", early_k, "number of early citers");
    cmd_early->add_option("--format", graph_format, "graphml, dot or edgelist");
    cmd_early->callback([&] {
        const auto& corpus = session.load();
        const auto graph = sbeauty::early_citer_subnet(corpus, early_sb, early_k);
        write_graph_output(graph, graph_format,
                           session.out_path("early_citers." + graph_format));
    });

    auto* cmd_princes = app.add_subcommand("princes",
                                           "rank awakening-prince candidates for an SB");
    std::string princes_sb;
    sbeauty::PrinceConfig prince_config;
    prince_config.min_own_citations = cfg.prince_c_min;
    cmd_princes->add_option("--sb", princes_sb, "publication id")->required();
    cmd_princes->add_option("--c-min", prince_config.min_own_citations,
                            "min citations a candidate must have");
    cmd_princes->add_option("--k", prince_config.k, "candidate pool: first k citers");
    cmd_princes->add_option("--w-cocite", prince_config.weight_cocite, "co-citation weight");
    cmd_princes->add_option("--w-coupling", prince_config.weight_coupling,
                            "coupling weight");
    cmd_princes->add_option("--w-earliness", prince_config.weight_earliness,
                            "awakening-closeness weight");
    cmd_princes->add_option("--early-penalty", prince_config.early_penalty,
                            "score multiplier for pre-awakening candidates");
    cmd_princes->add_flag("--exclude-self-citers", prince_config.exclude_self_citers,
                          "drop candidates sharing an author name key with the SB");
    cmd_princes->add_option("--threshold", prince_config.awakening_threshold,
                            "awakening citations/year threshold");
    cmd_princes->add_option("--persistence", prince_config.awakening_persistence,
                            "years the awakening rate must persist");
    cmd_princes->callback([&] {
        const auto& corpus = session.load();
        const auto candidates = sbeauty::rank_princes(corpus, princes_sb, prince_config);
        const auto path = session.out_path("princes.csv");
        auto out = open_out(path);
        out << "rank,pub_id,year,own_citations,earliness,cocite_with_sb,coupling_with_sb,"
               "score,early_passing_prince\n";
        std::size_t rank = 1;
        for (const auto& c : candidates) {
            out << rank++ << ',' << csv_field(c.pub_id) << ',' << c.year << ','
                << c.own_citations << ',' << c.earliness << ',' << c.cocite_weight_with_sb
                << ',' << c.coupling_with_sb << ',' << fmt_double(c.score) << ','
                << (c.early_passing_prince ? 1 : 0) << '\n';
        }
        std::cout << "wrote " << path << " (" << candidates.size() << " candidates)\n";
    });

    // --- text mining
    auto* cmd_timeline = app.add_subcommand("topic-timeline",
                                            "annual publication counts for a topic query");
    std::string query_text;
    int from_year = 1991;
    int to_year = 2015;
    cmd_timeline->add_option("--query", query_text, "boolean topic query")->required();
    cmd_timeline->add_option("--from", from_year, "first year");
    cmd_timeline->add_option("--to", to_year, "last year");
    cmd_timeline->callback([&] {
        const auto& corpus = session.load();
        const auto ast = sbeauty::parse_query(query_text);
        const auto series =
            sbeauty::topic_timeline(corpus, ast, sbeauty::YearRange{from_year, to_year});
        const auto path = session.out_path("timeline.csv");
        auto out = open_out(path);
        out << "year,count\n";
        for (int y = series.start_year; y <= series.end_year(); ++y)
            out << y << ',' << series.at(y) << '\n';
        std::cout << "wrote " << path << " (" << series.sum() << " matching publications)\n";
    });

    auto* cmd_concepts = app.add_subcommand("concepts",
                                            "term co-occurrence map of a document set");
    std::string concepts_query;
    std::string concepts_citers_of;
    std::string concepts_period;
    int concepts_max_gram = 3;
    std::string concepts_normalize = "raw";
    cmd_concepts->add_option("--query", concepts_query, "select documents by topic query");
    cmd_concepts->add_option("--citers-of", concepts_citers_of,
                             "select the papers citing this publication");
    cmd_concepts->add_option("--period", concepts_period, "restrict years, e.g. 2011:2015");
    cmd_concepts->add_option("--min-occ", cfg.min_occurrences,
                             "min documents a term must appear in");
    cmd_concepts->add_option("--max-gram", concepts_max_gram, "longest n-gram");
    cmd_concepts->add_option("--normalize", concepts_normalize, "raw or association")
        ->check(CLI::IsMember({"raw", "association"}));
    cmd_concepts->add_option("--format", graph_format, "graphml, dot or edgelist");
    cmd_concepts->callback([&] {
        const auto& corpus = session.load();
        std::optional<sbeauty::YearRange> period;
        if (!concepts_period.empty()) period = parse_year_range(concepts_period);

        std::vector<const sbeauty::Publication*> docs;
        const auto consider = [&](sbeauty::PubIndex p) {
            const auto& pub = corpus.publication(p);
            if (period && !period->contains(pub.year)) return;
            docs.push_back(&pub);
        };
        if (!concepts_citers_of.empty()) {
            for (const auto p : citers_of_id(corpus, concepts_citers_of)) consider(p);
        } else if (!concepts_query.empty()) {
            const auto ast = sbeauty::parse_query(concepts_query);
            for (sbeauty::PubIndex p = 0; p < corpus.publication_count(); ++p)
                if (sbeauty::match_query(ast, corpus.publication(p))) consider(p);
        } else {
            throw std::invalid_argument("concepts needs --query or --citers-of");
        }

        sbeauty::ConceptGraphOptions options;
        options.min_occurrences = cfg.min_occurrences;
        options.max_gram = concepts_max_gram;
        options.association_strength = concepts_normalize == "association";
        options.cluster_seed = cfg.seed;
        const auto result = sbeauty::concept_graph(docs, options);

        write_graph_output(result.graph, graph_format,
                           session.out_path("concepts." + graph_format));
        const auto clusters_path = session.out_path("concept_clusters.csv");
        auto out = open_out(clusters_path);
        out << "term,df,cluster\n";
        for (std::size_t i = 0; i < result.graph.nodes.size(); ++i)
            out << csv_field(result.terms[i].term) << ',' << result.terms[i].df << ','
                << result.cluster[i] << '\n';
        std::cout << "wrote " << clusters_path << "\n";
    });

    auto* cmd_fit = app.add_subcommand("fit-growth",
                                       "exponential growth fit of an annual series");
    std::string fit_input;
    std::string fit_query;
    cmd_fit->add_option("--input", fit_input, "timeline CSV (year,count)");
    cmd_fit->add_option("--query", fit_query, "fit a topic query timeline instead");
    cmd_fit->add_option("--from", from_year, "first year (with --query)");
    cmd_fit->add_option("--to", to_year, "last year (with --query)");
    cmd_fit->callback([&] {
        sbeauty::YearSeries series;
        if (!fit_input.empty()) {
            series = read_timeline_csv(fit_input);
        } else if (!fit_query.empty()) {
            const auto& corpus = session.load();
            series = sbeauty::topic_timeline(corpus, sbeauty::parse_query(fit_query),
                                             sbeauty::YearRange{from_year, to_year});
        } else {
            throw std::invalid_argument("fit-growth needs --input or --query");
        }
        const auto fit = sbeauty::fit_exponential(series);
        const auto path = session.out_path("growth_fit.csv");
        auto out = open_out(path);
        out << "exponent,amplitude,r_squared,first_year,last_year,n_years\n";
        out << fmt_double(fit.exponent) << ',' << fmt_double(fit.amplitude) << ','
            << fmt_double(fit.r_squared) << ',' << fit.years_used.front() << ','
            << fit.years_used.back() << ',' << fit.years_used.size() << '\n';
        std::cout << "exponent: " << fmt_double(fit.exponent)
                  << "\namplitude: " << fmt_double(fit.amplitude)
                  << "\nr_squared: " << fmt_double(fit.r_squared) << "\nwrote " << path
                  << "\n";
    });

    // --- synthesis and graph conversion
    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic corpus");
    std::string synth_config_path;
    std::string synth_format = "csv";
    bool synth_seed_given = false;
    std::uint64_t synth_seed = 42;
    cmd_synth->add_option("--synth-config", synth_config_path,
                          "generator config (JSON); defaults apply when omitted");
    auto* seed_opt = cmd_synth->add_option("--seed", synth_seed, "generator seed");
    cmd_synth->add_option("--citations-format", synth_format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd_synth->callback([&] {
        sbeauty::SynthConfig synth_config;
        if (!synth_config_path.empty())
            synth_config = sbeauty::load_synth_config(synth_config_path);
        synth_seed_given = seed_opt->count() > 0;
        if (synth_seed_given) synth_config.seed = synth_seed;
        const auto output = sbeauty::generate(synth_config);
        const auto paths = sbeauty::write_corpus_files(
            output, cfg.output_dir,
            synth_format == "csv" ? sbeauty::CitationFileFormat::csv
                                  : sbeauty::CitationFileFormat::jsonl);
        std::cout << "publications: " << output.truth.n_publications << "\n"
                  << "citation_edges: " << output.truth.n_edges << "\n"
                  << "patent_families: " << output.truth.n_families << "\n";
        for (const auto& p : paths) std::cout << "wrote " << p << "\n";
    });

    auto* cmd_export = app.add_subcommand("export-graph",
                                          "convert an edgelist graph to another format");
    std::string export_input;
    std::string export_out;
    cmd_export->add_option("--input", export_input, "edgelist file")->required();
    cmd_export->add_option("--format", graph_format, "graphml, dot or edgelist");
    cmd_export->add_option("--out-file", export_out, "output path");
    cmd_export->callback([&] {
        const auto graph = sbeauty::read_edgelist(export_input);
        const std::string path =
            export_out.empty() ? session.out_path("graph." + graph_format) : export_out;
        write_graph_output(graph, graph_format, path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
