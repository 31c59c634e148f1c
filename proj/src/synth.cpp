#include "sbeauty/synth.hpp"

#include "sbeauty/namematch.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "detail/lineio.hpp"
#include "detail/rng.hpp"
#include "detail/strings.hpp"

namespace sbeauty {

namespace {

using nlohmann::ordered_json;

void check_rate(double v, const char* what) {
    if (v < 0.0 || v > 1.0)
        throw std::invalid_argument(std::string(what) + " must be within [0, 1]");
}

// Unique, pronounceable surnames: a counter encoded in syllables. Authors
// and inventors draw from disjoint suffix spaces so accidental cross-pool
// key collisions cannot happen; collisions are only ever planted.
std::string syllable_name(std::uint64_t counter, bool inventor_pool) {
    static const char* syllables[] = {"ba", "ce", "di", "fo", "gu", "ha", "ke", "li",
                                      "mo", "nu", "pa", "re", "si", "to", "va", "zo"};
    std::string body;
    std::uint64_t v = counter;
    do {
        body += syllables[v % 16];
        v /= 16;
    } while (v > 0);
    body += inventor_pool ? "rov" : "lan";
    body[0] = static_cast<char>(body[0] - 'a' + 'A');
    return body;
}

const char* given_name(std::uint64_t counter) {
    static const char* names[] = {"Albert", "Bruno",  "Clara",  "Doris",  "Edgar",
                                  "Frieda", "Gustav", "Helena", "Igor",   "Julia",
                                  "Karl",   "Laura",  "Martin", "Nora",   "Oskar",
                                  "Paula",  "Quirin", "Rosa",   "Stefan", "Teresa"};
    return names[counter % 20];
}

struct Person {
    std::string last;
    std::string given;

    std::string author_form() const {  // "Balan, A."
        return last + ", " + given.substr(0, 1) + ".";
    }
    std::string inventor_form() const {  // "Barov, Albert"
        return last + ", " + given;
    }
};

Person make_person(std::uint64_t counter, bool inventor_pool) {
    return {syllable_name(counter, inventor_pool), given_name(counter)};
}

std::string make_title(detail::Rng& rng) {
    static const char* words[] = {
        "adaptive",   "scheduling", "wireless",  "throughput", "optical",   "polymer",
        "catalytic",  "synthesis",  "scattering","resonance",  "turbulent", "deposition",
        "quantum",    "coherent",   "inverter",  "antenna",    "membrane",  "crystal",
        "dispersion", "stability",  "network",   "routing",    "bandwidth", "composite",
        "thermal",    "plasma",     "spectral",  "coding",     "sensor",    "imaging",
        "queueing",   "control",    "allocation","estimation", "channel",   "fiber"};
    const std::size_t n_words = 3 + rng.next_below(4);
    std::string title;
    for (std::size_t i = 0; i < n_words; ++i) {
        if (i) title += ' ';
        title += words[rng.next_below(std::size(words))];
    }
    title[0] = static_cast<char>(title[0] - 'a' + 'A');
    return title;
}

// Distributes `total` across `weights.size()` cells proportionally, exactly,
// by largest remainder.
std::vector<std::uint64_t> apportion(std::uint64_t total, const std::vector<double>& weights) {
    double weight_sum = 0.0;
    for (const double w : weights) weight_sum += w;
    std::vector<std::uint64_t> counts(weights.size(), 0);
    if (total == 0 || weight_sum <= 0.0) return counts;

    std::vector<std::pair<double, std::size_t>> remainders;
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double exact = static_cast<double>(total) * weights[i] / weight_sum;
        counts[i] = static_cast<std::uint64_t>(exact);
        assigned += counts[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t k = 0; assigned < total; ++k, ++assigned)
        ++counts[remainders[k % remainders.size()].second];
    return counts;
}

// Spreads `total` across `cells` as evenly as possible, remainder first.
std::vector<std::int64_t> spread_evenly(std::int64_t total, int cells) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(cells), total / cells);
    for (int i = 0; i < total % cells; ++i) ++out[static_cast<std::size_t>(i)];
    return out;
}

std::string pub_id_for(std::uint64_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%07llu", static_cast<unsigned long long>(i));
    return buf;
}

std::string sb_id_for(std::uint32_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "sb%04u", i);
    return buf;
}

std::string family_id_for(std::uint64_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "fam%05llu", static_cast<unsigned long long>(i));
    return buf;
}

}  // namespace

void SynthConfig::validate() const {
    if (year_max < year_min) throw std::invalid_argument("year_max before year_min");
    if (pub_growth_per_year < 0.0)
        throw std::invalid_argument("pub_growth_per_year must be >= 0");
    if (refs_per_pub < 0.0) throw std::invalid_argument("refs_per_pub must be >= 0");
    check_rate(pa_strength, "pa_strength");
    check_rate(snpr_fraction, "snpr_fraction");
    check_rate(inventor_author_plant_rate, "inventor_author_plant_rate");
    check_rate(homonym_rate, "homonym_rate");
    check_rate(background_patent_rate, "background_patent_rate");
    if (pcy_sd < 0.0) throw std::invalid_argument("pcy_sd must be >= 0");
    if (pcy_mean < 0.0) throw std::invalid_argument("pcy_mean must be >= 0");
    if (n_planted_sbs > 0) {
        sb_params.validate();
        if (sb_cs_target < 0.0 || sb_cs_target > sb_params.cs_max)
            throw std::invalid_argument("sb_cs_target must lie in [0, cs_max]");
        if (sb_ca_target < sb_params.ca_min)
            throw std::invalid_argument("sb_ca_target must be >= ca_min");
        const int span_needed = sb_params.sleep_years + sb_params.awake_max_years;
        if (year_max - year_min + 1 < span_needed)
            throw std::invalid_argument("year span too short for the planted SB windows");
    }
}

SynthOutput generate(const SynthConfig& config) {
    config.validate();
    SynthOutput out;
    detail::Rng root(config.seed ^ 0x5BEA17ULL);
    detail::Rng rng_pubs = root.fork(1);
    detail::Rng rng_edges = root.fork(2);
    detail::Rng rng_plant = root.fork(3);
    detail::Rng rng_patents = root.fork(4);

    const int n_years = config.year_max - config.year_min + 1;
    static const char* kCountries[] = {"US", "JP", "DE", "UK", "FR", "NL",
                                       "CN", "CA", "SE", "IT"};
    const auto& field_entries = bundled_field_table().entries();

    // --- background publications, year by year with exponential growth
    std::vector<double> year_weights(static_cast<std::size_t>(n_years));
    for (int t = 0; t < n_years; ++t)
        year_weights[static_cast<std::size_t>(t)] =
            std::exp(config.pub_growth_per_year * t);
    const std::vector<std::uint64_t> pubs_per_year =
        apportion(config.n_publications, year_weights);

    const std::uint64_t n_author_pool =
        std::max<std::uint64_t>(4, config.n_publications / 3 + 2);

    std::vector<std::vector<PubIndex>> background_by_year(static_cast<std::size_t>(n_years));
    std::uint64_t pub_counter = 0;
    for (int t = 0; t < n_years; ++t) {
        const int year = config.year_min + t;
        for (std::uint64_t k = 0; k < pubs_per_year[static_cast<std::size_t>(t)]; ++k) {
            Publication p;
            p.id = pub_id_for(pub_counter++);
            p.year = year;
            p.title = make_title(rng_pubs);
            if (rng_pubs.next_bool(0.3)) p.abstract = make_title(rng_pubs);
            const std::size_t n_authors = 1 + rng_pubs.next_below(3);
            for (std::size_t a = 0; a < n_authors; ++a)
                p.authors.push_back(
                    make_person(rng_pubs.next_below(n_author_pool), false).author_form());
            const std::size_t n_fields = 1 + rng_pubs.next_below(2);
            for (std::size_t f = 0; f < n_fields; ++f)
                p.field_codes.push_back(
                    field_entries[rng_pubs.next_below(field_entries.size())].code);
            std::sort(p.field_codes.begin(), p.field_codes.end());
            p.field_codes.erase(std::unique(p.field_codes.begin(), p.field_codes.end()),
                                p.field_codes.end());
            p.country_codes.push_back(kCountries[rng_pubs.next_below(10)]);
            background_by_year[static_cast<std::size_t>(t)].push_back(
                static_cast<PubIndex>(out.publications.size()));
            out.publications.push_back(std::move(p));
        }
    }
    const std::uint64_t n_background = out.publications.size();

    // --- planted Sleeping Beauties
    const SBParams& params = config.sb_params;
    struct PlantedInfo {
        PubIndex index;
        int year;
    };
    std::vector<PlantedInfo> planted;
    if (config.n_planted_sbs > 0) {
        const int last_plant_year =
            config.year_max - (params.sleep_years + params.awake_max_years) + 1;
        const int plant_span = last_plant_year - config.year_min + 1;
        // Dedicated authors so planted citers can never look like
        // self-citations and be excluded from the series.
        std::uint64_t sb_author_counter = n_author_pool + 1000;
        for (std::uint32_t i = 0; i < config.n_planted_sbs; ++i) {
            Publication p;
            p.id = sb_id_for(i);
            p.year = config.year_min + static_cast<int>(i % plant_span);
            p.title = make_title(rng_plant);
            p.abstract = make_title(rng_plant);
            p.authors.push_back(make_person(sb_author_counter++, false).author_form());
            p.authors.push_back(make_person(sb_author_counter++, false).author_form());
            p.field_codes.push_back(
                field_entries[rng_plant.next_below(field_entries.size())].code);
            p.country_codes.push_back(kCountries[rng_plant.next_below(10)]);
            planted.push_back({static_cast<PubIndex>(out.publications.size()), p.year});
            out.publications.push_back(std::move(p));
        }
    }

    // --- background citation edges (preferential attachment over earlier
    //     background papers only; planted series stay under our control)
    std::vector<PubIndex> endpoints;  // one entry per edge target, PA mass
    endpoints.reserve(static_cast<std::size_t>(
        config.refs_per_pub * static_cast<double>(n_background) * 1.1) + 16);
    {
        std::unordered_set<PubIndex> chosen;
        for (PubIndex i = 0; i < n_background; ++i) {
            if (i == 0) continue;
            const std::uint32_t wanted = rng_edges.next_poisson(config.refs_per_pub);
            const std::uint32_t capped = std::min<std::uint32_t>(wanted, i);
            chosen.clear();
            std::uint32_t attempts = 0;
            while (chosen.size() < capped && attempts < capped * 8 + 8) {
                ++attempts;
                PubIndex target;
                if (!endpoints.empty() && rng_edges.next_bool(config.pa_strength))
                    target = endpoints[rng_edges.next_below(endpoints.size())];
                else
                    target = static_cast<PubIndex>(rng_edges.next_below(i));
                if (target == i) continue;
                if (!chosen.insert(target).second) continue;
                out.edges.emplace_back(i, target);
                endpoints.push_back(target);
            }
        }
    }

    // --- planted citation series, constructive
    if (!planted.empty()) {
        const std::int64_t sleep_total = std::llround(config.sb_cs_target *
                                                      params.sleep_years);
        const std::int64_t awake_total = std::llround(config.sb_ca_target *
                                                      params.awake_max_years);
        const auto sleep_counts = spread_evenly(sleep_total, params.sleep_years);
        const auto awake_counts = spread_evenly(awake_total, params.awake_max_years);

        for (std::size_t s = 0; s < planted.size(); ++s) {
            const PlantedInfo& info = planted[s];
            PlantedSB truth;
            truth.pub_id = out.publications[info.index].id;
            truth.year = info.year;
            truth.sleep_counts = sleep_counts;
            truth.awake_counts = awake_counts;
            truth.cs = static_cast<double>(sleep_total) / params.sleep_years;
            truth.ca = static_cast<double>(awake_total) / params.awake_max_years;
            truth.awakening_year = info.year + params.sleep_years;

            const auto plant_year = [&](int year, std::int64_t count) {
                if (count == 0) return;
                const auto& pool =
                    background_by_year[static_cast<std::size_t>(year - config.year_min)];
                if (static_cast<std::int64_t>(pool.size()) < count)
                    throw std::invalid_argument(
                        "infeasible plant: year " + std::to_string(year) + " has only " +
                        std::to_string(pool.size()) + " papers, need " +
                        std::to_string(count));
                std::unordered_set<PubIndex> used;
                while (static_cast<std::int64_t>(used.size()) < count) {
                    const PubIndex citer = pool[rng_plant.next_below(pool.size())];
                    if (used.insert(citer).second) out.edges.emplace_back(citer, info.index);
                }
            };
            for (int o = 0; o < params.sleep_years; ++o)
                plant_year(info.year + o, sleep_counts[static_cast<std::size_t>(o)]);
            for (int o = 0; o < params.awake_max_years; ++o)
                plant_year(info.year + params.sleep_years + o,
                           awake_counts[static_cast<std::size_t>(o)]);
            out.truth.sbs.push_back(std::move(truth));
        }
    }

    // --- patents
    std::uint64_t family_counter = 0;
    std::uint64_t patent_counter = 0;
    std::uint64_t inventor_counter = 0;
    static const char* kIpc[] = {"G01S13/90", "H04L12/28", "A61K31/37",
                                 "G06T1/00", "C07D311/16", "H04W72/12"};

    const auto new_family = [&](const std::vector<std::string>& cited_ids, int app_year,
                                std::vector<std::string> inventors) {
        Patent fam;
        fam.family_id = family_id_for(family_counter++);
        const std::size_t n_members = 1 + rng_patents.next_below(2);
        for (std::size_t m = 0; m < n_members; ++m) {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "PT%08llu",
                          static_cast<unsigned long long>(patent_counter++));
            fam.patent_ids.push_back(buf);
        }
        fam.title = "Apparatus for " + make_title(rng_patents);
        if (inventors.empty()) {
            const std::size_t n_inv = 1 + rng_patents.next_below(3);
            for (std::size_t v = 0; v < n_inv; ++v)
                fam.inventors.push_back(
                    make_person(inventor_counter++, true).inventor_form());
        } else {
            fam.inventors = std::move(inventors);
        }
        fam.ipc_codes.push_back(kIpc[rng_patents.next_below(std::size(kIpc))]);
        fam.application_year = app_year;
        fam.npl_cited_ids = cited_ids;
        out.patents.push_back(std::move(fam));
        return out.patents.back().family_id;
    };

    // Background patents over background publications.
    const std::uint64_t n_bg_patents = static_cast<std::uint64_t>(
        std::llround(config.background_patent_rate * static_cast<double>(n_background)));
    for (std::uint64_t b = 0; b < n_bg_patents && n_background > 0; ++b) {
        const PubIndex cited =
            static_cast<PubIndex>(rng_patents.next_below(n_background));
        const int cited_year = out.publications[cited].year;
        const int app_year = std::min(
            config.year_max, cited_year + 1 + static_cast<int>(rng_patents.next_below(8)));
        new_family({out.publications[cited].id}, app_year, {});
    }

    // Planted SNPR linkages on a deterministic subset of the planted SBs.
    if (!planted.empty() && config.snpr_fraction > 0.0) {
        const auto n_snpr = static_cast<std::size_t>(
            std::llround(config.snpr_fraction * static_cast<double>(planted.size())));
        std::vector<std::size_t> order(planted.size());
        for (std::size_t i = 0; i < planted.size(); ++i) order[i] = i;
        for (std::size_t i = planted.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng_patents.next_below(i)]);

        for (std::size_t k = 0; k < n_snpr && k < order.size(); ++k) {
            const PlantedInfo& info = planted[order[k]];
            const Publication& sb_pub = out.publications[info.index];
            const int max_pcy = config.year_max - info.year;
            int pcy = static_cast<int>(
                std::llround(rng_patents.next_normal(config.pcy_mean, config.pcy_sd)));
            pcy = std::clamp(pcy, 0, max_pcy);

            PlantedSnpr snpr;
            snpr.pub_id = sb_pub.id;
            snpr.pcy = pcy;
            snpr.first_citation_year = info.year + pcy;
            snpr.family_ids.push_back(
                new_family({sb_pub.id}, info.year + pcy, {}));
            if (rng_patents.next_bool(0.3) && pcy < max_pcy) {
                const int later = info.year + pcy + 1 +
                                  static_cast<int>(rng_patents.next_below(
                                      static_cast<std::uint64_t>(max_pcy - pcy)));
                snpr.family_ids.push_back(new_family({sb_pub.id}, later, {}));
            }
            std::sort(snpr.family_ids.begin(), snpr.family_ids.end());

            // Inventor-author pairs: type 1 shares a person with a citing
            // family, type 2 with a family that does not cite the SB.
            if (rng_patents.next_bool(config.inventor_author_plant_rate)) {
                const Person pair_person = make_person(inventor_counter++, true);
                Publication& sb_mut = out.publications[info.index];
                sb_mut.authors.push_back(pair_person.author_form());
                std::vector<std::string> inventors{pair_person.inventor_form()};
                inventors.push_back(make_person(inventor_counter++, true).inventor_form());
                const std::string fid =
                    new_family({sb_pub.id}, snpr.first_citation_year, inventors);
                snpr.family_ids.push_back(fid);
                std::sort(snpr.family_ids.begin(), snpr.family_ids.end());
                out.truth.pairs.push_back({1, sb_pub.id, fid, pair_person.inventor_form()});
            }
            if (rng_patents.next_bool(config.inventor_author_plant_rate)) {
                const Person pair_person = make_person(inventor_counter++, true);
                Publication& sb_mut = out.publications[info.index];
                sb_mut.authors.push_back(pair_person.author_form());
                // Cites some background paper, never the SB itself; the
                // application year must not precede the cited paper.
                std::vector<std::string> cited;
                int app_year = std::min(config.year_max, info.year + params.sleep_years);
                if (n_background > 0) {
                    const auto& target =
                        out.publications[rng_patents.next_below(n_background)];
                    cited.push_back(target.id);
                    app_year = std::min(config.year_max,
                                        std::max(app_year, target.year));
                }
                const std::string fid =
                    new_family(cited, app_year, {pair_person.inventor_form()});
                out.truth.pairs.push_back({2, sb_pub.id, fid, pair_person.inventor_form()});
            }
            // Homonyms: a distinct inventor that happens to carry the same
            // name key as one of the SB's authors.
            if (rng_patents.next_bool(config.homonym_rate)) {
                // Same rendered name, different generated person.
                std::string impostor = sb_pub.authors.front();
                std::vector<std::string> cited;
                int app_year = std::min(config.year_max, info.year + 3);
                if (n_background > 0) {
                    const auto& target =
                        out.publications[rng_patents.next_below(n_background)];
                    cited.push_back(target.id);
                    app_year = std::min(config.year_max,
                                        std::max(app_year, target.year));
                }
                const std::string fid = new_family(cited, app_year, {impostor});
                out.truth.homonyms.push_back(
                    {sb_pub.authors.front(), impostor, sb_pub.id, fid});
            }
            out.truth.snprs.push_back(std::move(snpr));
        }
        std::sort(out.truth.snprs.begin(), out.truth.snprs.end(),
                  [](const PlantedSnpr& a, const PlantedSnpr& b) {
                      return a.pub_id < b.pub_id;
                  });
        std::sort(out.truth.pairs.begin(), out.truth.pairs.end(),
                  [](const PlantedPair& a, const PlantedPair& b) {
                      if (a.pub_id != b.pub_id) return a.pub_id < b.pub_id;
                      if (a.link_type != b.link_type) return a.link_type < b.link_type;
                      return a.family_id < b.family_id;
                  });
    }

    out.truth.n_publications = out.publications.size();
    out.truth.n_edges = out.edges.size();
    out.truth.n_families = out.patents.size();
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

ordered_json pub_to_json(const Publication& p) {
    ordered_json j;
    j["id"] = p.id;
    j["year"] = p.year;
    j["title"] = p.title;
    if (!p.abstract.empty()) j["abstract"] = p.abstract;
    j["authors"] = p.authors;
    j["field_codes"] = p.field_codes;
    j["country_codes"] = p.country_codes;
    if (!p.journal.empty()) j["journal"] = p.journal;
    if (!p.doc_type.empty()) j["doc_type"] = p.doc_type;
    return j;
}

ordered_json patent_to_json(const Patent& fam) {
    ordered_json j;
    j["family_id"] = fam.family_id;
    j["patent_ids"] = fam.patent_ids;
    j["title"] = fam.title;
    j["inventors"] = fam.inventors;
    j["ipc_codes"] = fam.ipc_codes;
    j["application_year"] = fam.application_year;
    j["npl_cited_ids"] = fam.npl_cited_ids;
    return j;
}

}  // namespace

std::vector<std::string> write_corpus_files(const SynthOutput& output, const std::string& dir,
                                            CitationFileFormat citation_format) {
    std::filesystem::create_directories(dir);
    const std::string pubs_path = dir + "/publications.jsonl";
    const std::string cites_path =
        dir + (citation_format == CitationFileFormat::csv ? "/citations.csv"
                                                          : "/citations.jsonl");
    const std::string patents_path = dir + "/patents.jsonl";
    const std::string truth_path = dir + "/ground_truth.jsonl";

    {
        detail::BufferedWriter w(pubs_path);
        for (const auto& p : output.publications) {
            w.write(pub_to_json(p).dump());
            w.write("\n");
        }
    }
    {
        detail::BufferedWriter w(cites_path);
        if (citation_format == CitationFileFormat::csv) {
            w.write("citing_id,cited_id\n");
            std::string line;
            for (const auto& [citing, cited] : output.edges) {
                line.clear();
                line += output.publications[citing].id;
                line += ',';
                line += output.publications[cited].id;
                line += '\n';
                w.write(line);
            }
        } else {
            std::string line;
            for (const auto& [citing, cited] : output.edges) {
                ordered_json j;
                j["citing_id"] = output.publications[citing].id;
                j["cited_id"] = output.publications[cited].id;
                line = j.dump();
                line += '\n';
                w.write(line);
            }
        }
    }
    {
        detail::BufferedWriter w(patents_path);
        for (const auto& fam : output.patents) {
            w.write(patent_to_json(fam).dump());
            w.write("\n");
        }
    }
    {
        detail::BufferedWriter w(truth_path);
        ordered_json summary;
        summary["kind"] = "summary";
        summary["n_publications"] = output.truth.n_publications;
        summary["n_edges"] = output.truth.n_edges;
        summary["n_families"] = output.truth.n_families;
        w.write(summary.dump());
        w.write("\n");
        for (const auto& sb : output.truth.sbs) {
            ordered_json j;
            j["kind"] = "sb";
            j["pub_id"] = sb.pub_id;
            j["year"] = sb.year;
            j["cs"] = sb.cs;
            j["ca"] = sb.ca;
            j["awakening_year"] = sb.awakening_year;
            j["sleep_counts"] = sb.sleep_counts;
            j["awake_counts"] = sb.awake_counts;
            w.write(j.dump());
            w.write("\n");
        }
        for (const auto& s : output.truth.snprs) {
            ordered_json j;
            j["kind"] = "snpr";
            j["pub_id"] = s.pub_id;
            j["family_ids"] = s.family_ids;
            j["first_citation_year"] = s.first_citation_year;
            j["pcy"] = s.pcy;
            w.write(j.dump());
            w.write("\n");
        }
        for (const auto& p : output.truth.pairs) {
            ordered_json j;
            j["kind"] = "inventor_author";
            j["link_type"] = p.link_type;
            j["pub_id"] = p.pub_id;
            j["family_id"] = p.family_id;
            j["name"] = p.name;
            w.write(j.dump());
            w.write("\n");
        }
        for (const auto& h : output.truth.homonyms) {
            ordered_json j;
            j["kind"] = "homonym";
            j["author_name"] = h.author_name;
            j["inventor_name"] = h.inventor_name;
            j["pub_id"] = h.pub_id;
            j["family_id"] = h.family_id;
            w.write(j.dump());
            w.write("\n");
        }
    }
    return {pubs_path, cites_path, patents_path, truth_path};
}

Corpus build_corpus(const SynthOutput& output, bool strict) {
    BuildOptions options;
    options.enforce = true;
    options.strict = strict;
    return Corpus::build_indexed(output.publications, output.edges, output.patents, options);
}

SynthConfig load_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open synth config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error(path + ": config must be a JSON object");

    SynthConfig config;
    static const std::unordered_set<std::string> known = {
        "n_publications", "year_min", "year_max", "pub_growth_per_year", "refs_per_pub",
        "pa_strength", "n_planted_sbs", "sb_params", "sb_cs_target", "sb_ca_target",
        "snpr_fraction", "pcy_mean", "pcy_sd", "inventor_author_plant_rate",
        "homonym_rate", "background_patent_rate", "seed"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            throw std::runtime_error(path + ": unknown config key \"" + key + "\"");

    const auto get = [&j](const char* key, auto& field) {
        if (const auto it = j.find(key); it != j.end())
            field = it->get<std::decay_t<decltype(field)>>();
    };
    get("n_publications", config.n_publications);
    get("year_min", config.year_min);
    get("year_max", config.year_max);
    get("pub_growth_per_year", config.pub_growth_per_year);
    get("refs_per_pub", config.refs_per_pub);
    get("pa_strength", config.pa_strength);
    get("n_planted_sbs", config.n_planted_sbs);
    get("sb_cs_target", config.sb_cs_target);
    get("sb_ca_target", config.sb_ca_target);
    get("snpr_fraction", config.snpr_fraction);
    get("pcy_mean", config.pcy_mean);
    get("pcy_sd", config.pcy_sd);
    get("inventor_author_plant_rate", config.inventor_author_plant_rate);
    get("homonym_rate", config.homonym_rate);
    get("background_patent_rate", config.background_patent_rate);
    get("seed", config.seed);
    if (const auto it = j.find("sb_params"); it != j.end()) {
        static const std::unordered_set<std::string> sb_known = {
            "sleep", "cs_max", "awake_min", "awake_max", "ca_min"};
        for (const auto& [key, value] : it->items())
            if (!sb_known.count(key))
                throw std::runtime_error(path + ": unknown sb_params key \"" + key + "\"");
        if (const auto f = it->find("sleep"); f != it->end())
            config.sb_params.sleep_years = f->get<int>();
        if (const auto f = it->find("cs_max"); f != it->end())
            config.sb_params.cs_max = f->get<double>();
        if (const auto f = it->find("awake_min"); f != it->end())
            config.sb_params.awake_min_years = f->get<int>();
        if (const auto f = it->find("awake_max"); f != it->end())
            config.sb_params.awake_max_years = f->get<int>();
        if (const auto f = it->find("ca_min"); f != it->end())
            config.sb_params.ca_min = f->get<double>();
    }
    config.validate();
    return config;
}

}  // namespace sbeauty
