#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sbeauty/corpus.hpp"
#include "sbeauty/sbdetect.hpp"

namespace sbeauty {

/// Configuration for the synthetic corpus generator. Background papers are
/// sampled from a preferential-attachment citation model; planted Sleeping
/// Beauties get their citation series written constructively, so detection
/// results against the manifest are exact rather than statistical.
struct SynthConfig {
    std::uint64_t n_publications = 10000;  // background papers
    int year_min = 1980;
    int year_max = 2015;
    double pub_growth_per_year = 0.04;     // output growth rate across years

    double refs_per_pub = 3.0;             // Poisson mean references per paper
    double pa_strength = 0.3;              // preferential-attachment mix in [0,1]

    std::uint32_t n_planted_sbs = 0;
    SBParams sb_params{};                  // companion detection preset
    double sb_cs_target = 0.8;             // planted mean sleep citation rate
    double sb_ca_target = 8.0;             // planted mean awake citation rate

    double snpr_fraction = 0.0;            // share of planted SBs cited by patents
    double pcy_mean = 12.0;                // publication-to-first-patent lag
    double pcy_sd = 5.0;
    double inventor_author_plant_rate = 0.0;  // share of planted SNPRs with pairs
    double homonym_rate = 0.0;             // distinct persons sharing a name key
    double background_patent_rate = 0.0;   // share of background pubs cited by a patent

    std::uint64_t seed = 42;

    void validate() const;  // throws std::invalid_argument
};

struct PlantedSB {
    std::string pub_id;
    int year = 0;
    double cs = 0.0;
    double ca = 0.0;
    int awakening_year = 0;
    std::vector<std::int64_t> sleep_counts;
    std::vector<std::int64_t> awake_counts;
};

struct PlantedSnpr {
    std::string pub_id;
    std::vector<std::string> family_ids;
    int first_citation_year = 0;
    int pcy = 0;
};

struct PlantedPair {
    int link_type = 0;  // 1 or 2
    std::string pub_id;
    std::string family_id;
    std::string name;   // the shared person, raw inventor form
};

struct PlantedHomonym {
    std::string author_name;    // raw author form
    std::string inventor_name;  // distinct person, same name key
    std::string pub_id;         // the SB whose author the homonym shadows
    std::string family_id;      // the family carrying the homonym inventor
};

struct GroundTruth {
    std::uint64_t n_publications = 0;  // total, planted SBs included
    std::uint64_t n_edges = 0;
    std::uint64_t n_families = 0;
    std::vector<PlantedSB> sbs;
    std::vector<PlantedSnpr> snprs;
    std::vector<PlantedPair> pairs;
    std::vector<PlantedHomonym> homonyms;
};

struct SynthOutput {
    std::vector<Publication> publications;                 // ordered by (year, id)
    std::vector<std::pair<PubIndex, PubIndex>> edges;      // indexes into publications
    std::vector<Patent> patents;
    GroundTruth truth;
};

/// Generates a synthetic corpus. Deterministic for a fixed config (the seed
/// lives in the config). Throws std::invalid_argument when the plant targets
/// are infeasible, e.g. a year lacks enough papers to cite a planted SB.
SynthOutput generate(const SynthConfig& config);

enum class CitationFileFormat { csv, jsonl };

/// Writes publications.jsonl, citations.csv (or .jsonl), patents.jsonl and
/// ground_truth.jsonl into `dir`. Byte-identical for identical input.
/// Returns the four file paths in that order.
std::vector<std::string> write_corpus_files(const SynthOutput& output, const std::string& dir,
                                            CitationFileFormat citation_format =
                                                CitationFileFormat::csv);

/// Builds a Corpus directly from generator output, skipping file I/O.
Corpus build_corpus(const SynthOutput& output, bool strict = true);

/// Reads a generator config from a JSON file; unknown keys are rejected.
SynthConfig load_synth_config(const std::string& path);

}  // namespace sbeauty
