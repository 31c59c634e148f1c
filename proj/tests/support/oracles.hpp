#pragma once

// Independent reference implementations for the test suites. Everything here
// works from raw record lists and recomputes from first principles, without
// touching the library's corpus indexes, so it can serve as an oracle for
// the optimized paths.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sbeauty/corpus.hpp"
#include "sbeauty/sbdetect.hpp"
#include "sbeauty/textmine.hpp"

namespace oracles {

struct NaiveSB {
    std::string pub_id;
    int sleep_first = 0, sleep_last = 0;
    int awake_first = 0, awake_last = 0;
    double cs = 0.0;
    double ca = 0.0;
    std::int64_t total_awake = 0;
    std::string depth;

    auto tied() const {
        return std::tie(pub_id, sleep_first, sleep_last, awake_first, awake_last, cs, ca,
                        total_awake, depth);
    }
    bool operator==(const NaiveSB& o) const { return tied() == o.tied(); }
    bool operator<(const NaiveSB& o) const { return tied() < o.tied(); }
};

// Brute-force sleeping-beauty scan over raw records: no adjacency, no year
// index; citers are found by scanning the whole edge list per publication.
std::vector<NaiveSB> naive_detect(const std::vector<sbeauty::Publication>& pubs,
                                  const std::vector<sbeauty::CitationEdge>& edges,
                                  const sbeauty::SBParams& params,
                                  sbeauty::YearRange pub_year_range,
                                  bool exclude_self_citations);

// Converts library output into the oracle's comparable form.
std::vector<NaiveSB> to_naive(const std::vector<sbeauty::SBRecord>& records);

// Pairwise co-citation counts by document-level enumeration over raw edges.
// Returns edge weights keyed by (id_a < id_b) plus per-reference occurrence.
struct BruteGraph {
    std::map<std::pair<std::string, std::string>, std::int64_t> edge_weights;
    std::map<std::string, std::int64_t> node_weights;
};
BruteGraph brute_cocitation(const std::vector<sbeauty::CitationEdge>& edges,
                            const std::vector<std::string>& citing_ids);
BruteGraph brute_coupling(const std::vector<sbeauty::CitationEdge>& edges,
                          const std::vector<std::string>& paper_ids);

// Independent boolean evaluation of a query AST under a truth assignment
// of term tokens (wildcards/phrases are out of scope for this oracle).
bool eval_truth_table(const sbeauty::QueryNode& ast,
                      const std::map<std::string, bool>& assignment);

// Independent document matcher with its own tokenizer; used to cross-check
// topic timelines.
bool naive_match(const sbeauty::QueryNode& ast, const std::string& title,
                 const std::string& abstract);

// Exponential fit via the covariance form of the normal equations (the
// library uses raw moments, so agreement is a genuine cross-check).
struct NaiveFit {
    double slope = 0.0;
    double intercept = 0.0;  // at the first positive year
};
NaiveFit normal_equations_fit(const sbeauty::YearSeries& series);

// Deterministic random query AST over the given tokens (terms only).
sbeauty::QueryNode random_ast(std::uint64_t& state, const std::vector<std::string>& tokens,
                              int max_depth);

}  // namespace oracles
