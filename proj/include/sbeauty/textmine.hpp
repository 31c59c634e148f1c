#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sbeauty/corpus.hpp"
#include "sbeauty/netgraph.hpp"
#include "sbeauty/year_series.hpp"

namespace sbeauty {

/// Boolean topic-query AST. AND binds tighter than OR, NOT tightest;
/// adjacent bare words form a PHRASE; `*` is a suffix wildcard.
struct QueryNode {
    enum class Kind { term, wildcard, phrase, op_and, op_or, op_not };

    Kind kind = Kind::term;
    std::string text;                      // term / wildcard token (folded lowercase)
    std::vector<std::string> phrase;       // phrase tokens
    bool phrase_prefix_last = false;       // phrase ends in a wildcard
    std::vector<QueryNode> children;       // and/or: >= 2, not: exactly 1

    bool operator==(const QueryNode&) const = default;
};

/// Parses a query string. Parentheses and square brackets both group.
/// Throws std::invalid_argument on unbalanced groups, empty groups, or a
/// wildcard outside suffix position.
QueryNode parse_query(std::string_view text);

/// Renders an AST back to query syntax; parse(render(ast)) == ast.
std::string render_query(const QueryNode& ast);

/// Evaluates the query over the publication's title + abstract. Tokens are
/// folded lowercase with hyphens acting as separators, so the text
/// "multi-hop" satisfies PHRASE(multi, hop) and WILDCARD(multi-hop) matches
/// "multi-hopping".
bool match_query(const QueryNode& ast, const Publication& pub);
bool match_query(const QueryNode& ast, const std::vector<std::string>& doc_tokens);

/// Annual number of publications matching the query.
YearSeries topic_timeline(const Corpus& corpus, const QueryNode& ast, YearRange range);

struct TermStats {
    std::string term;          // 1..max_gram words joined by single spaces
    std::int64_t df = 0;       // documents containing the term
};

struct ConceptGraphOptions {
    std::int64_t min_occurrences = 10;
    int max_gram = 3;
    bool association_strength = false;  // edge weight co/(df_u*df_v) instead of raw count
    std::uint64_t cluster_seed = 42;
    const std::vector<std::string>* extra_stopwords = nullptr;
};

struct ConceptGraphResult {
    WeightedGraph graph;            // node weight = df, edge weight = co-occurrence
    std::vector<int> cluster;       // cluster id per node (canonical node order)
    std::vector<TermStats> terms;   // aligned with graph.nodes
};

/// Term co-occurrence map over the documents' title + abstract. Terms are
/// 1..max_gram grams over stopword-free token runs with df >= min_occurrences;
/// edges count documents containing both terms. Clusters come from seeded
/// label propagation and are deterministic for a given seed.
ConceptGraphResult concept_graph(const std::vector<const Publication*>& docs,
                                 const ConceptGraphOptions& options = {});

struct FitResult {
    double exponent = 0.0;     // b, per year
    double amplitude = 0.0;    // fitted count at the first used year
    double r_squared = 0.0;
    std::vector<int> years_used;  // years with positive counts
};

/// Least-squares line on (year, ln count) over positive-count years.
/// Throws std::invalid_argument with fewer than 3 positive years.
FitResult fit_exponential(const YearSeries& series);

/// The bundled English stopword list (sorted).
const std::vector<std::string>& default_stopwords();

}  // namespace sbeauty
