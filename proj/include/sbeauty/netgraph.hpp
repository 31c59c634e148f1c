#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sbeauty/corpus.hpp"

namespace sbeauty {

struct GraphNode {
    std::string id;
    std::string label;
    std::int64_t weight = 0;

    bool operator==(const GraphNode&) const = default;
};

struct GraphEdge {
    std::uint32_t u = 0;  // node indexes; u < v for undirected edges
    std::uint32_t v = 0;
    double weight = 1.0;

    bool operator==(const GraphEdge&) const = default;
};

/// Weighted graph with canonical ordering: nodes sorted by id, edges sorted
/// by (u, v). Directed graphs keep edge direction u -> v.
struct WeightedGraph {
    bool directed = false;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;

    std::optional<std::uint32_t> node_index(std::string_view id) const;
    void canonicalize();

    bool operator==(const WeightedGraph&) const = default;
};

/// Co-citation graph of the references of `citing_set`: the node weight of a
/// reference is the number of citing-set papers citing it and an edge weight
/// counts the papers citing both endpoints (document-level). Edges below
/// min_edge_weight are removed, then isolated nodes unless keep_isolates.
WeightedGraph cocitation_graph(const Corpus& corpus,
                               const std::vector<PubIndex>& citing_set,
                               std::int64_t min_edge_weight = 1,
                               bool keep_isolates = false);

enum class CouplingNormalize { none, cosine };

/// Bibliographic-coupling graph over paper_set: edge weight is the number of
/// shared references (or the cosine of the reference vectors), with the
/// min_shared_refs threshold always applied to the raw shared count.
WeightedGraph bibcoupling_graph(const Corpus& corpus,
                                const std::vector<PubIndex>& paper_set,
                                std::int64_t min_shared_refs = 1,
                                CouplingNormalize normalize = CouplingNormalize::none);

/// Directed citation subnet of a publication and its k earliest citers
/// (ordered by year, ties by pub_id). Edges are the citation relations among
/// the selected papers, including each citer -> sb edge.
WeightedGraph early_citer_subnet(const Corpus& corpus, PubIndex sb, int k = 25);
WeightedGraph early_citer_subnet(const Corpus& corpus, std::string_view sb_id, int k = 25);

struct PrinceCandidate {
    std::string pub_id;
    int year = 0;
    std::int64_t own_citations = 0;        // total received in the corpus
    int earliness = 0;                     // year - awakening_year
    std::int64_t cocite_weight_with_sb = 0;
    std::int64_t coupling_with_sb = 0;
    double score = 0.0;
    bool early_passing_prince = false;     // cited enough but pre-awakening
};

struct PrinceConfig {
    std::int64_t min_own_citations = 100;  // C_min
    int k = 25;                            // candidate pool: first k citers
    double weight_cocite = 0.5;
    double weight_coupling = 0.3;
    double weight_earliness = 0.2;
    double early_penalty = 0.5;            // score multiplier for pre-awakening citers
    bool exclude_self_citers = false;      // drop citers sharing an author key
    double awakening_threshold = 5.0;      // ca_min used for the awakening rule
    int awakening_persistence = 2;
};

/// Scores prince candidates among the SB's first k citers that have at least
/// min_own_citations. The score mixes co-citation strength with the SB,
/// bibliographic coupling with the SB (both normalized over the candidate
/// pool) and closeness to the awakening year; pre-awakening candidates are
/// flagged early_passing_prince and down-ranked, not excluded. Throws
/// std::runtime_error when the SB has no awakening year.
std::vector<PrinceCandidate> rank_princes(const Corpus& corpus, PubIndex sb,
                                          const PrinceConfig& config = {});
std::vector<PrinceCandidate> rank_princes(const Corpus& corpus, std::string_view sb_id,
                                          const PrinceConfig& config = {});

enum class GraphFormat { graphml, dot, edgelist };

GraphFormat graph_format_from_string(const std::string& name);

/// Writes the graph with canonical node/edge ordering; output is bit-stable
/// for a given graph. The edgelist format round-trips via read_edgelist.
void export_graph(const WeightedGraph& graph, GraphFormat format, const std::string& path);
void write_graph(const WeightedGraph& graph, GraphFormat format, std::ostream& out);

WeightedGraph read_edgelist(const std::string& path);

}  // namespace sbeauty
