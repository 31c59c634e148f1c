#include "sbeauty/netgraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "detail/lineio.hpp"
#include "detail/strings.hpp"
#include "sbeauty/namematch.hpp"
#include "sbeauty/sbdetect.hpp"

namespace sbeauty {

std::optional<std::uint32_t> WeightedGraph::node_index(std::string_view id) const {
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return i;
    return std::nullopt;
}

void WeightedGraph::canonicalize() {
    std::vector<std::uint32_t> order(nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [this](std::uint32_t a, std::uint32_t b) {
        return nodes[a].id < nodes[b].id;
    });
    std::vector<std::uint32_t> old_to_new(nodes.size());
    std::vector<GraphNode> sorted;
    sorted.reserve(nodes.size());
    for (std::uint32_t new_i = 0; new_i < order.size(); ++new_i) {
        old_to_new[order[new_i]] = new_i;
        sorted.push_back(std::move(nodes[order[new_i]]));
    }
    nodes = std::move(sorted);
    for (auto& e : edges) {
        e.u = old_to_new[e.u];
        e.v = old_to_new[e.v];
        if (!directed && e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
}

namespace {

// Display label: first author's last name + year when available, else the id.
std::string node_label(const Publication& pub) {
    if (!pub.authors.empty()) {
        if (const auto key = try_normalize_name(pub.authors.front()))
            return key->last_name + " " + std::to_string(pub.year);
    }
    return pub.id;
}

std::vector<PubIndex> dedupe_sorted(std::vector<PubIndex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

WeightedGraph cocitation_graph(const Corpus& corpus, const std::vector<PubIndex>& citing_set,
                               std::int64_t min_edge_weight, bool keep_isolates) {
    const std::vector<PubIndex> citers = dedupe_sorted(citing_set);

    // Node weight: in how many citing-set papers each reference occurs.
    std::unordered_map<PubIndex, std::int64_t> occurrence;
    std::unordered_map<std::uint64_t, std::int64_t> pair_counts;
    for (const PubIndex citer : citers) {
        const auto refs = corpus.references_of(citer);  // sorted, unique
        for (const PubIndex r : refs) ++occurrence[r];
        for (std::size_t a = 0; a < refs.size(); ++a)
            for (std::size_t b = a + 1; b < refs.size(); ++b) {
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(refs[a]) << 32) | refs[b];
                ++pair_counts[key];
            }
    }

    const std::int64_t threshold = std::max<std::int64_t>(min_edge_weight, 1);
    std::vector<std::pair<std::uint64_t, std::int64_t>> kept;
    kept.reserve(pair_counts.size());
    for (const auto& [key, w] : pair_counts)
        if (w >= threshold) kept.emplace_back(key, w);
    std::sort(kept.begin(), kept.end());

    std::vector<PubIndex> node_pubs;
    if (keep_isolates) {
        node_pubs.reserve(occurrence.size());
        for (const auto& [p, w] : occurrence) node_pubs.push_back(p);
    } else {
        for (const auto& [key, w] : kept) {
            node_pubs.push_back(static_cast<PubIndex>(key >> 32));
            node_pubs.push_back(static_cast<PubIndex>(key & 0xFFFFFFFFULL));
        }
    }
    node_pubs = dedupe_sorted(std::move(node_pubs));

    WeightedGraph graph;
    graph.directed = false;
    std::unordered_map<PubIndex, std::uint32_t> index_of;
    graph.nodes.reserve(node_pubs.size());
    for (const PubIndex p : node_pubs) {
        index_of[p] = static_cast<std::uint32_t>(graph.nodes.size());
        const Publication& pub = corpus.publication(p);
        graph.nodes.push_back({pub.id, node_label(pub), occurrence[p]});
    }
    graph.edges.reserve(kept.size());
    for (const auto& [key, w] : kept) {
        const PubIndex a = static_cast<PubIndex>(key >> 32);
        const PubIndex b = static_cast<PubIndex>(key & 0xFFFFFFFFULL);
        graph.edges.push_back({index_of[a], index_of[b], static_cast<double>(w)});
    }
    graph.canonicalize();
    return graph;
}

WeightedGraph bibcoupling_graph(const Corpus& corpus, const std::vector<PubIndex>& paper_set,
                                std::int64_t min_shared_refs, CouplingNormalize normalize) {
    const std::vector<PubIndex> papers = dedupe_sorted(paper_set);

    WeightedGraph graph;
    graph.directed = false;
    std::unordered_map<PubIndex, std::uint32_t> index_of;
    graph.nodes.reserve(papers.size());
    for (const PubIndex p : papers) {
        index_of[p] = static_cast<std::uint32_t>(graph.nodes.size());
        const Publication& pub = corpus.publication(p);
        graph.nodes.push_back({pub.id, node_label(pub),
                               static_cast<std::int64_t>(corpus.references_of(p).size())});
    }

    const std::int64_t threshold = std::max<std::int64_t>(min_shared_refs, 1);
    for (std::size_t a = 0; a < papers.size(); ++a) {
        const auto refs_a = corpus.references_of(papers[a]);
        for (std::size_t b = a + 1; b < papers.size(); ++b) {
            const auto refs_b = corpus.references_of(papers[b]);
            std::size_t ia = 0, ib = 0;
            std::int64_t shared = 0;
            while (ia < refs_a.size() && ib < refs_b.size()) {
                if (refs_a[ia] == refs_b[ib]) { ++shared; ++ia; ++ib; }
                else if (refs_a[ia] < refs_b[ib]) ++ia;
                else ++ib;
            }
            if (shared < threshold) continue;
            double weight = static_cast<double>(shared);
            if (normalize == CouplingNormalize::cosine)
                weight = shared / std::sqrt(static_cast<double>(refs_a.size()) *
                                            static_cast<double>(refs_b.size()));
            graph.edges.push_back({index_of[papers[a]], index_of[papers[b]], weight});
        }
    }
    graph.canonicalize();
    return graph;
}

namespace {

std::vector<PubIndex> earliest_citers(const Corpus& corpus, PubIndex sb, int k) {
    std::vector<PubIndex> citers(corpus.citers_of(sb).begin(), corpus.citers_of(sb).end());
    std::sort(citers.begin(), citers.end(), [&corpus](PubIndex a, PubIndex b) {
        const int ya = corpus.publication(a).year;
        const int yb = corpus.publication(b).year;
        if (ya != yb) return ya < yb;
        return corpus.publication(a).id < corpus.publication(b).id;
    });
    if (k >= 0 && citers.size() > static_cast<std::size_t>(k))
        citers.resize(static_cast<std::size_t>(k));
    return citers;
}

}  // namespace

WeightedGraph early_citer_subnet(const Corpus& corpus, PubIndex sb, int k) {
    std::vector<PubIndex> members = earliest_citers(corpus, sb, k);
    members.push_back(sb);
    members = dedupe_sorted(std::move(members));

    WeightedGraph graph;
    graph.directed = true;
    std::unordered_map<PubIndex, std::uint32_t> index_of;
    graph.nodes.reserve(members.size());
    for (const PubIndex p : members) {
        index_of[p] = static_cast<std::uint32_t>(graph.nodes.size());
        const Publication& pub = corpus.publication(p);
        graph.nodes.push_back({pub.id, node_label(pub),
                               static_cast<std::int64_t>(corpus.citers_of(p).size())});
    }
    for (const PubIndex p : members) {
        const auto refs = corpus.references_of(p);
        for (const PubIndex m : members) {
            if (m == p) continue;
            if (std::binary_search(refs.begin(), refs.end(), m))
                graph.edges.push_back({index_of[p], index_of[m], 1.0});
        }
    }
    graph.canonicalize();
    return graph;
}

WeightedGraph early_citer_subnet(const Corpus& corpus, std::string_view sb_id, int k) {
    const auto sb = corpus.find_publication(sb_id);
    if (!sb) throw std::invalid_argument("unknown publication id: " + std::string(sb_id));
    return early_citer_subnet(corpus, *sb, k);
}

std::vector<PrinceCandidate> rank_princes(const Corpus& corpus, PubIndex sb,
                                          const PrinceConfig& config) {
    const Publication& sb_pub = corpus.publication(sb);

    const YearSeries series = citation_series(
        corpus, sb, /*exclude_self_citations=*/true,
        YearRange{sb_pub.year, corpus.max_year()});
    const auto awake = awakening_year(series, sb_pub.year, config.awakening_threshold,
                                      config.awakening_persistence);
    if (!awake)
        throw std::runtime_error("publication " + sb_pub.id + " has no awakening year");

    // All citers of the SB; co-citation weight of a candidate is the number
    // of SB-citing papers that also cite the candidate.
    const auto all_citers = corpus.citers_of(sb);
    const auto sb_refs = corpus.references_of(sb);

    std::vector<PrinceCandidate> candidates;
    for (const PubIndex citer : earliest_citers(corpus, sb, config.k)) {
        const Publication& pub = corpus.publication(citer);
        const auto own = static_cast<std::int64_t>(corpus.citers_of(citer).size());
        if (own < config.min_own_citations) continue;
        if (config.exclude_self_citers && corpus.shares_author_key(citer, sb)) continue;

        PrinceCandidate cand;
        cand.pub_id = pub.id;
        cand.year = pub.year;
        cand.own_citations = own;
        cand.earliness = pub.year - *awake;
        cand.early_passing_prince = pub.year < *awake;

        for (const PubIndex other : all_citers) {
            if (other == citer) continue;
            const auto refs = corpus.references_of(other);
            if (std::binary_search(refs.begin(), refs.end(), citer))
                ++cand.cocite_weight_with_sb;
        }
        const auto refs = corpus.references_of(citer);
        std::size_t ia = 0, ib = 0;
        while (ia < refs.size() && ib < sb_refs.size()) {
            if (refs[ia] == sb_refs[ib]) { ++cand.coupling_with_sb; ++ia; ++ib; }
            else if (refs[ia] < sb_refs[ib]) ++ia;
            else ++ib;
        }
        candidates.push_back(std::move(cand));
    }

    std::int64_t max_cocite = 0;
    std::int64_t max_coupling = 0;
    for (const auto& c : candidates) {
        max_cocite = std::max(max_cocite, c.cocite_weight_with_sb);
        max_coupling = std::max(max_coupling, c.coupling_with_sb);
    }
    for (auto& c : candidates) {
        const double cocite =
            max_cocite > 0 ? static_cast<double>(c.cocite_weight_with_sb) / max_cocite : 0.0;
        const double coupling =
            max_coupling > 0 ? static_cast<double>(c.coupling_with_sb) / max_coupling : 0.0;
        const double closeness =
            c.year < *awake ? 0.0 : 1.0 / (1.0 + static_cast<double>(c.year - *awake));
        c.score = config.weight_cocite * cocite + config.weight_coupling * coupling +
                  config.weight_earliness * closeness;
        if (c.early_passing_prince) c.score *= config.early_penalty;
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const PrinceCandidate& a, const PrinceCandidate& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.pub_id < b.pub_id;
              });
    return candidates;
}

std::vector<PrinceCandidate> rank_princes(const Corpus& corpus, std::string_view sb_id,
                                          const PrinceConfig& config) {
    const auto sb = corpus.find_publication(sb_id);
    if (!sb) throw std::invalid_argument("unknown publication id: " + std::string(sb_id));
    return rank_princes(corpus, *sb, config);
}

// ---------------------------------------------------------------------------
// Export

GraphFormat graph_format_from_string(const std::string& name) {
    if (name == "graphml") return GraphFormat::graphml;
    if (name == "dot") return GraphFormat::dot;
    if (name == "edgelist") return GraphFormat::edgelist;
    throw std::invalid_argument("unknown graph format: " + name);
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string dot_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

void write_graphml(const WeightedGraph& g, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"node\" attr.name=\"weight\" attr.type=\"long\"/>\n"
        << "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"G\" edgedefault=\""
        << (g.directed ? "directed" : "undirected") << "\">\n";
    for (const auto& n : g.nodes) {
        out << "    <node id=\"" << xml_escape(n.id) << "\">\n"
            << "      <data key=\"label\">" << xml_escape(n.label) << "</data>\n"
            << "      <data key=\"weight\">" << n.weight << "</data>\n"
            << "    </node>\n";
    }
    for (const auto& e : g.edges) {
        out << "    <edge source=\"" << xml_escape(g.nodes[e.u].id) << "\" target=\""
            << xml_escape(g.nodes[e.v].id) << "\">\n"
            << "      <data key=\"w\">" << detail::fmt_double(e.weight) << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void write_dot(const WeightedGraph& g, std::ostream& out) {
    out << (g.directed ? "digraph G {\n" : "graph G {\n");
    for (const auto& n : g.nodes) {
        out << "  \"" << dot_escape(n.id) << "\" [label=\"" << dot_escape(n.label)
            << "\", weight=" << n.weight << "];\n";
    }
    const char* arrow = g.directed ? " -> " : " -- ";
    for (const auto& e : g.edges) {
        out << "  \"" << dot_escape(g.nodes[e.u].id) << "\"" << arrow << "\""
            << dot_escape(g.nodes[e.v].id) << "\" [weight="
            << detail::fmt_double(e.weight) << "];\n";
    }
    out << "}\n";
}

// Tab-separated, one header line:
//   # sbgraph directed={0,1} nodes=N edges=M
//   node <id> <weight> <label>
//   edge <u-id> <v-id> <weight>
std::string tsv_safe(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return out;
}

void write_edgelist(const WeightedGraph& g, std::ostream& out) {
    out << "# sbgraph directed=" << (g.directed ? 1 : 0) << " nodes=" << g.nodes.size()
        << " edges=" << g.edges.size() << "\n";
    for (const auto& n : g.nodes)
        out << "node\t" << tsv_safe(n.id) << "\t" << n.weight << "\t" << tsv_safe(n.label)
            << "\n";
    for (const auto& e : g.edges)
        out << "edge\t" << tsv_safe(g.nodes[e.u].id) << "\t" << tsv_safe(g.nodes[e.v].id)
            << "\t" << detail::fmt_double(e.weight) << "\n";
}

}  // namespace

void write_graph(const WeightedGraph& graph, GraphFormat format, std::ostream& out) {
    switch (format) {
        case GraphFormat::graphml: write_graphml(graph, out); break;
        case GraphFormat::dot: write_dot(graph, out); break;
        case GraphFormat::edgelist: write_edgelist(graph, out); break;
    }
}

void export_graph(const WeightedGraph& graph, GraphFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_graph(graph, format, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

WeightedGraph read_edgelist(const std::string& path) {
    detail::LineReader reader(path);
    std::string_view line;
    if (!reader.next(line) || line.rfind("# sbgraph ", 0) != 0)
        throw std::runtime_error(path + ": not an sbgraph edgelist");
    WeightedGraph g;
    g.directed = line.find("directed=1") != std::string_view::npos;

    std::unordered_map<std::string, std::uint32_t> index_of;
    while (reader.next(line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        const auto where = [&] {
            return path + ":" + std::to_string(reader.line_number());
        };
        if (fields[0] == "node") {
            if (fields.size() != 4) throw std::runtime_error(where() + ": bad node line");
            GraphNode n;
            n.id = std::string(fields[1]);
            if (std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(),
                                n.weight).ec != std::errc{})
                throw std::runtime_error(where() + ": bad node weight");
            n.label = std::string(fields[3]);
            index_of[n.id] = static_cast<std::uint32_t>(g.nodes.size());
            g.nodes.push_back(std::move(n));
        } else if (fields[0] == "edge") {
            if (fields.size() != 4) throw std::runtime_error(where() + ": bad edge line");
            const auto u = index_of.find(std::string(fields[1]));
            const auto v = index_of.find(std::string(fields[2]));
            if (u == index_of.end() || v == index_of.end())
                throw std::runtime_error(where() + ": edge references unknown node");
            double w = 0.0;
            if (std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(),
                                w).ec != std::errc{})
                throw std::runtime_error(where() + ": bad edge weight");
            g.edges.push_back({u->second, v->second, w});
        } else {
            throw std::runtime_error(where() + ": unknown record type");
        }
    }
    g.canonicalize();
    return g;
}

}  // namespace sbeauty
