#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "sbeauty/netgraph.hpp"
#include "sbeauty/sbdetect.hpp"
#include "sbeauty/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace sbeauty;
using fixtures::add_citers;
using fixtures::corpus_of;
using fixtures::edge;
using fixtures::pub;

namespace {

double edge_weight(const WeightedGraph& g, const std::string& a, const std::string& b) {
    const auto ia = g.node_index(a);
    const auto ib = g.node_index(b);
    if (!ia || !ib) return -1.0;
    for (const auto& e : g.edges) {
        if ((e.u == *ia && e.v == *ib) || (e.u == *ib && e.v == *ia)) return e.weight;
    }
    return 0.0;
}

std::int64_t node_weight(const WeightedGraph& g, const std::string& id) {
    const auto i = g.node_index(id);
    return i ? g.nodes[*i].weight : -1;
}

// Citing papers p1..p3 with reference sets {A,B}, {A,B}, {A,C}.
Corpus small_cocite_corpus() {
    std::vector<Publication> pubs{pub("A", 1980), pub("B", 1981, {"Bee, B."}),
                                  pub("C", 1982, {"Cee, C."}),
                                  pub("p1", 1990, {"One, O."}),
                                  pub("p2", 1991, {"Two, T."}),
                                  pub("p3", 1992, {"Three, T."})};
    std::vector<CitationEdge> edges{edge("p1", "A"), edge("p1", "B"), edge("p2", "A"),
                                    edge("p2", "B"), edge("p3", "A"), edge("p3", "C")};
    return corpus_of(pubs, edges);
}

std::vector<PubIndex> ids_to_indexes(const Corpus& corpus,
                                     const std::vector<std::string>& ids) {
    std::vector<PubIndex> out;
    for (const auto& id : ids) out.push_back(*corpus.find_publication(id));
    return out;
}

}  // namespace

TEST_CASE("co-citation weights count citing papers per reference pair") {
    const Corpus corpus = small_cocite_corpus();
    const auto citers = ids_to_indexes(corpus, {"p1", "p2", "p3"});

    const WeightedGraph g1 = cocitation_graph(corpus, citers, 1);
    CHECK(edge_weight(g1, "A", "B") == 2.0);
    CHECK(edge_weight(g1, "A", "C") == 1.0);
    CHECK(node_weight(g1, "A") == 3);
    CHECK(node_weight(g1, "B") == 2);
    CHECK(node_weight(g1, "C") == 1);

    SUBCASE("threshold 2 keeps only the A-B edge and drops the isolate") {
        const WeightedGraph g2 = cocitation_graph(corpus, citers, 2);
        CHECK(g2.edges.size() == 1);
        CHECK(edge_weight(g2, "A", "B") == 2.0);
        CHECK_FALSE(g2.node_index("C").has_value());
    }
    SUBCASE("keep-isolates retains unconnected references") {
        const WeightedGraph g2 = cocitation_graph(corpus, citers, 2, true);
        CHECK(g2.node_index("C").has_value());
        CHECK(g2.edges.size() == 1);
    }
    SUBCASE("a single citing paper cannot reach threshold 2") {
        const WeightedGraph g = cocitation_graph(
            corpus, ids_to_indexes(corpus, {"p3"}), 2);
        CHECK(g.edges.empty());
    }
}

TEST_CASE("the commonly cited paper has maximal node weight in its citers' map") {
    std::vector<Publication> pubs{pub("sb", 1985, {"Sleeper, S."}), pub("other", 1984)};
    std::vector<CitationEdge> edges;
    for (int i = 0; i < 12; ++i) {
        const std::string id = "citer" + std::to_string(i);
        pubs.push_back(pub(id, 2000 + i % 5, {"C" + std::to_string(i) + ", X."}));
        edges.push_back(edge(id, "sb"));
        if (i % 2 == 0) edges.push_back(edge(id, "other"));
    }
    const Corpus corpus = corpus_of(pubs, edges);
    const auto sb = *corpus.find_publication("sb");
    const auto citers_span = corpus.citers_of(sb);
    const WeightedGraph g = cocitation_graph(
        corpus, {citers_span.begin(), citers_span.end()}, 1);
    CHECK(node_weight(g, "sb") == 12);
    for (const auto& n : g.nodes) CHECK(n.weight <= node_weight(g, "sb"));
}

TEST_CASE("bibliographic coupling counts and optionally normalizes shared references") {
    std::vector<Publication> pubs{pub("A", 1980), pub("B", 1980, {"B, B."}),
                                  pub("C", 1980, {"C, C."}), pub("D", 1980, {"D, D."}),
                                  pub("x", 1990, {"Ex, X."}), pub("y", 1991, {"Why, Y."}),
                                  pub("z", 1992, {"Zed, Z."})};
    std::vector<CitationEdge> edges{edge("x", "A"), edge("x", "B"), edge("x", "C"),
                                    edge("y", "B"), edge("y", "C"), edge("y", "D"),
                                    edge("z", "D")};
    const Corpus corpus = corpus_of(pubs, edges);
    const auto papers = ids_to_indexes(corpus, {"x", "y", "z"});

    const WeightedGraph raw = bibcoupling_graph(corpus, papers, 1);
    CHECK(edge_weight(raw, "x", "y") == 2.0);
    CHECK(edge_weight(raw, "y", "z") == 1.0);
    CHECK(edge_weight(raw, "x", "z") == 0.0);

    const WeightedGraph cosine =
        bibcoupling_graph(corpus, papers, 1, CouplingNormalize::cosine);
    CHECK(edge_weight(cosine, "x", "y") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    SUBCASE("threshold applies to the raw shared count even under cosine") {
        const WeightedGraph t2 =
            bibcoupling_graph(corpus, papers, 2, CouplingNormalize::cosine);
        CHECK(t2.edges.size() == 1);
        CHECK(edge_weight(t2, "x", "y") == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("papers with references unlike all others sit isolated") {
        // z shares nothing with x; at min-shared 2 it has no edges at all.
        const WeightedGraph t2 = bibcoupling_graph(corpus, papers, 2);
        const auto zi = t2.node_index("z");
        REQUIRE(zi.has_value());
        for (const auto& e : t2.edges) {
            CHECK(e.u != *zi);
            CHECK(e.v != *zi);
        }
    }
    SUBCASE("coupling weight never exceeds the shorter reference list") {
        for (const auto& e : raw.edges) {
            const auto min_refs = std::min(raw.nodes[e.u].weight, raw.nodes[e.v].weight);
            CHECK(e.weight <= static_cast<double>(min_refs));
        }
    }
}

TEST_CASE("early-citer subnet holds the SB, its first citers and their relations") {
    std::vector<Publication> pubs{pub("sb", 1990, {"Sleeper, S."}),
                                  pub("c1", 1995, {"One, O."}),
                                  pub("c2", 1997, {"Two, T."}),
                                  pub("c3", 1999, {"Three, T."})};
    std::vector<CitationEdge> edges{edge("c1", "sb"), edge("c2", "sb"), edge("c3", "sb"),
                                    edge("c3", "c1")};
    const Corpus corpus = corpus_of(pubs, edges);

    const WeightedGraph g = early_citer_subnet(corpus, "sb", 25);
    CHECK(g.directed);
    CHECK(g.nodes.size() == 4);
    CHECK(g.edges.size() == 4);

    SUBCASE("an SB with no citers yields a single node") {
        const Corpus lone = corpus_of({pub("sb", 1990)});
        const WeightedGraph g1 = early_citer_subnet(lone, "sb", 25);
        CHECK(g1.nodes.size() == 1);
        CHECK(g1.edges.empty());
    }
    SUBCASE("k truncates to the earliest citers, ties by id") {
        const WeightedGraph g2 = early_citer_subnet(corpus, "sb", 2);
        CHECK(g2.nodes.size() == 3);  // sb + c1 + c2
        CHECK(g2.node_index("c1").has_value());
        CHECK(g2.node_index("c2").has_value());
        CHECK_FALSE(g2.node_index("c3").has_value());
    }
    SUBCASE("unknown sb id is rejected") {
        CHECK_THROWS_AS(early_citer_subnet(corpus, "ghost", 25), std::invalid_argument);
    }
}

TEST_CASE("a single-author citer cluster shows up as a connected subgraph") {
    std::vector<Publication> pubs{pub("sb", 1992, {"Sleeper, S."})};
    std::vector<CitationEdge> edges;
    // Five papers by one first author, chained by citations, all citing sb.
    for (int i = 0; i < 5; ++i) {
        const std::string id = "kam" + std::to_string(i);
        pubs.push_back(pub(id, 1994 + i, {"Kam, S. C."}));
        edges.push_back(edge(id, "sb"));
        if (i > 0) edges.push_back(edge(id, "kam" + std::to_string(i - 1)));
    }
    for (int i = 0; i < 4; ++i) {
        const std::string id = "other" + std::to_string(i);
        pubs.push_back(pub(id, 1995 + i, {"Other" + std::to_string(i) + ", O."}));
        edges.push_back(edge(id, "sb"));
    }
    const Corpus corpus = corpus_of(pubs, edges);
    const WeightedGraph g = early_citer_subnet(corpus, "sb", 25);
    CHECK(g.nodes.size() == 10);
    // 9 citer->sb edges plus the 4 chain edges.
    CHECK(g.edges.size() == 13);
}

TEST_CASE("graph oracles: brute-force pair counting matches on synthetic corpora") {
    SynthConfig config;
    config.n_publications = 150;
    config.year_min = 1980;
    config.year_max = 2005;
    config.refs_per_pub = 4.0;
    config.seed = 31;
    const SynthOutput output = generate(config);
    const Corpus corpus = build_corpus(output);

    std::vector<CitationEdge> raw_edges;
    for (const auto& [citing, cited] : output.edges)
        raw_edges.push_back({output.publications[citing].id,
                             output.publications[cited].id});

    // Citing set: the 30 most recent papers.
    std::vector<std::string> citing_ids;
    std::vector<PubIndex> citing_set;
    for (PubIndex i = 0; i < corpus.publication_count(); ++i)
        if (corpus.publication(i).year >= 2000) {
            citing_ids.push_back(corpus.publication(i).id);
            citing_set.push_back(i);
        }
    REQUIRE(citing_ids.size() >= 10);

    const auto brute = oracles::brute_cocitation(raw_edges, citing_ids);
    const WeightedGraph g = cocitation_graph(corpus, citing_set, 1, true);
    std::size_t nonzero_nodes = 0;
    for (const auto& [id, w] : brute.node_weights) {
        CHECK(node_weight(g, id) == w);
        ++nonzero_nodes;
    }
    CHECK(g.nodes.size() == nonzero_nodes);
    std::size_t edge_total = 0;
    for (const auto& [pair, w] : brute.edge_weights) {
        CHECK(edge_weight(g, pair.first, pair.second) == static_cast<double>(w));
        ++edge_total;
    }
    CHECK(g.edges.size() == edge_total);

    SUBCASE("coupling against its oracle") {
        const auto bc = oracles::brute_coupling(raw_edges, citing_ids);
        const WeightedGraph cg = bibcoupling_graph(corpus, citing_set, 1);
        for (const auto& [pair, w] : bc.edge_weights)
            CHECK(edge_weight(cg, pair.first, pair.second) == static_cast<double>(w));
        CHECK(cg.edges.size() == bc.edge_weights.size());
    }

    SUBCASE("raising the threshold only removes edges, never reweights") {
        WeightedGraph prev = cocitation_graph(corpus, citing_set, 1);
        for (std::int64_t t = 2; t <= 5; ++t) {
            const WeightedGraph next = cocitation_graph(corpus, citing_set, t);
            CHECK(next.edges.size() <= prev.edges.size());
            for (const auto& e : next.edges) {
                const auto w = edge_weight(prev, next.nodes[e.u].id, next.nodes[e.v].id);
                CHECK(w == e.weight);
                CHECK(e.weight >= static_cast<double>(t));
            }
            prev = next;
        }
    }

    SUBCASE("co-citation weight is bounded by both node weights") {
        for (const auto& e : g.edges) {
            CHECK(e.weight <= static_cast<double>(g.nodes[e.u].weight));
            CHECK(e.weight <= static_cast<double>(g.nodes[e.v].weight));
        }
    }
}

namespace {

// An SB asleep through the 1990s that awakens in 2003, with two prince
// candidates: a pre-awakening highly cited citer and an at-awakening citer
// that is strongly co-cited and coupled with the SB.
struct PrinceFixture {
    std::vector<Publication> pubs;
    std::vector<CitationEdge> edges;

    PrinceFixture() {
        pubs.push_back(pub("sb", 1990, {"Sleeper, S."}));
        // Shared references for coupling.
        for (int i = 0; i < 4; ++i) {
            pubs.push_back(pub("ref" + std::to_string(i), 1980 + i,
                               {"Ref" + std::to_string(i) + ", R."}));
            edges.push_back(edge("sb", "ref" + std::to_string(i)));
        }
        // Early passing prince: cites sb in 1999, heavily cited itself.
        pubs.push_back(pub("early", 1999, {"Mack, E."}));
        edges.push_back(edge("early", "sb"));
        // True prince: cites sb in 2003, shares 3 references with sb.
        pubs.push_back(pub("prince", 2003, {"Neels, M."}));
        edges.push_back(edge("prince", "sb"));
        for (int i = 0; i < 3; ++i)
            edges.push_back(edge("prince", "ref" + std::to_string(i)));
        // Awakening-era citers: 6 per year 2003-2006, most citing the
        // prince as well (driving its co-citation with sb).
        for (int year = 2003; year <= 2006; ++year) {
            for (int i = 0; i < 6; ++i) {
                const std::string id =
                    "wake" + std::to_string(year) + "_" + std::to_string(i);
                pubs.push_back(pub(id, year, {"Wake" + id + ", W."}));
                edges.push_back(edge(id, "sb"));
                if (i < 5 && !(year == 2003 && i == 0)) edges.push_back(edge(id, "prince"));
            }
        }
        // The early citer's own citations: 120 unrelated papers.
        for (int i = 0; i < 120; ++i) {
            const std::string id = "fan" + std::to_string(i);
            pubs.push_back(pub(id, 2000 + i % 8, {"Fan" + std::to_string(i) + ", F."}));
            edges.push_back(edge(id, "early"));
        }
        // Give the prince 110 citers of its own.
        for (int i = 0; i < 110; ++i) {
            const std::string id = "pf" + std::to_string(i);
            pubs.push_back(pub(id, 2004 + i % 6, {"Pf" + std::to_string(i) + ", P."}));
            edges.push_back(edge(id, "prince"));
        }
    }
};

}  // namespace

TEST_CASE("prince ranking: the at-awakening, strongly co-cited citer wins") {
    const PrinceFixture fx;
    const Corpus corpus = corpus_of(fx.pubs, fx.edges);

    PrinceConfig config;
    config.min_own_citations = 100;
    const auto princes = rank_princes(corpus, "sb", config);
    REQUIRE(princes.size() == 2);
    CHECK(princes[0].pub_id == "prince");
    CHECK_FALSE(princes[0].early_passing_prince);
    CHECK(princes[0].earliness == 0);
    CHECK(princes[1].pub_id == "early");
    CHECK(princes[1].early_passing_prince);
    CHECK(princes[1].earliness < 0);
    CHECK(princes[0].score > princes[1].score);

    SUBCASE("scores recompute from the stated formula") {
        std::int64_t max_cocite = 0, max_coupling = 0;
        for (const auto& c : princes) {
            max_cocite = std::max(max_cocite, c.cocite_weight_with_sb);
            max_coupling = std::max(max_coupling, c.coupling_with_sb);
        }
        for (const auto& c : princes) {
            const double nc = max_cocite ? double(c.cocite_weight_with_sb) / max_cocite : 0;
            const double nb = max_coupling ? double(c.coupling_with_sb) / max_coupling : 0;
            const double clos = c.earliness < 0 ? 0.0 : 1.0 / (1.0 + c.earliness);
            double expect = 0.5 * nc + 0.3 * nb + 0.2 * clos;
            if (c.early_passing_prince) expect *= 0.5;
            CHECK(c.score == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("no candidate reaches C_min -> empty list") {
        PrinceConfig high = config;
        high.min_own_citations = 100000;
        CHECK(rank_princes(corpus, "sb", high).empty());
    }
    SUBCASE("self-citing candidates can be excluded on request") {
        // Same fixture, but the early citer shares an author with the SB.
        auto pubs2 = fx.pubs;
        for (auto& p : pubs2)
            if (p.id == "early") p.authors = {"Sleeper, S.", "Mack, E."};
        const Corpus corpus2 = corpus_of(pubs2, fx.edges);
        PrinceConfig excl = config;
        excl.exclude_self_citers = true;
        const auto filtered = rank_princes(corpus2, "sb", excl);
        REQUIRE(filtered.size() == 1);
        CHECK(filtered[0].pub_id == "prince");
        // Without the flag the self-citing candidate stays in.
        CHECK(rank_princes(corpus2, "sb", config).size() == 2);
    }
    SUBCASE("an SB without an awakening is an error") {
        const Corpus quiet = corpus_of({pub("q", 1990)});
        CHECK_THROWS_AS(rank_princes(quiet, "q", config), std::runtime_error);
    }
    SUBCASE("ranking is invariant under permutation of the input") {
        auto pubs2 = fx.pubs;
        auto edges2 = fx.edges;
        std::reverse(pubs2.begin(), pubs2.end());
        std::reverse(edges2.begin(), edges2.end());
        const Corpus corpus2 = corpus_of(pubs2, edges2);
        const auto princes2 = rank_princes(corpus2, "sb", config);
        REQUIRE(princes2.size() == princes.size());
        for (std::size_t i = 0; i < princes.size(); ++i) {
            CHECK(princes2[i].pub_id == princes[i].pub_id);
            CHECK(princes2[i].score == princes[i].score);
        }
    }
}

TEST_CASE("graph export: canonical, bit-stable, and edgelist round-trips") {
    WeightedGraph g;
    g.directed = false;
    g.nodes = {{"b", "Bee 1990", 2}, {"a", "Aye 1989", 3}};
    g.edges = {{1, 0, 2.5}};
    g.canonicalize();
    CHECK(g.nodes[0].id == "a");
    CHECK(g.edges[0].u == 0);
    CHECK(g.edges[0].v == 1);

    std::ostringstream edgelist;
    write_graph(g, GraphFormat::edgelist, edgelist);
    const std::string text = edgelist.str();
    // Header + 2 nodes + 1 edge = 4 lines.
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);

    fixtures::TempDir dir;
    export_graph(g, GraphFormat::edgelist, dir.file("g.edgelist"));
    const WeightedGraph back = read_edgelist(dir.file("g.edgelist"));
    CHECK(back == g);

    SUBCASE("exports are deterministic byte for byte") {
        export_graph(g, GraphFormat::edgelist, dir.file("g2.edgelist"));
        CHECK(fixtures::read_file(dir.file("g.edgelist")) ==
              fixtures::read_file(dir.file("g2.edgelist")));
        export_graph(g, GraphFormat::graphml, dir.file("g.graphml"));
        export_graph(g, GraphFormat::graphml, dir.file("g2.graphml"));
        CHECK(fixtures::read_file(dir.file("g.graphml")) ==
              fixtures::read_file(dir.file("g2.graphml")));
    }
    SUBCASE("dot and graphml are structurally sane") {
        std::ostringstream dot;
        write_graph(g, GraphFormat::dot, dot);
        CHECK(dot.str().find("graph G {") == 0);
        CHECK(dot.str().find("\"a\" -- \"b\"") != std::string::npos);
        std::ostringstream xml;
        write_graph(g, GraphFormat::graphml, xml);
        CHECK(xml.str().find("<graphml") != std::string::npos);
        CHECK(xml.str().find("edgedefault=\"undirected\"") != std::string::npos);
    }
    SUBCASE("directed graphs round-trip too") {
        WeightedGraph d;
        d.directed = true;
        d.nodes = {{"x", "x", 1}, {"y", "y", 1}};
        d.edges = {{0, 1, 1.0}};
        d.canonicalize();
        export_graph(d, GraphFormat::edgelist, dir.file("d.edgelist"));
        CHECK(read_edgelist(dir.file("d.edgelist")) == d);
    }
    SUBCASE("unknown format names are rejected") {
        CHECK_THROWS_AS(graph_format_from_string("svg"), std::invalid_argument);
    }
}
