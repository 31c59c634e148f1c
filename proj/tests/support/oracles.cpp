#include "support/oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

#include "sbeauty/namematch.hpp"

namespace oracles {

namespace {

std::set<sbeauty::NameKey> author_keys(const sbeauty::Publication& pub) {
    std::set<sbeauty::NameKey> keys;
    for (const auto& a : pub.authors)
        if (auto k = sbeauty::try_normalize_name(a)) keys.insert(*k);
    return keys;
}

bool keys_overlap(const std::set<sbeauty::NameKey>& a, const std::set<sbeauty::NameKey>& b) {
    for (const auto& k : a)
        if (b.count(k)) return true;
    return false;
}

std::string depth_of(double cs) {
    if (cs == 0.0) return "coma";
    if (cs <= 0.5) return "very_deep";
    if (cs <= 1.0) return "deep";
    return "light";
}

}  // namespace

std::vector<NaiveSB> naive_detect(const std::vector<sbeauty::Publication>& pubs,
                                  const std::vector<sbeauty::CitationEdge>& edges,
                                  const sbeauty::SBParams& params,
                                  sbeauty::YearRange pub_year_range,
                                  bool exclude_self_citations) {
    std::unordered_map<std::string, const sbeauty::Publication*> by_id;
    for (const auto& p : pubs) by_id[p.id] = &p;

    // Name keys computed once per publication; still no citation indexes.
    std::unordered_map<std::string, std::set<sbeauty::NameKey>> keys_by_id;
    if (exclude_self_citations)
        for (const auto& p : pubs) keys_by_id[p.id] = author_keys(p);

    int horizon = 0;
    bool any = false;
    for (const auto& p : pubs) {
        horizon = any ? std::max(horizon, p.year) : p.year;
        any = true;
    }

    std::vector<NaiveSB> out;
    for (const auto& pub : pubs) {
        if (!pub_year_range.contains(pub.year)) continue;
        const int awake_start = pub.year + params.sleep_years;
        const int available = horizon - awake_start + 1;
        const int a = std::min(params.awake_max_years, available);
        if (a < params.awake_min_years) continue;

        const std::set<sbeauty::NameKey>* cited_keys =
            exclude_self_citations ? &keys_by_id[pub.id] : nullptr;

        // Per-year citation counts straight off the edge list; duplicate
        // (citing, cited) pairs and self-loops count once / never.
        std::set<std::string> seen_citers;
        std::map<int, std::int64_t> per_year;
        for (const auto& e : edges) {
            if (e.cited_id != pub.id || e.citing_id == pub.id) continue;
            const auto it = by_id.find(e.citing_id);
            if (it == by_id.end()) continue;
            if (!seen_citers.insert(e.citing_id).second) continue;
            if (exclude_self_citations &&
                keys_overlap(keys_by_id[e.citing_id], *cited_keys))
                continue;
            ++per_year[it->second->year];
        }

        std::int64_t sleep_total = 0;
        for (int y = pub.year; y <= pub.year + params.sleep_years - 1; ++y) {
            const auto it = per_year.find(y);
            if (it != per_year.end()) sleep_total += it->second;
        }
        std::int64_t awake_total = 0;
        for (int y = awake_start; y <= awake_start + a - 1; ++y) {
            const auto it = per_year.find(y);
            if (it != per_year.end()) awake_total += it->second;
        }
        const double cs = static_cast<double>(sleep_total) / params.sleep_years;
        const double ca = static_cast<double>(awake_total) / a;
        if (cs > params.cs_max || ca < params.ca_min) continue;

        NaiveSB rec;
        rec.pub_id = pub.id;
        rec.sleep_first = pub.year;
        rec.sleep_last = pub.year + params.sleep_years - 1;
        rec.awake_first = awake_start;
        rec.awake_last = awake_start + a - 1;
        rec.cs = cs;
        rec.ca = ca;
        rec.total_awake = awake_total;
        rec.depth = depth_of(cs);
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NaiveSB> to_naive(const std::vector<sbeauty::SBRecord>& records) {
    std::vector<NaiveSB> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        NaiveSB rec;
        rec.pub_id = r.pub_id;
        rec.sleep_first = r.sleep_window.first;
        rec.sleep_last = r.sleep_window.last;
        rec.awake_first = r.awake_window.first;
        rec.awake_last = r.awake_window.last;
        rec.cs = r.cs;
        rec.ca = r.ca;
        rec.total_awake = r.total_awake_citations;
        rec.depth = sbeauty::to_string(r.depth);
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end());
    return out;
}

BruteGraph brute_cocitation(const std::vector<sbeauty::CitationEdge>& edges,
                            const std::vector<std::string>& citing_ids) {
    BruteGraph g;
    std::set<std::string> citers(citing_ids.begin(), citing_ids.end());
    for (const auto& citer : citers) {
        std::set<std::string> refs;
        for (const auto& e : edges)
            if (e.citing_id == citer && e.cited_id != citer) refs.insert(e.cited_id);
        for (const auto& r : refs) ++g.node_weights[r];
        for (auto a = refs.begin(); a != refs.end(); ++a) {
            auto b = a;
            for (++b; b != refs.end(); ++b) ++g.edge_weights[{*a, *b}];
        }
    }
    return g;
}

BruteGraph brute_coupling(const std::vector<sbeauty::CitationEdge>& edges,
                          const std::vector<std::string>& paper_ids) {
    BruteGraph g;
    std::vector<std::string> papers(paper_ids.begin(), paper_ids.end());
    std::sort(papers.begin(), papers.end());
    papers.erase(std::unique(papers.begin(), papers.end()), papers.end());

    std::vector<std::set<std::string>> refs(papers.size());
    for (std::size_t i = 0; i < papers.size(); ++i) {
        for (const auto& e : edges)
            if (e.citing_id == papers[i] && e.cited_id != papers[i])
                refs[i].insert(e.cited_id);
        g.node_weights[papers[i]] = static_cast<std::int64_t>(refs[i].size());
    }
    for (std::size_t i = 0; i < papers.size(); ++i)
        for (std::size_t j = i + 1; j < papers.size(); ++j) {
            std::int64_t shared = 0;
            for (const auto& r : refs[i])
                if (refs[j].count(r)) ++shared;
            if (shared > 0) g.edge_weights[{papers[i], papers[j]}] = shared;
        }
    return g;
}

bool eval_truth_table(const sbeauty::QueryNode& ast,
                      const std::map<std::string, bool>& assignment) {
    using Kind = sbeauty::QueryNode::Kind;
    switch (ast.kind) {
        case Kind::term: {
            const auto it = assignment.find(ast.text);
            return it != assignment.end() && it->second;
        }
        case Kind::wildcard:
        case Kind::phrase:
            return false;  // not part of this oracle
        case Kind::op_not:
            return !eval_truth_table(ast.children.front(), assignment);
        case Kind::op_and:
            for (const auto& c : ast.children)
                if (!eval_truth_table(c, assignment)) return false;
            return true;
        case Kind::op_or:
            for (const auto& c : ast.children)
                if (eval_truth_table(c, assignment)) return true;
            return false;
    }
    return false;
}

namespace {

// Deliberately separate tokenizer: ASCII-only, index-based, no folding table.
std::vector<std::string> naive_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : text) {
        const unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool naive_seq_match(const std::vector<std::string>& pattern, bool prefix_last,
                     const std::vector<std::string>& doc) {
    if (pattern.empty() || doc.size() < pattern.size()) return false;
    for (std::size_t s = 0; s + pattern.size() <= doc.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            if (i + 1 == pattern.size() && prefix_last) {
                if (doc[s + i].rfind(pattern[i], 0) != 0) ok = false;
            } else if (doc[s + i] != pattern[i]) {
                ok = false;
            }
            if (!ok) break;
        }
        if (ok) return true;
    }
    return false;
}

bool naive_eval(const sbeauty::QueryNode& ast, const std::vector<std::string>& doc) {
    using Kind = sbeauty::QueryNode::Kind;
    switch (ast.kind) {
        case Kind::term:
            return naive_seq_match(naive_tokens(ast.text), false, doc);
        case Kind::wildcard:
            return naive_seq_match(naive_tokens(ast.text), true, doc);
        case Kind::phrase: {
            std::vector<std::string> pattern;
            for (const auto& w : ast.phrase) {
                const auto parts = naive_tokens(w);
                pattern.insert(pattern.end(), parts.begin(), parts.end());
            }
            return naive_seq_match(pattern, ast.phrase_prefix_last, doc);
        }
        case Kind::op_not:
            return !naive_eval(ast.children.front(), doc);
        case Kind::op_and:
            for (const auto& c : ast.children)
                if (!naive_eval(c, doc)) return false;
            return true;
        case Kind::op_or:
            for (const auto& c : ast.children)
                if (naive_eval(c, doc)) return true;
            return false;
    }
    return false;
}

}  // namespace

bool naive_match(const sbeauty::QueryNode& ast, const std::string& title,
                 const std::string& abstract) {
    std::vector<std::string> doc = naive_tokens(title);
    const auto more = naive_tokens(abstract);
    doc.insert(doc.end(), more.begin(), more.end());
    return naive_eval(ast, doc);
}

NaiveFit normal_equations_fit(const sbeauty::YearSeries& series) {
    std::vector<double> xs, ys;
    for (int y = series.start_year; y <= series.end_year(); ++y)
        if (series.at(y) > 0) {
            xs.push_back(static_cast<double>(y));
            ys.push_back(std::log(static_cast<double>(series.at(y))));
        }
    const double n = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    NaiveFit fit;
    fit.slope = sxy / sxx;
    // Intercept re-based to the first positive year to match the library.
    fit.intercept = mean_y - fit.slope * (mean_x - xs.front());
    return fit;
}

namespace {

std::uint64_t next_rand(std::uint64_t& state) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
}

}  // namespace

sbeauty::QueryNode random_ast(std::uint64_t& state, const std::vector<std::string>& tokens,
                              int max_depth) {
    using Kind = sbeauty::QueryNode::Kind;
    sbeauty::QueryNode node;
    const std::uint64_t pick = next_rand(state) % (max_depth <= 0 ? 1 : 4);
    if (pick == 0 || max_depth <= 0) {
        node.kind = Kind::term;
        node.text = tokens[next_rand(state) % tokens.size()];
        return node;
    }
    if (pick == 1) {
        node.kind = Kind::op_not;
        node.children.push_back(random_ast(state, tokens, max_depth - 1));
        return node;
    }
    node.kind = pick == 2 ? Kind::op_and : Kind::op_or;
    const std::size_t n_children = 2 + next_rand(state) % 2;
    for (std::size_t i = 0; i < n_children; ++i)
        node.children.push_back(random_ast(state, tokens, max_depth - 1));
    return node;
}

}  // namespace oracles
