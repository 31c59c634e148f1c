#include "sbeauty/textmine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "detail/rng.hpp"
#include "detail/textnorm.hpp"

namespace sbeauty {

// ---------------------------------------------------------------------------
// Query parsing

namespace {

struct Token {
    enum class Kind { word, lparen, rparen, op_and, op_or, op_not, end };
    Kind kind;
    std::string text;   // folded word
    char bracket = 0;   // '(' or '[' for group tokens
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : folded_(detail::fold_to_ascii_lower(text)) {
        pos_ = 0;
        advance();
    }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < folded_.size() &&
               (folded_[pos_] == ' ' || folded_[pos_] == '\t' || folded_[pos_] == '\n' ||
                folded_[pos_] == '\r'))
            ++pos_;
        if (pos_ >= folded_.size()) {
            current_ = {Token::Kind::end, "", 0};
            return;
        }
        const char c = folded_[pos_];
        if (c == '(' || c == '[') {
            current_ = {Token::Kind::lparen, "", c};
            ++pos_;
            return;
        }
        if (c == ')' || c == ']') {
            current_ = {Token::Kind::rparen, "", c};
            ++pos_;
            return;
        }
        std::size_t start = pos_;
        while (pos_ < folded_.size() && folded_[pos_] != ' ' && folded_[pos_] != '\t' &&
               folded_[pos_] != '\n' && folded_[pos_] != '\r' && folded_[pos_] != '(' &&
               folded_[pos_] != ')' && folded_[pos_] != '[' && folded_[pos_] != ']')
            ++pos_;
        std::string word = folded_.substr(start, pos_ - start);
        if (word == "and") current_ = {Token::Kind::op_and, "", 0};
        else if (word == "or") current_ = {Token::Kind::op_or, "", 0};
        else if (word == "not") current_ = {Token::Kind::op_not, "", 0};
        else current_ = {Token::Kind::word, std::move(word), 0};
    }

    std::string folded_;
    std::size_t pos_ = 0;
    Token current_;
};

[[noreturn]] void parse_fail(const std::string& what) {
    throw std::invalid_argument("query parse error: " + what);
}

// A word may carry a single '*', and only as its final character.
std::string check_wildcard(const std::string& word, bool* is_wildcard) {
    const auto star = word.find('*');
    if (star == std::string::npos) {
        *is_wildcard = false;
        return word;
    }
    if (star != word.size() - 1)
        parse_fail("wildcard must be in suffix position: \"" + word + "\"");
    const std::string prefix = word.substr(0, star);
    if (prefix.empty()) parse_fail("bare \"*\" is not a valid term");
    *is_wildcard = true;
    return prefix;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) {}

    QueryNode parse() {
        QueryNode root = parse_or();
        if (lexer_.peek().kind != Token::Kind::end) {
            if (lexer_.peek().kind == Token::Kind::rparen) parse_fail("unbalanced group");
            parse_fail("trailing input after query");
        }
        return root;
    }

private:
    QueryNode parse_or() {
        std::vector<QueryNode> children;
        children.push_back(parse_and());
        while (lexer_.peek().kind == Token::Kind::op_or) {
            lexer_.take();
            children.push_back(parse_and());
        }
        if (children.size() == 1) return std::move(children.front());
        QueryNode node;
        node.kind = QueryNode::Kind::op_or;
        node.children = std::move(children);
        return node;
    }

    QueryNode parse_and() {
        std::vector<QueryNode> children;
        children.push_back(parse_not());
        while (lexer_.peek().kind == Token::Kind::op_and) {
            lexer_.take();
            children.push_back(parse_not());
        }
        if (children.size() == 1) return std::move(children.front());
        QueryNode node;
        node.kind = QueryNode::Kind::op_and;
        node.children = std::move(children);
        return node;
    }

    QueryNode parse_not() {
        if (lexer_.peek().kind == Token::Kind::op_not) {
            lexer_.take();
            QueryNode node;
            node.kind = QueryNode::Kind::op_not;
            node.children.push_back(parse_not());
            return node;
        }
        return parse_atom_sequence();
    }

    QueryNode parse_atom_sequence() {
        const Token& t = lexer_.peek();
        if (t.kind == Token::Kind::lparen) {
            const char open = t.bracket;
            lexer_.take();
            if (lexer_.peek().kind == Token::Kind::rparen) parse_fail("empty group");
            QueryNode inner = parse_or();
            if (lexer_.peek().kind != Token::Kind::rparen) parse_fail("unbalanced group");
            const char close = lexer_.take().bracket;
            if ((open == '(' && close != ')') || (open == '[' && close != ']'))
                parse_fail("mismatched group brackets");
            if (lexer_.peek().kind == Token::Kind::word ||
                lexer_.peek().kind == Token::Kind::lparen)
                parse_fail("expected operator after group");
            return inner;
        }
        if (t.kind != Token::Kind::word) parse_fail("expected a term");

        // Adjacent bare words form a phrase.
        std::vector<std::string> words;
        std::vector<bool> stars;
        while (lexer_.peek().kind == Token::Kind::word) {
            bool star = false;
            words.push_back(check_wildcard(lexer_.take().text, &star));
            stars.push_back(star);
        }
        if (lexer_.peek().kind == Token::Kind::lparen)
            parse_fail("expected operator before group");

        if (words.size() == 1) {
            QueryNode node;
            node.kind = stars[0] ? QueryNode::Kind::wildcard : QueryNode::Kind::term;
            node.text = std::move(words[0]);
            return node;
        }
        for (std::size_t i = 0; i + 1 < stars.size(); ++i)
            if (stars[i])
                parse_fail("wildcard inside a phrase must be on the last word");
        QueryNode node;
        node.kind = QueryNode::Kind::phrase;
        node.phrase = std::move(words);
        node.phrase_prefix_last = stars.back();
        return node;
    }

    Lexer lexer_;
};

}  // namespace

QueryNode parse_query(std::string_view text) {
    bool blank = true;
    for (const char c : text)
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') { blank = false; break; }
    if (blank) parse_fail("empty query");
    return Parser(text).parse();
}

namespace {

void render_node(const QueryNode& node, std::string& out, bool parenthesize_or,
                 bool parenthesize_any) {
    const bool is_bool = node.kind == QueryNode::Kind::op_and ||
                         node.kind == QueryNode::Kind::op_or;
    const bool need_parens =
        (parenthesize_any && is_bool) ||
        (parenthesize_or && node.kind == QueryNode::Kind::op_or);
    if (need_parens) out.push_back('(');
    switch (node.kind) {
        case QueryNode::Kind::term:
            out += node.text;
            break;
        case QueryNode::Kind::wildcard:
            out += node.text;
            out.push_back('*');
            break;
        case QueryNode::Kind::phrase:
            for (std::size_t i = 0; i < node.phrase.size(); ++i) {
                if (i) out.push_back(' ');
                out += node.phrase[i];
            }
            if (node.phrase_prefix_last) out.push_back('*');
            break;
        case QueryNode::Kind::op_not:
            out += "NOT ";
            render_node(node.children.front(), out, false, true);
            break;
        case QueryNode::Kind::op_and:
            for (std::size_t i = 0; i < node.children.size(); ++i) {
                if (i) out += " AND ";
                render_node(node.children[i], out, true, false);
            }
            break;
        case QueryNode::Kind::op_or:
            for (std::size_t i = 0; i < node.children.size(); ++i) {
                if (i) out += " OR ";
                render_node(node.children[i], out, false, false);
            }
            break;
    }
    if (need_parens) out.push_back(')');
}

}  // namespace

std::string render_query(const QueryNode& ast) {
    std::string out;
    render_node(ast, out, false, false);
    return out;
}

// ---------------------------------------------------------------------------
// Matching

namespace {

// Leaf semantics reduce to a token sequence with an optional prefix-match on
// the final token; hyphens and dots inside leaf text split exactly like
// document text does, so WILDCARD("multi-hop") behaves as [multi, hop*].
struct LeafPattern {
    std::vector<std::string> tokens;
    bool prefix_last = false;
};

LeafPattern leaf_pattern(const QueryNode& node) {
    LeafPattern p;
    switch (node.kind) {
        case QueryNode::Kind::term:
            p.tokens = detail::tokenize(node.text);
            break;
        case QueryNode::Kind::wildcard:
            p.tokens = detail::tokenize(node.text);
            p.prefix_last = true;
            break;
        case QueryNode::Kind::phrase:
            for (const auto& w : node.phrase) {
                auto parts = detail::tokenize(w);
                p.tokens.insert(p.tokens.end(), parts.begin(), parts.end());
            }
            p.prefix_last = node.phrase_prefix_last;
            break;
        default:
            break;
    }
    return p;
}

bool pattern_matches(const LeafPattern& p, const std::vector<std::string>& doc) {
    if (p.tokens.empty()) return false;
    const std::size_t m = p.tokens.size();
    if (doc.size() < m) return false;
    for (std::size_t start = 0; start + m <= doc.size(); ++start) {
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i) {
            const std::string& want = p.tokens[i];
            const std::string& have = doc[start + i];
            if (i + 1 == m && p.prefix_last) {
                if (have.compare(0, want.size(), want) != 0) { ok = false; break; }
            } else if (have != want) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

bool match_query(const QueryNode& ast, const std::vector<std::string>& doc_tokens) {
    switch (ast.kind) {
        case QueryNode::Kind::term:
        case QueryNode::Kind::wildcard:
        case QueryNode::Kind::phrase:
            return pattern_matches(leaf_pattern(ast), doc_tokens);
        case QueryNode::Kind::op_not:
            return !match_query(ast.children.front(), doc_tokens);
        case QueryNode::Kind::op_and:
            for (const auto& child : ast.children)
                if (!match_query(child, doc_tokens)) return false;
            return true;
        case QueryNode::Kind::op_or:
            for (const auto& child : ast.children)
                if (match_query(child, doc_tokens)) return true;
            return false;
    }
    return false;
}

bool match_query(const QueryNode& ast, const Publication& pub) {
    std::string text = pub.title;
    if (!pub.abstract.empty()) {
        text += ' ';
        text += pub.abstract;
    }
    return match_query(ast, detail::tokenize(text));
}

YearSeries topic_timeline(const Corpus& corpus, const QueryNode& ast, YearRange range) {
    if (range.empty()) throw std::invalid_argument("empty year range");
    YearSeries series(range.first, range.last);
    for (PubIndex i = 0; i < corpus.publication_count(); ++i) {
        const Publication& pub = corpus.publication(i);
        if (!range.contains(pub.year)) continue;
        if (match_query(ast, pub)) series.add(pub.year, 1);
    }
    return series;
}

// ---------------------------------------------------------------------------
// Concept maps

namespace {

bool numeric_only(const std::string& token) {
    for (const char c : token)
        if (c < '0' || c > '9') return false;
    return true;
}

std::set<std::string> doc_terms(const Publication& pub, int max_gram,
                                const std::unordered_set<std::string>& stopwords) {
    std::string text = pub.title;
    if (!pub.abstract.empty()) {
        text += ' ';
        text += pub.abstract;
    }
    const auto tokens = detail::tokenize(text);
    std::vector<bool> usable(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i)
        usable[i] = !stopwords.count(tokens[i]) && !numeric_only(tokens[i]);

    std::set<std::string> terms;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!usable[i]) continue;
        std::string gram = tokens[i];
        terms.insert(gram);
        for (int n = 2; n <= max_gram; ++n) {
            const std::size_t j = i + static_cast<std::size_t>(n) - 1;
            if (j >= tokens.size() || !usable[j]) break;
            gram += ' ';
            gram += tokens[j];
            terms.insert(gram);
        }
    }
    return terms;
}

// Deterministic label propagation: node visit order is reshuffled from the
// seed each sweep, ties break toward the smallest label.
std::vector<int> propagate_labels(std::size_t n_nodes,
                                  const std::vector<GraphEdge>& edges,
                                  std::uint64_t seed) {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency(n_nodes);
    for (const auto& e : edges) {
        adjacency[e.u].emplace_back(e.v, e.weight);
        adjacency[e.v].emplace_back(e.u, e.weight);
    }
    std::vector<std::uint32_t> labels(n_nodes);
    for (std::uint32_t i = 0; i < n_nodes; ++i) labels[i] = i;

    detail::Rng rng(seed);
    std::vector<std::uint32_t> order(n_nodes);
    for (std::uint32_t i = 0; i < n_nodes; ++i) order[i] = i;

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (std::size_t i = n_nodes; i > 1; --i)
            std::swap(order[i - 1], order[rng.next_below(i)]);
        bool changed = false;
        std::map<std::uint32_t, double> tally;
        for (const std::uint32_t node : order) {
            if (adjacency[node].empty()) continue;
            tally.clear();
            for (const auto& [peer, w] : adjacency[node]) tally[labels[peer]] += w;
            std::uint32_t best = labels[node];
            double best_weight = -1.0;
            for (const auto& [label, w] : tally) {
                if (w > best_weight) {
                    best_weight = w;
                    best = label;
                }
            }
            if (best != labels[node]) {
                labels[node] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }

    // Renumber to consecutive ids by first appearance in node order.
    std::vector<int> out(n_nodes);
    std::unordered_map<std::uint32_t, int> renumber;
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const auto [it, inserted] =
            renumber.emplace(labels[i], static_cast<int>(renumber.size()));
        out[i] = it->second;
    }
    return out;
}

}  // namespace

ConceptGraphResult concept_graph(const std::vector<const Publication*>& docs,
                                 const ConceptGraphOptions& options) {
    if (options.max_gram < 1) throw std::invalid_argument("max_gram must be >= 1");

    std::unordered_set<std::string> stopwords(default_stopwords().begin(),
                                              default_stopwords().end());
    if (options.extra_stopwords)
        stopwords.insert(options.extra_stopwords->begin(), options.extra_stopwords->end());

    std::vector<std::set<std::string>> per_doc;
    per_doc.reserve(docs.size());
    std::unordered_map<std::string, std::int64_t> df;
    for (const Publication* doc : docs) {
        per_doc.push_back(doc_terms(*doc, options.max_gram, stopwords));
        for (const auto& term : per_doc.back()) ++df[term];
    }

    std::vector<std::string> surviving;
    for (const auto& [term, count] : df)
        if (count >= options.min_occurrences) surviving.push_back(term);
    std::sort(surviving.begin(), surviving.end());

    ConceptGraphResult result;
    result.graph.directed = false;
    std::unordered_map<std::string, std::uint32_t> index_of;
    for (const auto& term : surviving) {
        index_of[term] = static_cast<std::uint32_t>(result.graph.nodes.size());
        result.graph.nodes.push_back({term, term, df[term]});
        result.terms.push_back({term, df[term]});
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> co;
    std::vector<std::uint32_t> present;
    for (const auto& terms : per_doc) {
        present.clear();
        for (const auto& term : terms) {
            const auto it = index_of.find(term);
            if (it != index_of.end()) present.push_back(it->second);
        }
        std::sort(present.begin(), present.end());
        for (std::size_t a = 0; a < present.size(); ++a)
            for (std::size_t b = a + 1; b < present.size(); ++b)
                ++co[{present[a], present[b]}];
    }

    for (const auto& [pair, count] : co) {
        double weight = static_cast<double>(count);
        if (options.association_strength) {
            const auto& ta = result.terms[pair.first];
            const auto& tb = result.terms[pair.second];
            weight = static_cast<double>(count) /
                     (static_cast<double>(ta.df) * static_cast<double>(tb.df));
        }
        result.graph.edges.push_back({pair.first, pair.second, weight});
    }
    // Nodes were inserted sorted and edges come from an ordered map, so the
    // graph is already canonical.
    result.cluster =
        propagate_labels(result.graph.nodes.size(), result.graph.edges, options.cluster_seed);
    return result;
}

// ---------------------------------------------------------------------------
// Growth fitting

FitResult fit_exponential(const YearSeries& series) {
    FitResult fit;
    for (int y = series.start_year; y <= series.end_year(); ++y)
        if (series.at(y) > 0) fit.years_used.push_back(y);
    if (fit.years_used.size() < 3)
        throw std::invalid_argument("exponential fit needs at least 3 positive-count years");

    const double x0 = static_cast<double>(fit.years_used.front());
    const double n = static_cast<double>(fit.years_used.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const int year : fit.years_used) {
        const double x = static_cast<double>(year) - x0;
        const double y = std::log(static_cast<double>(series.at(year)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate year spread");
    fit.exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / n;
    fit.amplitude = std::exp(intercept);

    const double mean_y = sy / n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (const int year : fit.years_used) {
        const double x = static_cast<double>(year) - x0;
        const double y = std::log(static_cast<double>(series.at(year)));
        const double pred = intercept + fit.exponent * x;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    return fit;
}

// ---------------------------------------------------------------------------
// Stopwords

const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
        "a", "about", "above", "after", "again", "against", "all", "also", "am", "among",
        "an", "and", "any", "are", "as", "at", "based", "be", "because", "been", "before",
        "being", "below", "between", "both", "but", "by", "can", "cannot", "could", "did",
        "do", "does", "doing", "down", "due", "during", "each", "either", "et", "few",
        "for", "from", "further", "had", "has", "have", "having", "he", "her", "here",
        "hers", "him", "his", "how", "however", "i", "if", "in", "into", "is", "it",
        "its", "itself", "just", "may", "me", "might", "more", "most", "much", "must",
        "my", "nor", "not", "of", "off", "on", "once", "one", "only", "or", "other",
        "our", "ours", "out", "over", "own", "per", "same", "she", "should", "since",
        "so", "some", "such", "than", "that", "the", "their", "theirs", "them", "then",
        "there", "these", "they", "this", "those", "through", "thus", "to", "too",
        "under", "until", "up", "upon", "us", "used", "using", "various", "very", "via",
        "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom",
        "why", "will", "with", "within", "without", "would", "you", "your", "yours",
    };
    return words;
}

}  // namespace sbeauty
