#include "kce/position_rank.hpp"

#include <algorithm>
#include <unordered_map>

namespace kce {

WeightedGraph build_cooccurrence_graph(const TokenStream& stream, std::size_t window) {
    WeightedGraph g;
    g.directed = false;
    std::unordered_map<std::string, std::uint32_t> node_of;
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        if (stream.stopword_flags[i]) continue;
        const std::string& w = stream.tokens[i].lowered;
        if (!node_of.count(w)) node_of.emplace(w, g.add_node(w));
    }
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        if (stream.stopword_flags[i]) continue;
        for (std::size_t j = i + 1; j < stream.tokens.size(); ++j) {
            if (stream.tokens[j].position - stream.tokens[i].position >= window) break;
            if (stream.stopword_flags[j]) continue;
            const std::uint32_t a = node_of.at(stream.tokens[i].lowered);
            const std::uint32_t b = node_of.at(stream.tokens[j].lowered);
            if (a == b) continue;
            g.add_edge(a, b, 1.0);
        }
    }
    return g;
}

std::vector<double> position_teleport(const TokenStream& stream, const WeightedGraph& graph) {
    std::unordered_map<std::string, std::uint32_t> node_of;
    for (std::uint32_t i = 0; i < graph.nodes.size(); ++i) node_of.emplace(graph.nodes[i], i);
    std::vector<double> t(graph.nodes.size(), 0.0);
    for (const Token& tok : stream.tokens) {
        auto it = node_of.find(tok.lowered);
        if (it == node_of.end()) continue;
        t[it->second] += 1.0 / static_cast<double>(tok.position);
    }
    double sum = 0.0;
    for (const double v : t) sum += v;
    if (sum > 0.0) {
        for (double& v : t) v /= sum;
    } else if (!t.empty()) {
        for (double& v : t) v = 1.0 / static_cast<double>(t.size());
    }
    return t;
}

std::vector<RankedPhrase> extract_position_rank(std::string_view text,
                                                const PositionRankOptions& opts,
                                                const StopwordSet& stopwords) {
    const TokenStream stream = tokenize(text, stopwords);
    std::vector<RankedPhrase> out;
    if (opts.top_k == 0) return out;
    const WeightedGraph g = build_cooccurrence_graph(stream, opts.window);
    if (g.size() == 0) return out;

    const std::vector<double> teleport = position_teleport(stream, g);
    const std::vector<double> scores = pagerank(g, teleport, {opts.damping, opts.tol, opts.max_iter});

    std::unordered_map<std::string, double> word_score;
    for (std::uint32_t i = 0; i < g.nodes.size(); ++i) word_score.emplace(g.nodes[i], scores[i]);

    const auto candidates =
        extract_candidates(stream, opts.max_ngram, CandidateMode::distinct_word_ngrams);
    struct Scored {
        const Candidate* c;
        double score;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        double s = 0.0;
        for (const std::string& w : c.words) s += word_score.at(w);
        scored.push_back({&c, s});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.c->positions.front() != b.c->positions.front()) {
            return a.c->positions.front() < b.c->positions.front();
        }
        return a.c->phrase < b.c->phrase;
    });
    const std::size_t k = std::min(opts.top_k, scored.size());
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back({scored[i].c->phrase, scored[i].score, static_cast<int>(i) + 1,
                       Method::position_rank});
    }
    return out;
}

} // namespace kce
