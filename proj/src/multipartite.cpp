#include "kce/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace kce {

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t inter = 0;
    for (const std::string& w : a) inter += b.count(w);
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace

std::vector<std::vector<std::size_t>> cluster_topics(const std::vector<Candidate>& candidates,
                                                     double cluster_sim) {
    const std::size_t n = candidates.size();
    std::vector<std::set<std::string>> words(n);
    for (std::size_t i = 0; i < n; ++i) {
        words[i] = std::set<std::string>(candidates[i].words.begin(), candidates[i].words.end());
    }
    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sim[i][j] = sim[j][i] = jaccard(words[i], words[j]);
        }
    }

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});

    // Average linkage: merge the closest pair while it clears the cutoff.
    while (clusters.size() > 1) {
        double best = -1.0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                double total = 0.0;
                for (const std::size_t a : clusters[i]) {
                    for (const std::size_t b : clusters[j]) total += sim[a][b];
                }
                const double avg =
                    total / static_cast<double>(clusters[i].size() * clusters[j].size());
                if (avg > best) {
                    best = avg;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best < cluster_sim) break;
        clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }

    for (auto& c : clusters) std::sort(c.begin(), c.end());
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return clusters;
}

WeightedGraph build_multipartite_graph(const std::vector<Candidate>& candidates,
                                       const std::vector<std::vector<std::size_t>>& topics,
                                       double alpha) {
    WeightedGraph g;
    g.directed = true;
    for (const Candidate& c : candidates) g.add_node(c.phrase);

    std::vector<std::size_t> topic_of(candidates.size(), 0);
    for (std::size_t t = 0; t < topics.size(); ++t) {
        for (const std::size_t i : topics[t]) topic_of[i] = t;
    }

    for (std::uint32_t i = 0; i < candidates.size(); ++i) {
        for (std::uint32_t j = 0; j < candidates.size(); ++j) {
            if (i == j || topic_of[i] == topic_of[j]) continue;
            double w = 0.0;
            for (const std::size_t pi : candidates[i].positions) {
                for (const std::size_t pj : candidates[j].positions) {
                    if (pi == pj) continue;
                    w += 1.0 / std::abs(static_cast<double>(pi) - static_cast<double>(pj));
                }
            }
            if (w > 0.0) g.add_edge(i, j, w);
        }
    }

    // First-position boost: promote the earliest candidate of each topic.
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> boosts;
    for (const auto& topic : topics) {
        if (topic.size() < 2) continue;
        std::size_t first = topic.front();
        for (const std::size_t i : topic) {
            if (candidates[i].positions.front() < candidates[first].positions.front()) first = i;
        }
        const double p1 = static_cast<double>(candidates[first].positions.front());
        const double factor = alpha * std::exp(1.0 / p1);
        for (std::uint32_t e = 0; e < candidates.size(); ++e) {
            if (topic_of[e] == topic_of[first]) continue;
            double neighbour_sum = 0.0;
            for (const std::size_t c : topic) {
                if (c == first) continue;
                neighbour_sum += g.edge_weight(e, static_cast<std::uint32_t>(c));
            }
            if (neighbour_sum > 0.0) {
                boosts.emplace_back(e, static_cast<std::uint32_t>(first), factor * neighbour_sum);
            }
        }
    }
    for (const auto& [e, c1, w] : boosts) g.add_edge(e, c1, w);
    return g;
}

std::vector<RankedPhrase> extract_multipartite_rank(std::string_view text,
                                                    const MultipartiteOptions& opts,
                                                    const StopwordSet& stopwords) {
    const TokenStream stream = tokenize(text, stopwords);
    std::vector<RankedPhrase> out;
    if (opts.top_k == 0) return out;
    const auto candidates = extract_candidates(stream, opts.max_ngram, CandidateMode::maximal_runs);
    if (candidates.empty()) return out;

    const auto topics = cluster_topics(candidates, opts.cluster_sim);
    const WeightedGraph g = build_multipartite_graph(candidates, topics, opts.alpha);
    const std::vector<double> teleport(candidates.size(), 1.0 / static_cast<double>(candidates.size()));
    const std::vector<double> scores = pagerank(g, teleport, {opts.damping, opts.tol, opts.max_iter});

    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        if (candidates[a].positions.front() != candidates[b].positions.front()) {
            return candidates[a].positions.front() < candidates[b].positions.front();
        }
        return candidates[a].phrase < candidates[b].phrase;
    });
    const std::size_t k = std::min(opts.top_k, order.size());
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back({candidates[order[i]].phrase, scores[order[i]], static_cast<int>(i) + 1,
                       Method::multipartite_rank});
    }
    return out;
}

} // namespace kce
