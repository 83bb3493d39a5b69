#pragma once

#include <string_view>
#include <vector>

#include "kce/corpus.hpp"
#include "kce/graph.hpp"
#include "kce/tokenize.hpp"

namespace kce {

struct MultipartiteOptions {
    std::size_t max_ngram = 3;
    double cluster_sim = 0.25;   // merge topics while average Jaccard >= this
    double alpha = 1.1;          // first-position boost factor
    double damping = 0.85;
    double tol = 1e-6;
    std::size_t max_iter = 100;
    std::size_t top_k = 20;
};

// Hierarchical agglomerative clustering, average linkage, Jaccard similarity
// over lowercased word sets. Returns candidate index groups.
std::vector<std::vector<std::size_t>> cluster_topics(const std::vector<Candidate>& candidates,
                                                     double cluster_sim);

// Complete directed graph over candidates of different topics. Base weight of
// ci->cj sums 1/|pi - pj| over occurrence-position pairs; then, per topic with
// two or more candidates, every edge into the earliest candidate c1 gains
// alpha * e^(1/p1) * sum of the source's weights into the topic's other
// candidates. Exposed for tests.
WeightedGraph build_multipartite_graph(const std::vector<Candidate>& candidates,
                                       const std::vector<std::vector<std::size_t>>& topics,
                                       double alpha);

// Candidates are maximal stopword-free runs (truncated to max_ngram tokens),
// ranked by personalized pagerank with a uniform teleport. Descending sort.
std::vector<RankedPhrase> extract_multipartite_rank(std::string_view text,
                                                    const MultipartiteOptions& opts,
                                                    const StopwordSet& stopwords);

} // namespace kce
