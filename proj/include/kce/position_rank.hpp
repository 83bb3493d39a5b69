#pragma once

#include <string_view>
#include <vector>

#include "kce/corpus.hpp"
#include "kce/graph.hpp"
#include "kce/tokenize.hpp"

namespace kce {

struct PositionRankOptions {
    std::size_t max_ngram = 3;
    std::size_t window = 10;     // co-occurrence distance over original token positions
    double damping = 0.85;
    double tol = 1e-6;
    std::size_t max_iter = 100;
    std::size_t top_k = 20;
};

// Undirected word graph over non-stopword tokens; edge weight counts token
// pairs whose positions differ by less than `window`. Exposed for tests.
WeightedGraph build_cooccurrence_graph(const TokenStream& stream, std::size_t window);

// Teleport weight of a word is the sum of 1/position over its occurrences,
// normalized across the graph's nodes.
std::vector<double> position_teleport(const TokenStream& stream, const WeightedGraph& graph);

// Word scores via personalized pagerank; a candidate phrase scores the sum of
// its member-word scores. Candidates are stopword-free n-grams with distinct
// words. Descending sort.
std::vector<RankedPhrase> extract_position_rank(std::string_view text,
                                                const PositionRankOptions& opts,
                                                const StopwordSet& stopwords);

} // namespace kce
