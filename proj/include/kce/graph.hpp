#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace kce {

// Weighted graph over string-keyed nodes. No self-loops; undirected edges are
// stored once with i < j and symmetric semantics.
struct WeightedGraph {
    std::vector<std::string> nodes;
    bool directed = false;
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> edges;

    std::uint32_t add_node(std::string key);
    void add_edge(std::uint32_t i, std::uint32_t j, double w);   // accumulates; rejects loops, w <= 0
    double edge_weight(std::uint32_t i, std::uint32_t j) const;  // 0 when absent
    std::size_t size() const { return nodes.size(); }
};

struct PagerankOptions {
    double damping = 0.85;
    double tol = 1e-6;          // stop when the L1 change drops below this
    std::size_t max_iter = 100;
};

// Personalized PageRank by power iteration. The teleport vector must be
// non-negative and sum to 1 within 1e-12. Dangling nodes redistribute their
// mass through the teleport vector, so the scores sum to 1.
std::vector<double> pagerank(const WeightedGraph& g, const std::vector<double>& teleport,
                             const PagerankOptions& opts);

} // namespace kce
