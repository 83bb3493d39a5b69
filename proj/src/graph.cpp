#include "kce/graph.hpp"

#include <cmath>

#include "kce/error.hpp"

namespace kce {

std::uint32_t WeightedGraph::add_node(std::string key) {
    nodes.push_back(std::move(key));
    return static_cast<std::uint32_t>(nodes.size() - 1);
}

void WeightedGraph::add_edge(std::uint32_t i, std::uint32_t j, double w) {
    if (i == j) throw error("self-loops are not allowed");
    if (i >= nodes.size() || j >= nodes.size()) throw error("edge endpoint out of range");
    if (!(w > 0.0)) throw error("edge weight must be positive");
    if (!directed && i > j) std::swap(i, j);
    edges[{i, j}] += w;
}

double WeightedGraph::edge_weight(std::uint32_t i, std::uint32_t j) const {
    if (!directed && i > j) std::swap(i, j);
    auto it = edges.find({i, j});
    return it == edges.end() ? 0.0 : it->second;
}

std::vector<double> pagerank(const WeightedGraph& g, const std::vector<double>& teleport,
                             const PagerankOptions& opts) {
    const std::size_t n = g.size();
    if (n == 0) throw error("pagerank needs a non-empty graph");
    if (teleport.size() != n) {
        throw error("teleport vector length " + std::to_string(teleport.size()) +
                    " does not match node count " + std::to_string(n));
    }
    double tsum = 0.0;
    for (const double t : teleport) {
        if (!(t >= 0.0)) throw error("teleport weights must be non-negative");
        tsum += t;
    }
    if (std::abs(tsum - 1.0) > 1e-12) throw error("teleport vector must sum to 1");
    if (!(opts.damping > 0.0) || !(opts.damping < 1.0)) throw error("damping must lie in (0, 1)");

    // Out-neighbour lists; undirected edges feed both directions.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> out(n);
    std::vector<double> out_sum(n, 0.0);
    for (const auto& [key, w] : g.edges) {
        const auto [i, j] = key;
        out[i].emplace_back(j, w);
        out_sum[i] += w;
        if (!g.directed) {
            out[j].emplace_back(i, w);
            out_sum[j] += w;
        }
    }

    std::vector<double> x = teleport;
    std::vector<double> next(n, 0.0);
    const double d = opts.damping;
    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (out_sum[i] == 0.0) dangling += x[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            next[j] = (1.0 - d + d * dangling) * teleport[j];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (out_sum[i] == 0.0) continue;
            const double share = d * x[i] / out_sum[i];
            for (const auto& [j, w] : out[i]) next[j] += share * w;
        }
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) delta += std::abs(next[j] - x[j]);
        x.swap(next);
        if (delta < opts.tol) break;
    }
    return x;
}

} // namespace kce
