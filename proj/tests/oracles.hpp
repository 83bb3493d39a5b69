#pragma once

// Independent reference implementations used only to check the library.
// They deliberately share no code with the implementations under test:
// the tf-idf oracle is a dense double loop over (document, term) pairs and
// the pagerank oracle iterates a dense transition matrix.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kce/concept_pipeline.hpp"
#include "kce/graph.hpp"

namespace oracle {

// Evaluates TF * ln(|D| / df) for every (doc, term) pair by brute force.
std::map<std::pair<std::string, std::string>, double> tfidf_brute_force(
    const std::vector<kce::ConceptBag>& bags);

// Dense power iteration: x <- (1-d) t + d (P^T x + (dangling mass) t).
std::vector<double> pagerank_dense(const kce::WeightedGraph& g, const std::vector<double>& teleport,
                                   double damping, std::size_t iterations);

} // namespace oracle
