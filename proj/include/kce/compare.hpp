#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kce/corpus.hpp"
#include "kce/embed.hpp"
#include "kce/eval.hpp"
#include "kce/tfidf.hpp"

namespace kce {

// Settings shared by every method in one comparison run. Downstream scoring
// uses explicit bag-of-concepts features plus a linear head in place of a
// transformer classifier; the comparison is between the selection methods,
// which this proxy preserves.
struct CompareConfig {
    Task task = Task::multilabel;
    std::vector<double> ratios{0.8, 0.1, 0.1};
    SelectorConfig selector;
    std::size_t top_k = 20;
    std::size_t max_ngram = 3;
    FeatureWeighting weighting = FeatureWeighting::binary;
    TrainConfig train;
    const EmbeddingTable* embeddings = nullptr;   // required by embed_* methods
    std::uint64_t seed = 0;
};

struct ComparisonRow {
    std::string method;
    EvalReport report;
};

struct ComparisonTable {
    std::string task;
    std::vector<ComparisonRow> rows;
    std::string note = "linear-proxy substitution";
};

// Methods: tfidf, full_concepts, random, yake, position_rank,
// multipartite_rank, embed_cosine, embed_graph. Every method shares one
// split, one label matrix, and one feature vocabulary convention.
ComparisonTable compare_methods(const std::vector<AnnotatedDocument>& corpus,
                                const std::vector<std::string>& methods, const CompareConfig& cfg);

nlohmann::ordered_json to_json(const ComparisonTable& table);

} // namespace kce
