#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kce/corpus.hpp"
#include "kce/tokenize.hpp"

namespace kce {

// Precomputed phrase/word vectors. TSV rows: phrase<TAB>v1 v2 v3 ...
// The dimension is inferred from the first row and enforced thereafter.
class EmbeddingTable {
public:
    static EmbeddingTable load(std::istream& in);

    void insert(const std::string& phrase, std::vector<double> vec);
    const std::vector<double>* find(const std::string& phrase) const;

    std::size_t dim() const { return dim_; }
    bool empty() const { return vectors_.empty(); }
    std::size_t size() const { return vectors_.size(); }

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

enum class EmbedMode { cosine, graph };

struct EmbedOptions {
    EmbedMode mode = EmbedMode::cosine;
    std::size_t max_ngram = 3;
    std::size_t top_k = 20;
    std::optional<double> mmr_lambda;   // cosine mode only
    double damping = 0.85;
    double tol = 1e-6;
    std::size_t max_iter = 100;
    std::string doc_key;                // table entry to use as the document vector
};

// Cosine mode ranks candidates by similarity to the document vector, with
// optional maximal-marginal-relevance re-ranking. Graph mode runs
// personalized pagerank over the candidate similarity graph. Candidate
// vectors fall back to the mean of member-word vectors; missing words become
// zero vectors with a warning on stderr. The document vector is the table
// entry under doc_key when present, else the mean of the document's
// in-vocabulary word vectors.
std::vector<RankedPhrase> extract_embed(std::string_view text, const EmbeddingTable& table,
                                        const EmbedOptions& opts, const StopwordSet& stopwords);

} // namespace kce
