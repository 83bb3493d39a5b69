#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kce/concept_pipeline.hpp"
#include "kce/corpus.hpp"

namespace kce {

enum class MatrixMode {
    tf,                  // raw counts
    tfidf_raw,         // TF * log(|D| / df)
    tfidf_normalized,    // TF * (log((1+|D|)/(1+df)) + 1), rows L2-normalized
};

std::string to_string(MatrixMode m);
MatrixMode matrix_mode_from_string(std::string_view s);

enum class LogBase { natural, base10 };

// Sparse document-by-term weight matrix over concept codes. Row entries keep
// the first-occurrence order of terms within each document's bag, which is
// also the selection output order.
struct TermDocMatrix {
    std::vector<std::string> vocab;                      // first-occurrence order across the corpus
    std::vector<std::string> doc_ids;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
    MatrixMode mode = MatrixMode::tf;

    std::unordered_map<std::string, std::uint32_t> term_index;
    std::unordered_map<std::string, std::uint32_t> doc_index;

    double weight(const std::string& doc_id, const std::string& term) const;
};

struct SelectorConfig {
    MatrixMode mode = MatrixMode::tfidf_normalized;
    double threshold = 0.2;
    bool strict = true;                 // score must exceed, not equal, the threshold
    LogBase log_base = LogBase::natural;
};

// Two-pass construction: document frequencies first, then weights. Throws on
// an empty bag list or a duplicate doc id.
TermDocMatrix compute_matrix(const std::vector<ConceptBag>& bags, MatrixMode mode,
                             LogBase log_base = LogBase::natural);

// Terms of one document whose weight clears the threshold, in first-occurrence
// document order. Selections are nested in the threshold.
std::vector<std::string> select_key_concepts(const TermDocMatrix& matrix, const std::string& doc_id,
                                             const SelectorConfig& cfg);

// compute_matrix -> select_key_concepts -> synthesize_document per document.
std::vector<KeyConceptDocument> run_tfidf_selection(const std::vector<AnnotatedDocument>& corpus,
                                                    const ConceptDictionary& dict,
                                                    const SelectorConfig& cfg);

} // namespace kce
