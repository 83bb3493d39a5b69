#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kce/corpus.hpp"
#include "kce/tokenize.hpp"

namespace kce {

struct YakeOptions {
    std::size_t max_ngram = 3;   // min n-gram is fixed at 1
    std::size_t top_k = 20;
    std::size_t window = 2;      // co-occurrence window for the relatedness feature
    double dedup = 0.8;          // normalized Levenshtein similarity cutoff
};

// Per-term features. Lower final scores mark more important terms.
struct YakeTermStats {
    std::size_t tf = 0;
    double tcase = 0.0;
    double tpos = 0.0;
    double tfnorm = 0.0;
    double trel = 0.0;
    double tsent = 0.0;
    double score = 0.0;
};

std::unordered_map<std::string, YakeTermStats> yake_term_stats(const TokenStream& stream,
                                                               std::size_t window);

// Candidate scores before deduplication and truncation, in candidate order.
std::vector<std::pair<std::string, double>> yake_candidate_scores(std::string_view text,
                                                                  const YakeOptions& opts,
                                                                  const StopwordSet& stopwords);

std::vector<RankedPhrase> extract_yake(std::string_view text, const YakeOptions& opts,
                                       const StopwordSet& stopwords);

// Similarity in [0, 1]; 1 means equal strings.
double levenshtein_similarity(std::string_view a, std::string_view b);

} // namespace kce
