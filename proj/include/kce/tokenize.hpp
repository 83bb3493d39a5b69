#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace kce {

struct Token {
    std::string surface;
    std::string lowered;
    std::size_t sentence = 0;     // 0-based, counting only sentences that contain tokens
    std::size_t position = 0;     // 1-based, strictly increasing, gapless
    std::size_t cp_start = 0;     // code point span within the source text
    std::size_t cp_end = 0;
    bool punct_before = false;    // non-whitespace separator between this token and the previous one
};

class StopwordSet {
public:
    StopwordSet() = default;
    explicit StopwordSet(std::vector<std::string> words);

    static StopwordSet defaults();
    static StopwordSet load(std::istream& in);    // one lowercase word per line, '#' comments

    bool contains(const std::string& lowered) const { return words_.count(lowered) != 0; }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

struct TokenStream {
    std::vector<Token> tokens;
    std::vector<bool> stopword_flags;   // parallel to tokens
    std::size_t sentence_count = 0;
};

// Tokens are maximal runs of alphanumeric characters (non-ASCII code points
// count as letters). Sentences split at '.', '?', '!', and newline.
// extra_breaks lists additional code point offsets (e.g. section starts) that
// force a sentence boundary.
TokenStream tokenize(std::string_view text, const StopwordSet& stopwords,
                     const std::vector<std::size_t>* extra_breaks = nullptr);

struct Candidate {
    std::string phrase;                        // lowered tokens joined with ' '
    std::vector<std::string> words;            // lowered member tokens
    std::vector<std::size_t> positions;        // 1-based first-token position per occurrence
    std::size_t first_token_index = 0;         // stream index of the first occurrence
    std::size_t tf() const { return positions.size(); }
};

enum class CandidateMode {
    all_ngrams,            // every sub-n-gram of a run (yake, embeddings)
    distinct_word_ngrams,  // sub-n-grams without repeated words (position rank)
    maximal_runs,          // whole runs, truncated to max_ngram tokens (multipartite)
};

// A run is a maximal sequence of non-stopword tokens within one sentence that
// are separated only by whitespace. Candidates are deduplicated by lowered
// phrase, in first-occurrence order.
std::vector<Candidate> extract_candidates(const TokenStream& stream, std::size_t max_ngram,
                                          CandidateMode mode);

} // namespace kce
