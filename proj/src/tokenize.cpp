#include "kce/tokenize.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <unordered_map>

#include "kce/unicode.hpp"

namespace kce {

StopwordSet::StopwordSet(std::vector<std::string> words) {
    for (std::string& w : words) words_.insert(to_lower_ascii(w));
}

StopwordSet StopwordSet::defaults() {
    // Common English function words; enough for concept text and note prose.
    static const char* kWords[] = {
        "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any",
        "are", "as", "at", "be", "because", "been", "before", "being", "below", "between",
        "both", "but", "by", "can", "cannot", "could", "did", "do", "does", "doing", "down",
        "during", "each", "few", "for", "from", "further", "had", "has", "have", "having",
        "he", "her", "here", "hers", "herself", "him", "himself", "his", "how", "i", "if",
        "in", "into", "is", "it", "its", "itself", "me", "more", "most", "my", "myself",
        "no", "nor", "not", "of", "off", "on", "once", "only", "or", "other", "ought",
        "our", "ours", "ourselves", "out", "over", "own", "same", "she", "should", "so",
        "some", "such", "than", "that", "the", "their", "theirs", "them", "themselves",
        "then", "there", "these", "they", "this", "those", "through", "to", "too", "under",
        "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
        "while", "who", "whom", "why", "with", "would", "you", "your", "yours", "yourself",
        "yourselves",
    };
    std::vector<std::string> words(std::begin(kWords), std::end(kWords));
    return StopwordSet(std::move(words));
}

StopwordSet StopwordSet::load(std::istream& in) {
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t");
        words.push_back(line.substr(first, last - first + 1));
    }
    return StopwordSet(std::move(words));
}

namespace {

bool is_token_char(std::uint32_t cp) {
    if (cp >= 0x80) return true;
    const char c = static_cast<char>(cp);
    return is_ascii_alnum(c);
}

bool is_sentence_break(std::uint32_t cp) {
    return cp == '.' || cp == '?' || cp == '!' || cp == '\n';
}

bool is_blank(std::uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\r' || cp == '\f' || cp == '\v' || cp == '\n';
}

} // namespace

TokenStream tokenize(std::string_view text, const StopwordSet& stopwords,
                     const std::vector<std::size_t>* extra_breaks) {
    TokenStream stream;
    std::vector<std::size_t> breaks;
    if (extra_breaks) {
        breaks = *extra_breaks;
        std::sort(breaks.begin(), breaks.end());
    }

    std::size_t byte_pos = 0;
    std::size_t cp_pos = 0;
    std::size_t raw_segment = 0;
    std::size_t break_cursor = 0;
    bool pending_punct = false;
    std::vector<std::size_t> segments;   // raw segment id per token

    std::string surface;
    std::size_t tok_cp_start = 0;
    bool in_token = false;
    bool tok_punct_before = false;

    auto flush_token = [&]() {
        if (!in_token) return;
        Token tok;
        tok.surface = surface;
        tok.lowered = to_lower_ascii(surface);
        tok.cp_start = tok_cp_start;
        tok.cp_end = cp_pos;
        tok.position = stream.tokens.size() + 1;
        tok.punct_before = tok_punct_before;
        segments.push_back(raw_segment);
        stream.stopword_flags.push_back(stopwords.contains(tok.lowered));
        stream.tokens.push_back(std::move(tok));
        surface.clear();
        in_token = false;
    };

    while (byte_pos < text.size()) {
        while (break_cursor < breaks.size() && breaks[break_cursor] <= cp_pos) {
            if (breaks[break_cursor] == cp_pos) {
                flush_token();
                ++raw_segment;
            }
            ++break_cursor;
        }
        const std::size_t cp_here = cp_pos;
        const std::size_t byte_start = byte_pos;
        const std::uint32_t cp = next_codepoint(text, byte_pos);
        if (is_token_char(cp)) {
            if (!in_token) {
                in_token = true;
                tok_cp_start = cp_here;
                tok_punct_before = pending_punct || stream.tokens.empty();
                pending_punct = false;
            }
            surface.append(text.substr(byte_start, byte_pos - byte_start));
        } else {
            flush_token();
            if (!is_blank(cp)) pending_punct = true;
            if (is_sentence_break(cp)) ++raw_segment;
        }
        ++cp_pos;
    }
    flush_token();

    // Renumber segments so only sentences that actually contain tokens count.
    std::map<std::size_t, std::size_t> renumber;
    for (std::size_t seg : segments) renumber.emplace(seg, renumber.size());
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        stream.tokens[i].sentence = renumber.at(segments[i]);
    }
    stream.sentence_count = renumber.size();
    return stream;
}

std::vector<Candidate> extract_candidates(const TokenStream& stream, std::size_t max_ngram,
                                          CandidateMode mode) {
    std::vector<Candidate> candidates;
    if (max_ngram == 0) return candidates;
    std::unordered_map<std::string, std::size_t> index;

    auto add_window = [&](std::size_t start, std::size_t len) {
        std::string phrase;
        std::vector<std::string> words;
        words.reserve(len);
        for (std::size_t k = 0; k < len; ++k) {
            if (k) phrase += ' ';
            phrase += stream.tokens[start + k].lowered;
            words.push_back(stream.tokens[start + k].lowered);
        }
        if (mode == CandidateMode::distinct_word_ngrams) {
            for (std::size_t a = 0; a < words.size(); ++a) {
                for (std::size_t b = a + 1; b < words.size(); ++b) {
                    if (words[a] == words[b]) return;
                }
            }
        }
        auto [it, inserted] = index.emplace(phrase, candidates.size());
        if (inserted) {
            Candidate c;
            c.phrase = std::move(phrase);
            c.words = std::move(words);
            c.first_token_index = start;
            c.positions.push_back(stream.tokens[start].position);
            candidates.push_back(std::move(c));
        } else {
            candidates[it->second].positions.push_back(stream.tokens[start].position);
        }
    };

    std::size_t i = 0;
    const std::size_t n = stream.tokens.size();
    while (i < n) {
        if (stream.stopword_flags[i]) {
            ++i;
            continue;
        }
        std::size_t end = i + 1;
        while (end < n && !stream.stopword_flags[end] && !stream.tokens[end].punct_before &&
               stream.tokens[end].sentence == stream.tokens[i].sentence) {
            ++end;
        }
        const std::size_t run_len = end - i;
        if (mode == CandidateMode::maximal_runs) {
            add_window(i, std::min(run_len, max_ngram));
        } else {
            for (std::size_t s = i; s < end; ++s) {
                for (std::size_t len = 1; len <= max_ngram && s + len <= end; ++len) {
                    add_window(s, len);
                }
            }
        }
        i = end;
    }
    return candidates;
}

} // namespace kce
