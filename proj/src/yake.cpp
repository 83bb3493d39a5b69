#include "kce/yake.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kce {

namespace {

bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }

bool is_acronym(const std::string& surface) {
    if (surface.size() < 2) return false;
    bool has_letter = false;
    for (const char c : surface) {
        if (is_ascii_upper(c)) {
            has_letter = true;
        } else if (c < '0' || c > '9') {
            return false;
        }
    }
    return has_letter;
}

bool is_capitalized(const std::string& surface) {
    return !surface.empty() && is_ascii_upper(surface[0]) && !is_acronym(surface);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::unordered_map<std::string, YakeTermStats> yake_term_stats(const TokenStream& stream,
                                                               std::size_t window) {
    struct Occurrences {
        std::vector<std::size_t> token_indices;
        std::size_t cap_count = 0;
        std::size_t acr_count = 0;
        std::set<std::size_t> sentences;
        bool stopword = false;
    };
    std::unordered_map<std::string, Occurrences> occ;
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        const Token& t = stream.tokens[i];
        Occurrences& o = occ[t.lowered];
        o.token_indices.push_back(i);
        if (is_acronym(t.surface)) ++o.acr_count;
        if (is_capitalized(t.surface)) ++o.cap_count;
        o.sentences.insert(t.sentence);
        o.stopword = stream.stopword_flags[i];
    }

    std::size_t max_tf = 0;
    for (const auto& [term, o] : occ) max_tf = std::max(max_tf, o.token_indices.size());

    // Frequency statistics over non-stopword terms; population stddev.
    double mean = 0.0;
    double stddev = 0.0;
    {
        std::vector<double> tfs;
        for (const auto& [term, o] : occ) {
            if (!o.stopword) tfs.push_back(static_cast<double>(o.token_indices.size()));
        }
        if (!tfs.empty()) {
            for (const double v : tfs) mean += v;
            mean /= static_cast<double>(tfs.size());
            for (const double v : tfs) stddev += (v - mean) * (v - mean);
            stddev = std::sqrt(stddev / static_cast<double>(tfs.size()));
        }
    }

    std::unordered_map<std::string, YakeTermStats> stats;
    for (const auto& [term, o] : occ) {
        YakeTermStats s;
        s.tf = o.token_indices.size();
        const double tf = static_cast<double>(s.tf);

        s.tcase = static_cast<double>(std::max(o.cap_count, o.acr_count)) / (1.0 + std::log(tf));

        std::vector<double> sentence_positions;
        for (const std::size_t idx : o.token_indices) {
            sentence_positions.push_back(static_cast<double>(stream.tokens[idx].sentence + 1));
        }
        s.tpos = std::log(std::log(3.0 + median(std::move(sentence_positions))));

        const double freq_denom = mean + stddev;
        s.tfnorm = tf / (freq_denom > 0.0 ? freq_denom : 1.0);

        std::set<std::string> left_distinct, right_distinct;
        std::size_t left_total = 0, right_total = 0;
        for (const std::size_t idx : o.token_indices) {
            const std::size_t sentence = stream.tokens[idx].sentence;
            for (std::size_t k = 1; k <= window && k <= idx; ++k) {
                const Token& nb = stream.tokens[idx - k];
                if (nb.sentence != sentence) break;
                left_distinct.insert(nb.lowered);
                ++left_total;
            }
            for (std::size_t k = 1; k <= window && idx + k < stream.tokens.size(); ++k) {
                const Token& nb = stream.tokens[idx + k];
                if (nb.sentence != sentence) break;
                right_distinct.insert(nb.lowered);
                ++right_total;
            }
        }
        const double dl = left_total ? static_cast<double>(left_distinct.size()) /
                                           static_cast<double>(left_total)
                                     : 0.0;
        const double dr = right_total ? static_cast<double>(right_distinct.size()) /
                                            static_cast<double>(right_total)
                                      : 0.0;
        s.trel = 1.0 + (dl + dr) * tf / static_cast<double>(max_tf);

        s.tsent = static_cast<double>(o.sentences.size()) /
                  static_cast<double>(stream.sentence_count);

        s.score = s.trel * s.tpos / (s.tcase + s.tfnorm / s.trel + s.tsent / s.trel);
        stats.emplace(term, s);
    }
    return stats;
}

std::vector<std::pair<std::string, double>> yake_candidate_scores(std::string_view text,
                                                                  const YakeOptions& opts,
                                                                  const StopwordSet& stopwords) {
    const TokenStream stream = tokenize(text, stopwords);
    if (stream.tokens.empty()) return {};
    const auto stats = yake_term_stats(stream, opts.window);
    const auto candidates = extract_candidates(stream, opts.max_ngram, CandidateMode::all_ngrams);

    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        double product = 1.0;
        double sum = 0.0;
        for (const std::string& w : c.words) {
            const double s = stats.at(w).score;
            product *= s;
            sum += s;
        }
        const double score = product / (static_cast<double>(c.tf()) * (1.0 + sum));
        scored.emplace_back(c.phrase, score);
    }
    return scored;
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 1.0;
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    std::vector<std::size_t> prev(nb + 1), cur(nb + 1);
    for (std::size_t j = 0; j <= nb; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= na; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= nb; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        prev.swap(cur);
    }
    const double dist = static_cast<double>(prev[nb]);
    return 1.0 - dist / static_cast<double>(std::max(na, nb));
}

std::vector<RankedPhrase> extract_yake(std::string_view text, const YakeOptions& opts,
                                       const StopwordSet& stopwords) {
    const TokenStream stream = tokenize(text, stopwords);
    std::vector<RankedPhrase> out;
    if (stream.tokens.empty() || opts.top_k == 0) return out;
    const auto stats = yake_term_stats(stream, opts.window);
    const auto candidates = extract_candidates(stream, opts.max_ngram, CandidateMode::all_ngrams);

    struct Scored {
        const Candidate* c;
        double score;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        double product = 1.0;
        double sum = 0.0;
        for (const std::string& w : c.words) {
            const double s = stats.at(w).score;
            product *= s;
            sum += s;
        }
        scored.push_back({&c, product / (static_cast<double>(c.tf()) * (1.0 + sum))});
    }
    // Ascending score; ties by earliest first occurrence, then lexicographic.
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score < b.score;
        if (a.c->positions.front() != b.c->positions.front()) {
            return a.c->positions.front() < b.c->positions.front();
        }
        return a.c->phrase < b.c->phrase;
    });

    std::vector<const Scored*> accepted;
    for (const Scored& s : scored) {
        bool duplicate = false;
        for (const Scored* a : accepted) {
            if (levenshtein_similarity(s.c->phrase, a->c->phrase) >= opts.dedup) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        accepted.push_back(&s);
        if (accepted.size() == opts.top_k) break;
    }

    out.reserve(accepted.size());
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        out.push_back({accepted[i]->c->phrase, accepted[i]->score, static_cast<int>(i) + 1,
                       Method::yake});
    }
    return out;
}

} // namespace kce
