#include "kce/embed.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <istream>
#include <sstream>

#include "kce/graph.hpp"

namespace kce {

EmbeddingTable EmbeddingTable::load(std::istream& in) {
    EmbeddingTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw data_error("embedding line " + std::to_string(line_no) + ": missing tab separator");
        }
        const std::string phrase = line.substr(0, tab);
        std::vector<double> vec;
        std::istringstream values(line.substr(tab + 1));
        double v;
        while (values >> v) {
            if (!std::isfinite(v)) {
                throw data_error("embedding line " + std::to_string(line_no) + ": non-finite component");
            }
            vec.push_back(v);
        }
        if (vec.empty()) {
            throw data_error("embedding line " + std::to_string(line_no) + ": no vector components");
        }
        if (table.dim_ == 0) table.dim_ = vec.size();
        if (vec.size() != table.dim_) {
            throw data_error("embedding line " + std::to_string(line_no) + ": dimension " +
                             std::to_string(vec.size()) + " does not match table dimension " +
                             std::to_string(table.dim_));
        }
        table.vectors_[phrase] = std::move(vec);
    }
    return table;
}

void EmbeddingTable::insert(const std::string& phrase, std::vector<double> vec) {
    if (vec.empty()) throw data_error("empty embedding vector for '" + phrase + "'");
    if (dim_ == 0) dim_ = vec.size();
    if (vec.size() != dim_) {
        throw data_error("embedding for '" + phrase + "' has dimension " +
                         std::to_string(vec.size()) + ", table dimension is " + std::to_string(dim_));
    }
    vectors_[phrase] = std::move(vec);
}

const std::vector<double>* EmbeddingTable::find(const std::string& phrase) const {
    auto it = vectors_.find(phrase);
    return it == vectors_.end() ? nullptr : &it->second;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw data_error("cosine over vectors of different dimensions " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

// Phrase vector: table entry when present, else the mean of member-word
// vectors; a missing word contributes a zero vector.
std::vector<double> phrase_vector(const Candidate& c, const EmbeddingTable& table) {
    if (const auto* v = table.find(c.phrase)) return *v;
    std::vector<double> mean(table.dim(), 0.0);
    for (const std::string& w : c.words) {
        if (const auto* v = table.find(w)) {
            for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += (*v)[i];
        } else {
            std::cerr << "warning: no embedding for word '" << w << "', using zero vector\n";
        }
    }
    for (double& v : mean) v /= static_cast<double>(c.words.size());
    return mean;
}

std::vector<double> document_vector(const TokenStream& stream, const EmbeddingTable& table,
                                    const std::string& doc_key) {
    if (!doc_key.empty()) {
        if (const auto* v = table.find(doc_key)) return *v;
    }
    std::vector<double> mean(table.dim(), 0.0);
    std::size_t found = 0;
    for (const Token& t : stream.tokens) {
        if (const auto* v = table.find(t.lowered)) {
            for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += (*v)[i];
            ++found;
        }
    }
    if (found > 0) {
        for (double& v : mean) v /= static_cast<double>(found);
    }
    return mean;
}

} // namespace

std::vector<RankedPhrase> extract_embed(std::string_view text, const EmbeddingTable& table,
                                        const EmbedOptions& opts, const StopwordSet& stopwords) {
    if (table.empty()) throw data_error("embedding table is empty");
    const Method method = opts.mode == EmbedMode::cosine ? Method::embed_cosine : Method::embed_graph;
    std::vector<RankedPhrase> out;
    if (opts.top_k == 0) return out;

    const TokenStream stream = tokenize(text, stopwords);
    const auto candidates = extract_candidates(stream, opts.max_ngram, CandidateMode::all_ngrams);
    if (candidates.empty()) return out;

    const std::vector<double> doc_vec = document_vector(stream, table, opts.doc_key);
    std::vector<std::vector<double>> vecs;
    std::vector<double> relevance;
    vecs.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        vecs.push_back(phrase_vector(c, table));
        relevance.push_back(cosine(vecs.back(), doc_vec));
    }

    auto tie_less = [&](std::size_t a, std::size_t b) {
        if (candidates[a].positions.front() != candidates[b].positions.front()) {
            return candidates[a].positions.front() < candidates[b].positions.front();
        }
        return candidates[a].phrase < candidates[b].phrase;
    };

    std::vector<std::pair<std::size_t, double>> ranked;   // candidate index, reported score

    if (opts.mode == EmbedMode::cosine && opts.mmr_lambda) {
        const double lambda = *opts.mmr_lambda;
        if (lambda < 0.0 || lambda > 1.0) throw data_error("mmr_lambda must lie in [0, 1]");
        std::vector<bool> taken(candidates.size(), false);
        const std::size_t k = std::min(opts.top_k, candidates.size());
        while (ranked.size() < k) {
            double best = 0.0;
            std::size_t best_idx = candidates.size();
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (taken[i]) continue;
                double redundancy = 0.0;
                for (const auto& [sel, score] : ranked) {
                    redundancy = std::max(redundancy, cosine(vecs[i], vecs[sel]));
                }
                const double objective = lambda * relevance[i] - (1.0 - lambda) * redundancy;
                if (best_idx == candidates.size() || objective > best ||
                    (objective == best && tie_less(i, best_idx))) {
                    best = objective;
                    best_idx = i;
                }
            }
            taken[best_idx] = true;
            ranked.emplace_back(best_idx, best);
        }
    } else {
        std::vector<double> scores = relevance;
        if (opts.mode == EmbedMode::graph) {
            WeightedGraph g;
            g.directed = false;
            for (const Candidate& c : candidates) g.add_node(c.phrase);
            for (std::uint32_t i = 0; i < candidates.size(); ++i) {
                for (std::uint32_t j = i + 1; j < candidates.size(); ++j) {
                    const double w = std::max(0.0, cosine(vecs[i], vecs[j]));
                    if (w > 0.0) g.add_edge(i, j, w);
                }
            }
            std::vector<double> teleport(candidates.size(), 0.0);
            double sum = 0.0;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                teleport[i] = std::max(0.0, relevance[i]);
                sum += teleport[i];
            }
            if (sum > 0.0) {
                for (double& t : teleport) t /= sum;
            } else {
                for (double& t : teleport) t = 1.0 / static_cast<double>(candidates.size());
            }
            scores = pagerank(g, teleport, {opts.damping, opts.tol, opts.max_iter});
        }
        std::vector<std::size_t> order(candidates.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (scores[a] != scores[b]) return scores[a] > scores[b];
            return tie_less(a, b);
        });
        const std::size_t k = std::min(opts.top_k, order.size());
        for (std::size_t i = 0; i < k; ++i) ranked.emplace_back(order[i], scores[order[i]]);
    }

    out.reserve(ranked.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        out.push_back({candidates[ranked[i].first].phrase, ranked[i].second,
                       static_cast<int>(i) + 1, method});
    }
    return out;
}

} // namespace kce
