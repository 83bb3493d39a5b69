#include "kce/tfidf.hpp"

#include <cmath>
#include <map>

namespace kce {

std::string to_string(MatrixMode m) {
    switch (m) {
        case MatrixMode::tf: return "tf";
        case MatrixMode::tfidf_raw: return "tfidf_raw";
        case MatrixMode::tfidf_normalized: return "tfidf_normalized";
    }
    return "tf";
}

MatrixMode matrix_mode_from_string(std::string_view s) {
    if (s == "tf") return MatrixMode::tf;
    if (s == "tfidf_raw" || s == "raw") return MatrixMode::tfidf_raw;
    if (s == "tfidf_normalized" || s == "normalized") return MatrixMode::tfidf_normalized;
    throw config_error("unknown matrix mode '" + std::string(s) + "'");
}

double TermDocMatrix::weight(const std::string& doc_id, const std::string& term) const {
    auto dit = doc_index.find(doc_id);
    if (dit == doc_index.end()) throw data_error("unknown doc_id '" + doc_id + "'");
    auto tit = term_index.find(term);
    if (tit == term_index.end()) return 0.0;
    for (const auto& [col, w] : rows[dit->second]) {
        if (col == tit->second) return w;
    }
    return 0.0;
}

TermDocMatrix compute_matrix(const std::vector<ConceptBag>& bags, MatrixMode mode,
                             LogBase log_base) {
    if (bags.empty()) throw data_error("cannot compute a term-document matrix over zero documents");

    auto log_fn = [log_base](double x) {
        return log_base == LogBase::natural ? std::log(x) : std::log10(x);
    };

    TermDocMatrix m;
    m.mode = mode;

    // Pass 1: vocabulary in first-occurrence order and document frequencies.
    std::vector<std::size_t> df;
    {
        std::vector<std::uint32_t> last_doc_seen;   // per term, to count df once per doc
        for (std::size_t d = 0; d < bags.size(); ++d) {
            const ConceptBag& bag = bags[d];
            if (!m.doc_index.emplace(bag.doc_id, static_cast<std::uint32_t>(d)).second) {
                throw data_error("duplicate doc_id '" + bag.doc_id + "'");
            }
            m.doc_ids.push_back(bag.doc_id);
            for (const std::string& term : bag.terms) {
                auto [it, inserted] =
                    m.term_index.emplace(term, static_cast<std::uint32_t>(m.vocab.size()));
                if (inserted) {
                    m.vocab.push_back(term);
                    df.push_back(0);
                    last_doc_seen.push_back(UINT32_MAX);
                }
                const std::uint32_t col = it->second;
                if (last_doc_seen[col] != d) {
                    last_doc_seen[col] = static_cast<std::uint32_t>(d);
                    ++df[col];
                }
            }
        }
    }

    // Pass 2: weights.
    const double n_docs = static_cast<double>(bags.size());
    m.rows.resize(bags.size());
    std::vector<double> tf_scratch(m.vocab.size(), 0.0);
    for (std::size_t d = 0; d < bags.size(); ++d) {
        std::vector<std::uint32_t> order;    // first-occurrence order within this document
        for (const std::string& term : bags[d].terms) {
            const std::uint32_t col = m.term_index.at(term);
            if (tf_scratch[col] == 0.0) order.push_back(col);
            tf_scratch[col] += 1.0;
        }
        auto& row = m.rows[d];
        row.reserve(order.size());
        for (const std::uint32_t col : order) {
            const double tf = tf_scratch[col];
            double w = tf;
            if (mode == MatrixMode::tfidf_raw) {
                w = tf * log_fn(n_docs / static_cast<double>(df[col]));
            } else if (mode == MatrixMode::tfidf_normalized) {
                w = tf * (log_fn((1.0 + n_docs) / (1.0 + static_cast<double>(df[col]))) + 1.0);
            }
            row.emplace_back(col, w);
            tf_scratch[col] = 0.0;
        }
        if (mode == MatrixMode::tfidf_normalized && !row.empty()) {
            double norm_sq = 0.0;
            for (const auto& [col, w] : row) norm_sq += w * w;
            const double norm = std::sqrt(norm_sq);
            if (norm > 0.0) {
                for (auto& [col, w] : row) w /= norm;
            }
        }
    }
    return m;
}

std::vector<std::string> select_key_concepts(const TermDocMatrix& matrix, const std::string& doc_id,
                                             const SelectorConfig& cfg) {
    if (!(cfg.threshold >= 0.0)) throw data_error("threshold must be >= 0");
    if (matrix.mode != cfg.mode) {
        throw data_error("matrix mode " + to_string(matrix.mode) + " does not match selector mode " +
                         to_string(cfg.mode));
    }
    auto dit = matrix.doc_index.find(doc_id);
    if (dit == matrix.doc_index.end()) throw data_error("unknown doc_id '" + doc_id + "'");
    std::vector<std::string> selected;
    for (const auto& [col, w] : matrix.rows[dit->second]) {
        const bool keep = cfg.strict ? w > cfg.threshold : w >= cfg.threshold;
        if (keep) selected.push_back(matrix.vocab[col]);
    }
    return selected;
}

std::vector<KeyConceptDocument> run_tfidf_selection(const std::vector<AnnotatedDocument>& corpus,
                                                    const ConceptDictionary& dict,
                                                    const SelectorConfig& cfg) {
    std::vector<ConceptBag> bags;
    bags.reserve(corpus.size());
    for (const AnnotatedDocument& doc : corpus) bags.push_back(to_concept_bag(doc));
    const TermDocMatrix matrix = compute_matrix(bags, cfg.mode, cfg.log_base);
    std::vector<KeyConceptDocument> out;
    out.reserve(corpus.size());
    for (const ConceptBag& bag : bags) {
        out.push_back(synthesize_document(bag.doc_id, select_key_concepts(matrix, bag.doc_id, cfg), dict));
    }
    return out;
}

} // namespace kce
