#include "kce/compare.hpp"

#include <algorithm>
#include <unordered_set>

#include "kce/concept_pipeline.hpp"
#include "kce/multipartite.hpp"
#include "kce/position_rank.hpp"
#include "kce/rng.hpp"
#include "kce/yake.hpp"

namespace kce {

namespace {

std::vector<std::string> distinct_terms(const ConceptBag& bag) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const std::string& t : bag.terms) {
        if (seen.insert(t).second) out.push_back(t);
    }
    return out;
}

FeatureMatrix slice(const FeatureMatrix& m, const std::vector<std::size_t>& idx) {
    FeatureMatrix out;
    out.vocab = m.vocab;
    out.weighting = m.weighting;
    out.rows.reserve(idx.size());
    for (const std::size_t i : idx) out.rows.push_back(m.rows[i]);
    return out;
}

LabelMatrix slice(const LabelMatrix& m, const std::vector<std::size_t>& idx) {
    LabelMatrix out;
    out.labels = m.labels;
    out.rows.reserve(idx.size());
    for (const std::size_t i : idx) out.rows.push_back(m.rows[i]);
    return out;
}

std::string canonical_method(const std::string& name) {
    if (name == "FullConcepts" || name == "full" || name == "full_concepts") return "full_concepts";
    if (name == "random" || name == "random_selection") return "random";
    return name;
}

} // namespace

ComparisonTable compare_methods(const std::vector<AnnotatedDocument>& corpus,
                                const std::vector<std::string>& methods, const CompareConfig& cfg) {
    // Labels first: an unlabeled corpus must fail before any training work.
    const LabelMatrix labels = make_labels(corpus, cfg.task);
    const SplitIndices split = split_indices(corpus.size(), cfg.ratios, cfg.seed);

    std::vector<ConceptBag> bags;
    bags.reserve(corpus.size());
    for (const AnnotatedDocument& doc : corpus) bags.push_back(to_concept_bag(doc));
    const ConceptDictionary dict = build_dictionary(corpus);

    // The thresholded selection doubles as the size budget for the random
    // baseline, so compute it once up front.
    bool need_tfidf = false;
    bool need_text = false;
    for (const std::string& m : methods) {
        const std::string id = canonical_method(m);
        if (id == "tfidf" || id == "random") need_tfidf = true;
        if (id != "tfidf" && id != "random" && id != "full_concepts") need_text = true;
    }
    std::vector<std::vector<std::string>> tfidf_terms(corpus.size());
    if (need_tfidf) {
        const auto selected = run_tfidf_selection(corpus, dict, cfg.selector);
        for (std::size_t d = 0; d < selected.size(); ++d) tfidf_terms[d] = selected[d].terms;
    }
    std::vector<std::string> full_text(corpus.size());
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        if (!need_text) break;
        full_text[d] = synthesize_document(bags[d].doc_id, bags[d].terms, dict).text;
    }

    const StopwordSet stopwords = StopwordSet::defaults();
    ComparisonTable table;
    table.task = to_string(cfg.task);

    for (const std::string& requested : methods) {
        const std::string id = canonical_method(requested);
        std::vector<std::vector<std::string>> doc_terms(corpus.size());
        if (id == "tfidf") {
            doc_terms = tfidf_terms;
        } else if (id == "full_concepts") {
            for (std::size_t d = 0; d < corpus.size(); ++d) doc_terms[d] = distinct_terms(bags[d]);
        } else if (id == "random") {
            Rng rng(cfg.seed * 0x9E3779B9u + 17);
            for (std::size_t d = 0; d < corpus.size(); ++d) {
                std::vector<std::string> pool = distinct_terms(bags[d]);
                rng.shuffle(pool);
                pool.resize(std::min(pool.size(), tfidf_terms[d].size()));
                doc_terms[d] = std::move(pool);
            }
        } else {
            const Method method = method_from_string(id);
            for (std::size_t d = 0; d < corpus.size(); ++d) {
                std::vector<RankedPhrase> ranked;
                switch (method) {
                    case Method::yake:
                        ranked = extract_yake(full_text[d], {cfg.max_ngram, cfg.top_k}, stopwords);
                        break;
                    case Method::position_rank: {
                        PositionRankOptions opts;
                        opts.max_ngram = cfg.max_ngram;
                        opts.top_k = cfg.top_k;
                        ranked = extract_position_rank(full_text[d], opts, stopwords);
                        break;
                    }
                    case Method::multipartite_rank: {
                        MultipartiteOptions opts;
                        opts.max_ngram = cfg.max_ngram;
                        opts.top_k = cfg.top_k;
                        ranked = extract_multipartite_rank(full_text[d], opts, stopwords);
                        break;
                    }
                    case Method::embed_cosine:
                    case Method::embed_graph: {
                        if (!cfg.embeddings) {
                            throw config_error("method '" + id + "' needs an embedding table");
                        }
                        EmbedOptions opts;
                        opts.mode =
                            method == Method::embed_cosine ? EmbedMode::cosine : EmbedMode::graph;
                        opts.max_ngram = cfg.max_ngram;
                        opts.top_k = cfg.top_k;
                        opts.doc_key = corpus[d].doc.doc_id;
                        ranked = extract_embed(full_text[d], *cfg.embeddings, opts, stopwords);
                        break;
                    }
                    default:
                        throw config_error("method '" + id + "' is not valid for comparison");
                }
                for (const RankedPhrase& p : ranked) doc_terms[d].push_back(p.phrase);
            }
        }

        const FeatureMatrix all = featurize(doc_terms, cfg.weighting);
        const LinearModel model =
            train_linear(slice(all, split.train), slice(labels, split.train), cfg.task, cfg.train);
        const EvalReport report =
            evaluate(model, slice(all, split.test), slice(labels, split.test));
        table.rows.push_back({requested, report});
    }
    return table;
}

nlohmann::ordered_json to_json(const ComparisonTable& table) {
    nlohmann::ordered_json out;
    out["task"] = table.task;
    out["rows"] = nlohmann::ordered_json::array();
    for (const ComparisonRow& row : table.rows) {
        nlohmann::ordered_json r;
        r["method"] = row.method;
        r["accuracy"] = row.report.accuracy;
        r["micro_f1"] = row.report.micro_f1;
        r["roc_auc"] = row.report.roc_auc;
        out["rows"].push_back(std::move(r));
    }
    out["note"] = table.note;
    return out;
}

} // namespace kce
