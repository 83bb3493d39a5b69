#include "kce/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "kce/rng.hpp"

namespace kce {

std::string to_string(Task t) { return t == Task::binary ? "binary" : "multilabel"; }

Task task_from_string(std::string_view s) {
    if (s == "binary") return Task::binary;
    if (s == "multilabel") return Task::multilabel;
    throw config_error("unknown task '" + std::string(s) + "'");
}

FeatureMatrix featurize(const std::vector<std::vector<std::string>>& doc_terms,
                        FeatureWeighting weighting, const std::vector<std::string>* fixed_vocab) {
    FeatureMatrix m;
    m.weighting = weighting;
    std::unordered_map<std::string, std::uint32_t> index;
    if (fixed_vocab) {
        m.vocab = *fixed_vocab;
        for (std::uint32_t i = 0; i < m.vocab.size(); ++i) index.emplace(m.vocab[i], i);
    }

    std::vector<std::size_t> df;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> counts(doc_terms.size());
    for (std::size_t d = 0; d < doc_terms.size(); ++d) {
        std::unordered_map<std::uint32_t, double> tf;
        std::vector<std::uint32_t> order;
        for (const std::string& term : doc_terms[d]) {
            auto it = index.find(term);
            if (it == index.end()) {
                if (fixed_vocab) continue;
                it = index.emplace(term, static_cast<std::uint32_t>(m.vocab.size())).first;
                m.vocab.push_back(term);
            }
            auto [tit, inserted] = tf.emplace(it->second, 0.0);
            if (inserted) order.push_back(it->second);
            tit->second += 1.0;
        }
        for (const std::uint32_t col : order) counts[d].emplace_back(col, tf.at(col));
    }
    df.assign(m.vocab.size(), 0);
    for (const auto& row : counts) {
        for (const auto& [col, v] : row) ++df[col];
    }

    m.rows.resize(doc_terms.size());
    const double n_docs = static_cast<double>(doc_terms.size());
    for (std::size_t d = 0; d < counts.size(); ++d) {
        auto& row = m.rows[d];
        if (weighting == FeatureWeighting::binary) {
            for (const auto& [col, v] : counts[d]) row.emplace_back(col, 1.0);
            continue;
        }
        double norm_sq = 0.0;
        for (const auto& [col, v] : counts[d]) {
            const double w =
                v * (std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df[col]))) + 1.0);
            row.emplace_back(col, w);
            norm_sq += w * w;
        }
        if (norm_sq > 0.0) {
            const double norm = std::sqrt(norm_sq);
            for (auto& [col, w] : row) w /= norm;
        }
    }
    return m;
}

LabelMatrix make_labels(const std::vector<AnnotatedDocument>& docs, Task task) {
    LabelMatrix m;
    if (task == Task::binary) {
        m.labels = {"binary"};
        for (const AnnotatedDocument& d : docs) {
            if (!d.doc.labels.binary.has_value()) {
                throw data_error("doc '" + d.doc.doc_id + "' has no binary label");
            }
            m.rows.push_back({*d.doc.labels.binary ? 1.0 : 0.0});
        }
        return m;
    }
    std::set<std::string> names;
    for (const AnnotatedDocument& d : docs) {
        if (!d.doc.labels.multi.has_value()) {
            throw data_error("doc '" + d.doc.doc_id + "' has no multi-label set");
        }
        names.insert(d.doc.labels.multi->begin(), d.doc.labels.multi->end());
    }
    m.labels.assign(names.begin(), names.end());
    for (const AnnotatedDocument& d : docs) {
        std::vector<double> row(m.labels.size(), 0.0);
        for (std::size_t j = 0; j < m.labels.size(); ++j) {
            if (d.doc.labels.multi->count(m.labels[j])) row[j] = 1.0;
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

SplitIndices split_indices(std::size_t n_docs, const std::vector<double>& ratios,
                           std::uint64_t seed) {
    if (ratios.size() != 3) throw data_error("expected three split ratios");
    const double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9) throw data_error("split ratios must sum to 1");
    for (const double r : ratios) {
        if (r < 0.0) throw data_error("split ratios must be non-negative");
    }
    if (n_docs < 3) throw data_error("corpus too small to split (need at least 3 documents)");

    std::vector<std::size_t> order(n_docs);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    const std::size_t n_val = static_cast<std::size_t>(std::floor(ratios[1] * static_cast<double>(n_docs)));
    const std::size_t n_test = static_cast<std::size_t>(std::floor(ratios[2] * static_cast<double>(n_docs)));
    const std::size_t n_train = n_docs - n_val - n_test;

    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                          order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
    return out;
}

CorpusSplit split_corpus(const std::vector<AnnotatedDocument>& corpus,
                         const std::vector<double>& ratios, std::uint64_t seed) {
    const SplitIndices idx = split_indices(corpus.size(), ratios, seed);
    CorpusSplit out;
    for (const std::size_t i : idx.train) out.train.push_back(corpus[i]);
    for (const std::size_t i : idx.validation) out.validation.push_back(corpus[i]);
    for (const std::size_t i : idx.test) out.test.push_back(corpus[i]);
    return out;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + e^z) without overflow
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double dot_row(const std::vector<std::pair<std::uint32_t, double>>& row,
               const std::vector<double>& w) {
    double z = 0.0;
    for (const auto& [col, v] : row) z += v * w[col];
    return z;
}

} // namespace

double bce_objective(const FeatureMatrix& features, const LabelMatrix& labels,
                     const std::vector<std::vector<double>>& weights,
                     const std::vector<double>& bias, double l2,
                     std::vector<std::vector<double>>* grad_w, std::vector<double>* grad_b) {
    const std::size_t n = features.rows.size();
    const std::size_t n_labels = labels.labels.size();
    const std::size_t n_feats = features.vocab.size();
    const double scale = 1.0 / static_cast<double>(n * n_labels);

    if (grad_w) grad_w->assign(n_labels, std::vector<double>(n_feats, 0.0));
    if (grad_b) grad_b->assign(n_labels, 0.0);

    double data = 0.0;
    for (std::size_t j = 0; j < n_labels; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double z = dot_row(features.rows[i], weights[j]) + bias[j];
            const double y = labels.rows[i][j];
            data += softplus(z) - y * z;
            if (grad_w || grad_b) {
                const double r = (sigmoid(z) - y) * scale;
                if (grad_b) (*grad_b)[j] += r;
                if (grad_w) {
                    for (const auto& [col, v] : features.rows[i]) (*grad_w)[j][col] += r * v;
                }
            }
        }
    }
    data *= scale;

    double penalty = 0.0;
    for (std::size_t j = 0; j < n_labels; ++j) {
        for (std::size_t k = 0; k < n_feats; ++k) {
            penalty += weights[j][k] * weights[j][k];
            if (grad_w) (*grad_w)[j][k] += l2 * weights[j][k];
        }
    }
    return data + 0.5 * l2 * penalty;
}

double max_stable_lr(const FeatureMatrix& features, double l2) {
    double frob_sq = 0.0;
    for (const auto& row : features.rows) {
        for (const auto& [col, v] : row) frob_sq += v * v;
    }
    const double lipschitz = frob_sq / (4.0 * static_cast<double>(features.rows.size())) + l2;
    return lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;
}

LinearModel train_linear(const FeatureMatrix& features, const LabelMatrix& labels, Task task,
                         const TrainConfig& cfg) {
    const std::size_t n = features.rows.size();
    if (n == 0 || labels.rows.size() != n) {
        throw data_error("features and labels are not aligned");
    }
    const std::size_t n_labels = labels.labels.size();
    const std::size_t n_feats = features.vocab.size();

    LinearModel model;
    model.task = task;
    model.labels = labels.labels;
    model.weights.assign(n_labels, std::vector<double>(n_feats, 0.0));
    model.bias.assign(n_labels, 0.0);

    std::vector<std::vector<double>> grad_w;
    std::vector<double> grad_b;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double loss =
            bce_objective(features, labels, model.weights, model.bias, cfg.l2, &grad_w, &grad_b);
        if (!std::isfinite(loss)) {
            throw data_error("training diverged (non-finite loss) at epoch " + std::to_string(epoch));
        }
        model.loss_history.push_back(loss);
        for (std::size_t j = 0; j < n_labels; ++j) {
            for (std::size_t k = 0; k < n_feats; ++k) {
                model.weights[j][k] -= cfg.lr * grad_w[j][k];
            }
            model.bias[j] -= cfg.lr * grad_b[j];
        }
    }

    model.final_loss = bce_objective(features, labels, model.weights, model.bias, cfg.l2);
    if (!std::isfinite(model.final_loss)) {
        throw data_error("training diverged (non-finite loss) at epoch " + std::to_string(cfg.epochs));
    }
    return model;
}

std::vector<std::vector<double>> predict_scores(const LinearModel& model,
                                                const FeatureMatrix& features) {
    std::vector<std::vector<double>> scores(features.rows.size(),
                                            std::vector<double>(model.labels.size(), 0.0));
    for (std::size_t i = 0; i < features.rows.size(); ++i) {
        for (std::size_t j = 0; j < model.labels.size(); ++j) {
            scores[i][j] = sigmoid(dot_row(features.rows[i], model.weights[j]) + model.bias[j]);
        }
    }
    return scores;
}

double auc_from_scores(const std::vector<double>& scores, const std::vector<double>& targets) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks across ties.
    std::vector<double> rank(scores.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg_rank;
        i = j + 1;
    }

    double pos_rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (targets[k] > 0.5) {
            pos_rank_sum += rank[k];
            ++n_pos;
        }
    }
    const std::size_t n_neg = targets.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) throw data_error("AUC needs both classes present");
    return (pos_rank_sum - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1)) /
           (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

EvalReport evaluate(const LinearModel& model, const FeatureMatrix& features,
                    const LabelMatrix& labels, double threshold) {
    const std::size_t n = features.rows.size();
    if (labels.rows.size() != n) throw data_error("features and labels are not aligned");
    const std::size_t n_labels = model.labels.size();
    const auto scores = predict_scores(model, features);

    EvalReport report;
    std::size_t exact = 0;
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t j = 0; j < n_labels; ++j) {
        report.per_label_counts.push_back({model.labels[j], 0, 0, 0, 0});
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool all_match = true;
        for (std::size_t j = 0; j < n_labels; ++j) {
            const bool pred = scores[i][j] > threshold;
            const bool truth = labels.rows[i][j] > 0.5;
            LabelCounts& c = report.per_label_counts[j];
            if (pred && truth) {
                ++c.tp;
                ++tp;
            } else if (pred && !truth) {
                ++c.fp;
                ++fp;
            } else if (!pred && truth) {
                ++c.fn;
                ++fn;
            } else {
                ++c.tn;
            }
            if (pred != truth) all_match = false;
        }
        if (all_match) ++exact;
    }
    report.accuracy = n ? static_cast<double>(exact) / static_cast<double>(n) : 0.0;
    const double f1_denom = 2.0 * static_cast<double>(tp) + static_cast<double>(fp + fn);
    report.micro_f1 = f1_denom > 0.0 ? 2.0 * static_cast<double>(tp) / f1_denom : 0.0;

    double auc_sum = 0.0;
    std::size_t auc_count = 0;
    for (std::size_t j = 0; j < n_labels; ++j) {
        std::vector<double> label_scores(n), label_targets(n);
        bool has_pos = false, has_neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            label_scores[i] = scores[i][j];
            label_targets[i] = labels.rows[i][j];
            (labels.rows[i][j] > 0.5 ? has_pos : has_neg) = true;
        }
        if (!has_pos || !has_neg) {
            report.auc_skipped_labels.push_back(model.labels[j]);
            continue;
        }
        auc_sum += auc_from_scores(label_scores, label_targets);
        ++auc_count;
    }
    report.roc_auc = auc_count ? auc_sum / static_cast<double>(auc_count) : 0.5;
    return report;
}

} // namespace kce
