#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kce/corpus.hpp"

namespace kce {

enum class Task { binary, multilabel };
std::string to_string(Task t);
Task task_from_string(std::string_view s);

enum class FeatureWeighting { binary, tfidf_normalized };

// Sparse bag-of-terms features, one row per document.
struct FeatureMatrix {
    std::vector<std::string> vocab;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
    FeatureWeighting weighting = FeatureWeighting::binary;
};

// Builds features from per-document term lists. When fixed_vocab is given,
// unseen terms are dropped; otherwise the vocabulary is collected from the
// input in first-occurrence order.
FeatureMatrix featurize(const std::vector<std::vector<std::string>>& doc_terms,
                        FeatureWeighting weighting,
                        const std::vector<std::string>* fixed_vocab = nullptr);

// Per-document 0/1 targets, one column per label.
struct LabelMatrix {
    std::vector<std::string> labels;             // label names, sorted
    std::vector<std::vector<double>> rows;       // rows[i][j] in {0, 1}
};

// Extracts targets for the task; throws data_error if any document lacks the
// required labels.
LabelMatrix make_labels(const std::vector<AnnotatedDocument>& docs, Task task);

struct SplitIndices {
    std::vector<std::size_t> train, validation, test;
};

// Deterministic seeded shuffle, then floor allocation for validation and test
// with the remainder going to train. Partitions are disjoint and covering.
SplitIndices split_indices(std::size_t n_docs, const std::vector<double>& ratios, std::uint64_t seed);

struct CorpusSplit {
    std::vector<AnnotatedDocument> train, validation, test;
};
CorpusSplit split_corpus(const std::vector<AnnotatedDocument>& corpus,
                         const std::vector<double>& ratios, std::uint64_t seed);

struct TrainConfig {
    double lr = 0.1;
    int epochs = 500;
    double l2 = 1e-4;
    std::uint64_t seed = 0;   // reserved; weights initialize to zero
};

// One independent logistic head per label.
struct LinearModel {
    Task task = Task::binary;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> weights;   // per label, vocab-sized
    std::vector<double> bias;
    std::vector<double> loss_history;           // mean data loss per epoch (before the step)
    double final_loss = 0.0;
};

// Full-batch gradient descent on sigmoid BCE with an L2 penalty on the
// weights. Throws data_error naming the epoch if the loss turns NaN/Inf.
LinearModel train_linear(const FeatureMatrix& features, const LabelMatrix& labels, Task task,
                         const TrainConfig& cfg);

// Regularized objective: mean sigmoid-BCE over examples and labels plus
// 0.5 * l2 * ||W||^2 (bias unpenalized). When grad_w/grad_b are non-null the
// analytic gradient is written into them. This is the single implementation
// the training loop steps on, so finite differences can probe it directly.
double bce_objective(const FeatureMatrix& features, const LabelMatrix& labels,
                     const std::vector<std::vector<double>>& weights,
                     const std::vector<double>& bias, double l2,
                     std::vector<std::vector<double>>* grad_w = nullptr,
                     std::vector<double>* grad_b = nullptr);

// Largest step size with a monotone-descent guarantee, from the Lipschitz
// bound ||X||_F^2 / (4N) + l2 of the BCE gradient.
double max_stable_lr(const FeatureMatrix& features, double l2);

std::vector<std::vector<double>> predict_scores(const LinearModel& model,
                                                const FeatureMatrix& features);

struct LabelCounts {
    std::string label;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

struct EvalReport {
    double accuracy = 0.0;    // exact match of the full label vector
    double micro_f1 = 0.0;    // pooled over labels
    double roc_auc = 0.0;     // rank statistic per label, macro-averaged
    std::vector<LabelCounts> per_label_counts;
    std::vector<std::string> auc_skipped_labels;   // labels with one class only
};

EvalReport evaluate(const LinearModel& model, const FeatureMatrix& features,
                    const LabelMatrix& labels, double threshold = 0.5);

// Mann-Whitney AUC with average ranks for ties. Requires both classes.
double auc_from_scores(const std::vector<double>& scores, const std::vector<double>& targets);

} // namespace kce
