#pragma once

#include <cstdint>
#include <vector>

#include "kce/corpus.hpp"

namespace kce {

// Synthetic discharge-note corpus. Each document draws one to three classes,
// injects the classes' signal concepts (with repetition) plus random noise
// concepts, and renders sectioned text with explicit "no <name>" clauses for
// negated mentions. Labels are a deterministic function of which signal
// concepts landed non-negated, so the whole corpus is reproducible from the
// seed alone.
struct SynthConfig {
    std::size_t n_docs = 100;
    std::size_t n_noise_terms = 100;
    std::size_t n_classes = 4;
    std::size_t signal_terms_per_class = 5;
    std::size_t concepts_per_doc = 30;
    double signal_prob = 0.9;          // chance each class signal term is injected
    double neg_fraction = 0.1;         // chance a mention is negated
    std::size_t signal_repeats = 3;    // copies of each injected signal mention
    bool emit_negation_flags = true;   // false leaves flags null for the negation stage
    std::uint64_t seed = 0;
};

std::vector<AnnotatedDocument> generate_synthetic_corpus(const SynthConfig& cfg);

} // namespace kce
