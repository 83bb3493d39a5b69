#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kce/corpus.hpp"

namespace kce {

// Trigger-lexicon negation in the style of the classic discharge-summary
// algorithm: pre-triggers negate mentions within a token window to their
// right, post-triggers to their left, and terminators cut the scope. Scopes
// never cross a sentence or section boundary.
struct TriggerLexicon {
    std::vector<std::string> pre_triggers;
    std::vector<std::string> post_triggers;
    std::vector<std::string> terminators;
    std::size_t scope_window = 5;

    static TriggerLexicon defaults();

    // JSON: {"pre": [...], "post": [...], "terminators": [...], "scope_window": int}
    static TriggerLexicon load(std::istream& in);

    void validate() const;   // phrases non-empty lowercase, window >= 1
};

// Computes a flag for every mention whose `negated` is unset; mentions with
// explicit flags are untouched. Deterministic and idempotent.
AnnotatedDocument tag_negation(AnnotatedDocument doc, const TriggerLexicon& lexicon);

} // namespace kce
