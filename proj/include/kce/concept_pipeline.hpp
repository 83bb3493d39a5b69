#pragma once

#include <string>
#include <vector>

#include "kce/corpus.hpp"

namespace kce {

// A document as an ordered multiset of term ids (cui or NOT_cui).
struct ConceptBag {
    std::string doc_id;
    std::vector<std::string> terms;   // document order, multiplicity preserved

    bool operator==(const ConceptBag&) const = default;
};

// Emits one term id per retained mention, in mention order; negated mentions
// emit NOT_cui. Throws data_error if any mention still has an unresolved
// negation flag.
ConceptBag to_concept_bag(const AnnotatedDocument& doc);

// One entry per distinct (cui, preferred_name) across the corpus, plus the
// generated negated variants. A cui seen with two different names is an
// error: names must be normalized upstream.
ConceptDictionary build_dictionary(const std::vector<AnnotatedDocument>& corpus);

// Joins the preferred names of the selected term ids with ", ". Names are
// emitted verbatim: no tokenization, splitting, or case change. Duplicate
// term ids are emitted once, keeping the order of first occurrence.
KeyConceptDocument synthesize_document(const std::string& doc_id,
                                       const std::vector<std::string>& selected,
                                       const ConceptDictionary& dict);

} // namespace kce
