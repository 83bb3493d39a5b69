#include "kce/concept_pipeline.hpp"

#include <unordered_set>

namespace kce {

ConceptBag to_concept_bag(const AnnotatedDocument& doc) {
    ConceptBag bag;
    bag.doc_id = doc.doc.doc_id;
    bag.terms.reserve(doc.mentions.size());
    for (const ConceptMention& m : doc.mentions) {
        if (!m.negated.has_value()) {
            throw data_error("doc '" + doc.doc.doc_id + "': mention " + m.cui +
                             " has an unresolved negation flag; run tag_negation first");
        }
        bag.terms.push_back(*m.negated ? ConceptDictionary::negate_id(m.cui) : m.cui);
    }
    return bag;
}

ConceptDictionary build_dictionary(const std::vector<AnnotatedDocument>& corpus) {
    ConceptDictionary dict;
    for (const AnnotatedDocument& doc : corpus) {
        for (const ConceptMention& m : doc.mentions) {
            dict.add_concept(m.cui, m.preferred_name);
        }
    }
    return dict;
}

KeyConceptDocument synthesize_document(const std::string& doc_id,
                                       const std::vector<std::string>& selected,
                                       const ConceptDictionary& dict) {
    KeyConceptDocument out;
    out.doc_id = doc_id;
    std::unordered_set<std::string> seen;
    for (const std::string& term_id : selected) {
        if (!seen.insert(term_id).second) continue;
        const std::string& name = dict.lookup(term_id);
        if (!out.terms.empty()) out.text += ConceptDictionary::kSeparator;
        out.terms.push_back(term_id);
        out.phrases.push_back(name);
        out.text += name;
    }
    return out;
}

} // namespace kce
