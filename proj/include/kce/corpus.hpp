#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kce/error.hpp"

namespace kce {

// Half-open range of Unicode scalar-value offsets into a document's text.
struct CharSpan {
    std::size_t start = 0;
    std::size_t end = 0;

    bool operator==(const CharSpan&) const = default;
};

struct LabelSet {
    std::optional<bool> binary;                       // mortality-style
    std::optional<std::set<std::string>> multi;       // diagnosis codes, up to 3

    bool operator==(const LabelSet&) const = default;
};

struct RawDocument {
    std::string doc_id;
    std::string text;
    LabelSet labels;

    bool operator==(const RawDocument&) const = default;
};

struct ConceptMention {
    std::string cui;                      // C + 7 digits
    std::string preferred_name;
    std::size_t start = 0;                // [start, end) within the owning text
    std::size_t end = 0;
    std::optional<std::string> section_id;
    std::optional<bool> negated;          // nullopt = to be computed

    bool operator==(const ConceptMention&) const = default;
};

struct Section {
    std::string section_id;               // canonical name or "unknown"
    CharSpan header;                      // matched header literal incl. the colon
    CharSpan body;

    bool operator==(const Section&) const = default;
};

struct AnnotatedDocument {
    RawDocument doc;
    std::vector<Section> sections;
    std::vector<ConceptMention> mentions;

    bool operator==(const AnnotatedDocument&) const = default;
};

bool is_cui(std::string_view s);

// Bidirectional term-id -> preferred-name table. Every positive entry owns a
// generated negated twin: id "NOT_" + cui, name "NOT " + base name. Names may
// not contain the phrase separator ", " because synthesized documents must
// split back into exact entries.
class ConceptDictionary {
public:
    static constexpr const char* kNegIdPrefix = "NOT_";
    static constexpr const char* kNegNamePrefix = "NOT ";
    static constexpr const char* kSeparator = ", ";

    // Inserts a cui plus its negated variant. Throws data_error on a
    // conflicting duplicate, an empty name, a name containing ", ", or a
    // malformed cui.
    void add_concept(const std::string& cui, const std::string& preferred_name);

    const std::string& lookup(const std::string& term_id) const;
    bool contains(const std::string& term_id) const;

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, std::string>& entries() const { return entries_; }

    static bool is_negated_id(std::string_view term_id);
    static std::string negate_id(const std::string& cui) { return std::string(kNegIdPrefix) + cui; }

private:
    std::map<std::string, std::string> entries_;
};

enum class Method {
    tfidf,
    yake,
    position_rank,
    multipartite_rank,
    embed_cosine,
    embed_graph,
};

std::string to_string(Method m);
Method method_from_string(std::string_view s);

struct RankedPhrase {
    std::string phrase;
    double score = 0.0;
    int rank = 0;            // 1-based, gapless within one result list
    Method method = Method::tfidf;

    bool operator==(const RankedPhrase&) const = default;
};

// One extractor run over one document.
struct DocumentRanking {
    std::string doc_id;
    Method method = Method::tfidf;
    std::vector<RankedPhrase> phrases;
};

struct KeyConceptDocument {
    std::string doc_id;
    std::vector<std::string> phrases;   // exact dictionary values, first-occurrence order
    std::vector<std::string> terms;     // term ids backing the phrases, aligned
    std::string text;                   // phrases joined by ", "

    bool operator==(const KeyConceptDocument&) const = default;
};

// --- corpus I/O ------------------------------------------------------------

// JSON-Lines corpus reader. One object per line:
//   {"doc_id": str, "text": str, "labels": {"binary": 0|1|null, "multi": [str]|null},
//    "concepts": [{"cui", "preferred_name", "start", "end", "section_id", "negated"}]}
// Unknown keys are ignored. Throws data_error naming the offending line or doc.
std::vector<AnnotatedDocument> parse_corpus(std::istream& in);

void serialize_corpus(const std::vector<AnnotatedDocument>& corpus, std::ostream& out);
std::string serialize_corpus(const std::vector<AnnotatedDocument>& corpus);

// Dictionary TSV: term_id<TAB>preferred_name, UTF-8, LF. Positive entries get
// their negated variants generated; explicit NOT_ lines are checked against
// the closure rule.
ConceptDictionary load_dictionary(std::istream& in);
void save_dictionary(const ConceptDictionary& dict, std::ostream& out);

// JSON-Lines writer for extractor output: one record per document,
// {"doc_id", "method", "phrases": [{"phrase", "rank", "score"}]}.
// Byte-identical across runs for identical inputs. Validates that ranks are
// 1..k with no gaps before writing anything.
void write_ranked(const std::vector<DocumentRanking>& results, std::ostream& out);
void write_ranked(const std::vector<DocumentRanking>& results, const std::string& path);

// Key-concept documents: {"doc_id", "terms", "text"} per line.
void write_key_concepts(const std::vector<KeyConceptDocument>& docs, std::ostream& out);
void write_key_concepts(const std::vector<KeyConceptDocument>& docs, const std::string& path);
std::vector<KeyConceptDocument> read_key_concepts(std::istream& in);

} // namespace kce
