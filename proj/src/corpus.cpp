#include "kce/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "kce/unicode.hpp"

namespace kce {

using json = nlohmann::ordered_json;

bool is_cui(std::string_view s) {
    if (s.size() != 8 || s[0] != 'C') return false;
    for (std::size_t i = 1; i < 8; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

// --- ConceptDictionary -------------------------------------------------------

bool ConceptDictionary::is_negated_id(std::string_view term_id) {
    return term_id.rfind(kNegIdPrefix, 0) == 0;
}

void ConceptDictionary::add_concept(const std::string& cui, const std::string& preferred_name) {
    if (!is_cui(cui)) {
        throw data_error("invalid cui '" + cui + "' (expected C followed by 7 digits)");
    }
    if (preferred_name.empty()) {
        throw data_error("empty preferred name for " + cui);
    }
    if (preferred_name.find(kSeparator) != std::string::npos) {
        throw data_error("preferred name for " + cui + " contains the reserved separator \", \": '" +
                         preferred_name + "'");
    }
    const std::string neg_id = negate_id(cui);
    const std::string neg_name = std::string(kNegNamePrefix) + preferred_name;
    for (const auto& [id, name] : {std::pair{cui, preferred_name}, std::pair{neg_id, neg_name}}) {
        auto it = entries_.find(id);
        if (it != entries_.end()) {
            if (it->second != name) {
                throw data_error("conflicting names for term '" + id + "': '" + it->second +
                                 "' vs '" + name + "'");
            }
            continue;
        }
        entries_.emplace(id, name);
    }
}

const std::string& ConceptDictionary::lookup(const std::string& term_id) const {
    auto it = entries_.find(term_id);
    if (it == entries_.end()) {
        throw data_error("unknown term id '" + term_id + "'");
    }
    return it->second;
}

bool ConceptDictionary::contains(const std::string& term_id) const {
    return entries_.count(term_id) != 0;
}

// --- Method ------------------------------------------------------------------

std::string to_string(Method m) {
    switch (m) {
        case Method::tfidf: return "tfidf";
        case Method::yake: return "yake";
        case Method::position_rank: return "position_rank";
        case Method::multipartite_rank: return "multipartite_rank";
        case Method::embed_cosine: return "embed_cosine";
        case Method::embed_graph: return "embed_graph";
    }
    return "tfidf";
}

Method method_from_string(std::string_view s) {
    if (s == "tfidf") return Method::tfidf;
    if (s == "yake") return Method::yake;
    if (s == "position_rank") return Method::position_rank;
    if (s == "multipartite_rank") return Method::multipartite_rank;
    if (s == "embed_cosine") return Method::embed_cosine;
    if (s == "embed_graph") return Method::embed_graph;
    throw config_error("unknown method '" + std::string(s) + "'");
}

// --- corpus JSONL --------------------------------------------------------------

namespace {

std::optional<bool> parse_binary_label(const json& v, std::size_t line_no) {
    if (v.is_null()) return std::nullopt;
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) {
        const auto n = v.get<long long>();
        if (n == 0 || n == 1) return n == 1;
    }
    throw data_error("line " + std::to_string(line_no) + ": labels.binary must be 0, 1 or null");
}

ConceptMention parse_mention(const json& c, const std::string& doc_id, std::size_t text_cp_len,
                             std::size_t line_no) {
    ConceptMention m;
    if (!c.contains("cui") || !c["cui"].is_string()) {
        throw data_error("line " + std::to_string(line_no) + ": concept without string 'cui'");
    }
    m.cui = c["cui"].get<std::string>();
    if (!is_cui(m.cui)) {
        throw data_error("doc '" + doc_id + "': invalid cui '" + m.cui + "'");
    }
    if (!c.contains("preferred_name") || !c["preferred_name"].is_string() ||
        c["preferred_name"].get<std::string>().empty()) {
        throw data_error("doc '" + doc_id + "': concept " + m.cui + " missing preferred_name");
    }
    m.preferred_name = c["preferred_name"].get<std::string>();
    if (!c.contains("start") || !c.contains("end") || !c["start"].is_number_integer() ||
        !c["end"].is_number_integer()) {
        throw data_error("doc '" + doc_id + "': concept " + m.cui + " needs integer start/end");
    }
    const auto start = c["start"].get<long long>();
    const auto end = c["end"].get<long long>();
    if (start < 0 || end <= start || static_cast<std::size_t>(end) > text_cp_len) {
        throw data_error("doc '" + doc_id + "': span [" + std::to_string(start) + ", " +
                         std::to_string(end) + ") outside text bounds");
    }
    m.start = static_cast<std::size_t>(start);
    m.end = static_cast<std::size_t>(end);
    if (c.contains("section_id") && !c["section_id"].is_null()) {
        m.section_id = c["section_id"].get<std::string>();
    }
    if (c.contains("negated") && !c["negated"].is_null()) {
        m.negated = c["negated"].get<bool>();
    }
    return m;
}

json mention_to_json(const ConceptMention& m) {
    json c;
    c["cui"] = m.cui;
    c["preferred_name"] = m.preferred_name;
    c["start"] = m.start;
    c["end"] = m.end;
    c["section_id"] = m.section_id ? json(*m.section_id) : json(nullptr);
    c["negated"] = m.negated ? json(*m.negated) : json(nullptr);
    return c;
}

} // namespace

std::vector<AnnotatedDocument> parse_corpus(std::istream& in) {
    std::vector<AnnotatedDocument> corpus;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw data_error("line " + std::to_string(line_no) + ": malformed JSON (" + e.what() + ")");
        }
        if (!obj.is_object()) {
            throw data_error("line " + std::to_string(line_no) + ": expected a JSON object");
        }
        AnnotatedDocument doc;
        if (!obj.contains("doc_id") || !obj["doc_id"].is_string() ||
            obj["doc_id"].get<std::string>().empty()) {
            throw data_error("line " + std::to_string(line_no) + ": missing or empty doc_id");
        }
        doc.doc.doc_id = obj["doc_id"].get<std::string>();
        if (!seen_ids.insert(doc.doc.doc_id).second) {
            throw data_error("duplicate doc_id '" + doc.doc.doc_id + "' at line " +
                             std::to_string(line_no));
        }
        if (obj.contains("text")) {
            if (!obj["text"].is_string()) {
                throw data_error("line " + std::to_string(line_no) + ": text must be a string");
            }
            doc.doc.text = obj["text"].get<std::string>();
        }
        if (obj.contains("labels") && obj["labels"].is_object()) {
            const json& labels = obj["labels"];
            if (labels.contains("binary")) {
                doc.doc.labels.binary = parse_binary_label(labels["binary"], line_no);
            }
            if (labels.contains("multi") && !labels["multi"].is_null()) {
                if (!labels["multi"].is_array()) {
                    throw data_error("line " + std::to_string(line_no) +
                                     ": labels.multi must be an array or null");
                }
                std::set<std::string> codes;
                for (const auto& v : labels["multi"]) {
                    if (!v.is_string()) {
                        throw data_error("line " + std::to_string(line_no) +
                                         ": labels.multi entries must be strings");
                    }
                    codes.insert(v.get<std::string>());
                }
                doc.doc.labels.multi = std::move(codes);
            }
        }
        const std::size_t text_cp_len = codepoint_count(doc.doc.text);
        if (obj.contains("concepts")) {
            if (!obj["concepts"].is_array()) {
                throw data_error("line " + std::to_string(line_no) + ": concepts must be an array");
            }
            for (const auto& c : obj["concepts"]) {
                doc.mentions.push_back(parse_mention(c, doc.doc.doc_id, text_cp_len, line_no));
            }
        }
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

void serialize_corpus(const std::vector<AnnotatedDocument>& corpus, std::ostream& out) {
    for (const AnnotatedDocument& d : corpus) {
        json obj;
        obj["doc_id"] = d.doc.doc_id;
        obj["text"] = d.doc.text;
        json labels;
        labels["binary"] = d.doc.labels.binary ? json(*d.doc.labels.binary ? 1 : 0) : json(nullptr);
        if (d.doc.labels.multi) {
            labels["multi"] = json::array();
            for (const std::string& code : *d.doc.labels.multi) labels["multi"].push_back(code);
        } else {
            labels["multi"] = nullptr;
        }
        obj["labels"] = std::move(labels);
        obj["concepts"] = json::array();
        for (const ConceptMention& m : d.mentions) obj["concepts"].push_back(mention_to_json(m));
        out << obj.dump() << '\n';
    }
}

std::string serialize_corpus(const std::vector<AnnotatedDocument>& corpus) {
    std::ostringstream out;
    serialize_corpus(corpus, out);
    return out.str();
}

// --- dictionary TSV ------------------------------------------------------------

ConceptDictionary load_dictionary(std::istream& in) {
    ConceptDictionary dict;
    std::vector<std::pair<std::string, std::string>> negated_lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw data_error("dictionary line " + std::to_string(line_no) + ": missing tab separator");
        }
        std::string term_id = line.substr(0, tab);
        std::string name = line.substr(tab + 1);
        if (name.empty()) {
            throw data_error("dictionary line " + std::to_string(line_no) + ": empty name for '" +
                             term_id + "'");
        }
        if (ConceptDictionary::is_negated_id(term_id)) {
            negated_lines.emplace_back(std::move(term_id), std::move(name));
        } else {
            dict.add_concept(term_id, name);
        }
    }
    // Explicit negated lines must agree with the generated closure.
    for (const auto& [term_id, name] : negated_lines) {
        const std::string base = term_id.substr(std::string(ConceptDictionary::kNegIdPrefix).size());
        if (!dict.contains(base)) {
            throw data_error("dictionary entry '" + term_id + "' has no positive entry '" + base + "'");
        }
        const std::string expected = std::string(ConceptDictionary::kNegNamePrefix) + dict.lookup(base);
        if (name != expected) {
            throw data_error("conflicting names for term '" + term_id + "': '" + expected + "' vs '" +
                             name + "'");
        }
    }
    return dict;
}

void save_dictionary(const ConceptDictionary& dict, std::ostream& out) {
    for (const auto& [term_id, name] : dict.entries()) {
        out << term_id << '\t' << name << '\n';
    }
}

// --- ranked / key-concept JSONL --------------------------------------------------

void write_ranked(const std::vector<DocumentRanking>& results, std::ostream& out) {
    for (const DocumentRanking& r : results) {
        for (std::size_t i = 0; i < r.phrases.size(); ++i) {
            if (r.phrases[i].rank != static_cast<int>(i) + 1) {
                throw data_error("doc '" + r.doc_id + "': ranks are not a gapless 1..k sequence");
            }
        }
        json obj;
        obj["doc_id"] = r.doc_id;
        obj["method"] = to_string(r.method);
        obj["phrases"] = json::array();
        for (const RankedPhrase& p : r.phrases) {
            json ph;
            ph["phrase"] = p.phrase;
            ph["score"] = p.score;
            ph["rank"] = p.rank;
            obj["phrases"].push_back(std::move(ph));
        }
        out << obj.dump() << '\n';
    }
}

void write_ranked(const std::vector<DocumentRanking>& results, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    write_ranked(results, out);
    out.flush();
    if (!out) throw error("failed writing '" + path + "'");
}

void write_key_concepts(const std::vector<KeyConceptDocument>& docs, std::ostream& out) {
    for (const KeyConceptDocument& d : docs) {
        json obj;
        obj["doc_id"] = d.doc_id;
        obj["text"] = d.text;
        obj["terms"] = d.terms;
        out << obj.dump() << '\n';
    }
}

void write_key_concepts(const std::vector<KeyConceptDocument>& docs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    write_key_concepts(docs, out);
    out.flush();
    if (!out) throw error("failed writing '" + path + "'");
}

std::vector<KeyConceptDocument> read_key_concepts(std::istream& in) {
    std::vector<KeyConceptDocument> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw data_error("line " + std::to_string(line_no) + ": malformed JSON (" + e.what() + ")");
        }
        KeyConceptDocument d;
        if (!obj.contains("doc_id") || !obj["doc_id"].is_string()) {
            throw data_error("line " + std::to_string(line_no) + ": missing doc_id");
        }
        d.doc_id = obj["doc_id"].get<std::string>();
        if (obj.contains("text") && obj["text"].is_string()) d.text = obj["text"].get<std::string>();
        if (obj.contains("terms") && obj["terms"].is_array()) {
            for (const auto& t : obj["terms"]) d.terms.push_back(t.get<std::string>());
        }
        if (!d.text.empty()) {
            std::size_t pos = 0;
            while (true) {
                const auto next = d.text.find(ConceptDictionary::kSeparator, pos);
                if (next == std::string::npos) {
                    d.phrases.push_back(d.text.substr(pos));
                    break;
                }
                d.phrases.push_back(d.text.substr(pos, next - pos));
                pos = next + 2;
            }
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

} // namespace kce
