#include "kce/negation.hpp"

#include <algorithm>
#include <istream>

#include <json.hpp>

#include "kce/tokenize.hpp"
#include "kce/unicode.hpp"

namespace kce {

TriggerLexicon TriggerLexicon::defaults() {
    TriggerLexicon lex;
    lex.pre_triggers = {
        "no", "not", "without", "denies", "denied", "denying", "no evidence of",
        "no sign of", "no signs of", "no suggestion of", "no history of", "absence of",
        "negative for", "free of", "never had", "never developed", "rule out",
        "rules out", "ruled out", "cannot", "declined", "declines", "fails to reveal",
        "lack of", "lacks", "unremarkable for", "with no", "resolved",
    };
    lex.post_triggers = {
        "unlikely", "was ruled out", "is ruled out", "are ruled out",
        "have been ruled out", "was negative", "were negative", "not seen",
    };
    lex.terminators = {
        "but", "however", "although", "though", "nevertheless", "yet",
        "aside from", "except", "apart from", "secondary to",
    };
    lex.scope_window = 5;
    return lex;
}

TriggerLexicon TriggerLexicon::load(std::istream& in) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed negation lexicon: ") + e.what());
    }
    TriggerLexicon lex;
    auto read_list = [&](const char* key, std::vector<std::string>& out) {
        if (!obj.contains(key)) return;
        for (const auto& v : obj[key]) out.push_back(v.get<std::string>());
    };
    read_list("pre", lex.pre_triggers);
    read_list("post", lex.post_triggers);
    read_list("terminators", lex.terminators);
    if (obj.contains("scope_window")) lex.scope_window = obj["scope_window"].get<std::size_t>();
    lex.validate();
    return lex;
}

void TriggerLexicon::validate() const {
    if (scope_window < 1) throw config_error("scope_window must be >= 1");
    for (const auto* list : {&pre_triggers, &post_triggers, &terminators}) {
        for (const std::string& phrase : *list) {
            if (phrase.empty()) throw config_error("empty trigger phrase");
            if (phrase != to_lower_ascii(phrase)) {
                throw config_error("trigger phrase must be lowercase: '" + phrase + "'");
            }
        }
    }
}

namespace {

struct TriggerMatch {
    std::size_t first = 0;   // token indices, inclusive
    std::size_t last = 0;
};

// Tokenized trigger phrases, longest first for greedy matching.
std::vector<std::vector<std::string>> tokenize_phrases(const std::vector<std::string>& phrases,
                                                       const StopwordSet& none) {
    std::vector<std::vector<std::string>> out;
    for (const std::string& phrase : phrases) {
        TokenStream ts = tokenize(phrase, none);
        if (ts.tokens.empty()) continue;
        std::vector<std::string> words;
        for (const Token& t : ts.tokens) words.push_back(t.lowered);
        out.push_back(std::move(words));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
}

bool phrase_matches(const TokenStream& stream, std::size_t at,
                    const std::vector<std::string>& words) {
    if (at + words.size() > stream.tokens.size()) return false;
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (stream.tokens[at + k].lowered != words[k]) return false;
        if (stream.tokens[at + k].sentence != stream.tokens[at].sentence) return false;
    }
    return true;
}

// Greedy longest-match scan; matched tokens are consumed.
std::vector<TriggerMatch> find_matches(const TokenStream& stream,
                                       const std::vector<std::vector<std::string>>& phrases) {
    std::vector<TriggerMatch> matches;
    std::size_t i = 0;
    while (i < stream.tokens.size()) {
        bool matched = false;
        for (const auto& words : phrases) {
            if (phrase_matches(stream, i, words)) {
                matches.push_back({i, i + words.size() - 1});
                i += words.size();
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return matches;
}

} // namespace

AnnotatedDocument tag_negation(AnnotatedDocument doc, const TriggerLexicon& lexicon) {
    lexicon.validate();

    // Section starts force scope boundaries on top of sentence punctuation.
    std::vector<std::size_t> breaks;
    for (const Section& s : doc.sections) {
        breaks.push_back(s.header.start);
        breaks.push_back(s.body.start);
    }
    const StopwordSet none;   // negation tokenization keeps every token
    const TokenStream stream = tokenize(doc.doc.text, none, &breaks);

    const auto pre = tokenize_phrases(lexicon.pre_triggers, none);
    const auto post = tokenize_phrases(lexicon.post_triggers, none);
    const auto term = tokenize_phrases(lexicon.terminators, none);

    const auto pre_matches = find_matches(stream, pre);
    const auto post_matches = find_matches(stream, post);

    std::vector<bool> is_terminator(stream.tokens.size(), false);
    for (const TriggerMatch& m : find_matches(stream, term)) {
        for (std::size_t k = m.first; k <= m.last; ++k) is_terminator[k] = true;
    }

    auto terminator_between = [&](std::size_t lo, std::size_t hi) {   // exclusive bounds
        for (std::size_t k = lo + 1; k < hi; ++k) {
            if (is_terminator[k]) return true;
        }
        return false;
    };

    for (ConceptMention& mention : doc.mentions) {
        if (mention.negated.has_value()) continue;

        // Token range covered by the mention span.
        std::size_t first_tok = stream.tokens.size();
        std::size_t last_tok = 0;
        bool any = false;
        for (std::size_t k = 0; k < stream.tokens.size(); ++k) {
            const Token& t = stream.tokens[k];
            if (t.cp_end <= mention.start || t.cp_start >= mention.end) continue;
            if (!any) first_tok = k;
            last_tok = k;
            any = true;
        }
        if (!any) {
            mention.negated = false;
            continue;
        }

        bool negated = false;
        for (const TriggerMatch& m : pre_matches) {
            if (m.last >= first_tok) continue;
            if (stream.tokens[m.last].sentence != stream.tokens[first_tok].sentence) continue;
            const std::size_t distance = first_tok - m.last;
            if (distance > lexicon.scope_window) continue;
            if (terminator_between(m.last, first_tok)) continue;
            negated = true;
            break;
        }
        if (!negated) {
            for (const TriggerMatch& m : post_matches) {
                if (m.first <= last_tok) continue;
                if (stream.tokens[m.first].sentence != stream.tokens[last_tok].sentence) continue;
                const std::size_t distance = m.first - last_tok;
                if (distance > lexicon.scope_window) continue;
                if (terminator_between(last_tok, m.first)) continue;
                negated = true;
                break;
            }
        }
        mention.negated = negated;
    }
    return doc;
}

} // namespace kce
