#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kce/corpus.hpp"

namespace kce {

// Header patterns are case-insensitive literals (or '|'-alternations of
// literals) matched at the start of a line and terminated by ':'.
struct HeaderRule {
    std::string pattern;
    std::string section_id;
};

class HeaderRuleSet {
public:
    HeaderRuleSet(std::vector<HeaderRule> rules, std::set<std::string> allow_list);

    // The five canonical sections with common header variants.
    static HeaderRuleSet defaults();

    // JSON: {"rules": {"pattern": "canonical_id"}, "allow_list": [...]}
    static HeaderRuleSet load(std::istream& in);

    struct Literal {
        std::string text;        // lowercase
        std::string section_id;
        std::size_t rule_order;  // for deterministic tie-breaking
    };

    const std::vector<Literal>& literals() const { return literals_; }
    const std::set<std::string>& allow_list() const { return allow_list_; }

private:
    std::vector<HeaderRule> rules_;
    std::vector<Literal> literals_;
    std::set<std::string> allow_list_;
};

// Splits text into sections. Headers are matched greedily top to bottom; each
// body runs to the next matched header or the end of text. Text before the
// first header becomes section "unknown" with an empty header span. Empty
// text yields an empty list. Header and body spans tile the whole text.
std::vector<Section> detect_sections(std::string_view text, const HeaderRuleSet& rules);

// Drops mentions outside every allow-listed section body and stamps the
// surviving mentions' section_id. Sections must already be detected.
AnnotatedDocument filter_sections(AnnotatedDocument doc, const HeaderRuleSet& rules);

} // namespace kce
