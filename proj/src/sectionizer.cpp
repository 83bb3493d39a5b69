#include "kce/sectionizer.hpp"

#include <algorithm>
#include <istream>

#include <json.hpp>

#include "kce/unicode.hpp"

namespace kce {

HeaderRuleSet::HeaderRuleSet(std::vector<HeaderRule> rules, std::set<std::string> allow_list)
    : rules_(std::move(rules)), allow_list_(std::move(allow_list)) {
    std::set<std::string> seen_patterns;
    std::set<std::string> targets;
    for (std::size_t order = 0; order < rules_.size(); ++order) {
        const HeaderRule& rule = rules_[order];
        if (rule.pattern.empty() || rule.section_id.empty()) {
            throw config_error("header rule with empty pattern or section id");
        }
        if (!seen_patterns.insert(rule.pattern).second) {
            throw config_error("duplicate header pattern '" + rule.pattern + "'");
        }
        targets.insert(rule.section_id);
        std::size_t pos = 0;
        while (pos <= rule.pattern.size()) {
            const auto bar = rule.pattern.find('|', pos);
            const std::string lit =
                rule.pattern.substr(pos, bar == std::string::npos ? bar : bar - pos);
            if (lit.empty() || lit.find('\n') != std::string::npos) {
                throw config_error("bad literal in header pattern '" + rule.pattern + "'");
            }
            literals_.push_back({to_lower_ascii(lit), rule.section_id, order});
            if (bar == std::string::npos) break;
            pos = bar + 1;
        }
    }
    for (const std::string& id : allow_list_) {
        if (!targets.count(id)) {
            throw config_error("allow-list entry '" + id + "' is not a rule target");
        }
    }
    // Longest literal first so "physical exam" beats "pe"; rule order breaks ties.
    std::stable_sort(literals_.begin(), literals_.end(), [](const Literal& a, const Literal& b) {
        if (a.text.size() != b.text.size()) return a.text.size() > b.text.size();
        return a.rule_order < b.rule_order;
    });
}

HeaderRuleSet HeaderRuleSet::defaults() {
    return HeaderRuleSet(
        {
            {"chief complaint|chief complaints|cc", "chief_complaint"},
            {"history of present illness|history of the present illness|hpi", "history_of_present_illness"},
            {"past medical history|past medical hx|pmh|pmhx", "past_medical_history"},
            {"family history|family hx|fh", "family_history"},
            {"physical exam|physical examination|pe", "physical_exam"},
        },
        {"chief_complaint", "history_of_present_illness", "past_medical_history", "family_history",
         "physical_exam"});
}

HeaderRuleSet HeaderRuleSet::load(std::istream& in) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed header rules file: ") + e.what());
    }
    if (!obj.is_object() || !obj.contains("rules") || !obj["rules"].is_object()) {
        throw config_error("header rules file needs a 'rules' object");
    }
    std::vector<HeaderRule> rules;
    for (const auto& [pattern, target] : obj["rules"].items()) {
        if (!target.is_string()) throw config_error("rule target for '" + pattern + "' must be a string");
        rules.push_back({pattern, target.get<std::string>()});
    }
    std::set<std::string> allow;
    if (obj.contains("allow_list")) {
        for (const auto& v : obj["allow_list"]) allow.insert(v.get<std::string>());
    }
    return HeaderRuleSet(std::move(rules), std::move(allow));
}

namespace {

bool matches_at(std::string_view text, std::size_t byte_pos, const std::string& lowered_literal) {
    if (byte_pos + lowered_literal.size() + 1 > text.size()) return false;
    for (std::size_t k = 0; k < lowered_literal.size(); ++k) {
        if (ascii_lower(text[byte_pos + k]) != lowered_literal[k]) return false;
    }
    return text[byte_pos + lowered_literal.size()] == ':';
}

struct HeaderMatch {
    std::size_t cp_start = 0;
    std::size_t cp_end = 0;   // past the colon
    std::string section_id;
};

} // namespace

std::vector<Section> detect_sections(std::string_view text, const HeaderRuleSet& rules) {
    std::vector<Section> sections;
    if (text.empty()) return sections;

    std::vector<HeaderMatch> matches;
    std::size_t byte_pos = 0;
    std::size_t cp_pos = 0;
    bool at_line_start = true;
    while (byte_pos < text.size()) {
        if (at_line_start) {
            for (const HeaderRuleSet::Literal& lit : rules.literals()) {
                if (matches_at(text, byte_pos, lit.text)) {
                    matches.push_back(
                        {cp_pos, cp_pos + codepoint_count(lit.text) + 1, lit.section_id});
                    break;
                }
            }
        }
        at_line_start = text[byte_pos] == '\n';
        next_codepoint(text, byte_pos);
        ++cp_pos;
    }
    const std::size_t total_cp = cp_pos;

    if (matches.empty() || matches.front().cp_start > 0) {
        const std::size_t first = matches.empty() ? total_cp : matches.front().cp_start;
        sections.push_back({"unknown", {0, 0}, {0, first}});
    }
    for (std::size_t i = 0; i < matches.size(); ++i) {
        const std::size_t body_end = i + 1 < matches.size() ? matches[i + 1].cp_start : total_cp;
        sections.push_back({matches[i].section_id,
                            {matches[i].cp_start, matches[i].cp_end},
                            {matches[i].cp_end, body_end}});
    }
    return sections;
}

AnnotatedDocument filter_sections(AnnotatedDocument doc, const HeaderRuleSet& rules) {
    if (doc.sections.empty() && !doc.doc.text.empty()) {
        throw data_error("doc '" + doc.doc.doc_id + "': sections not detected; run detect_sections first");
    }
    std::vector<ConceptMention> kept;
    kept.reserve(doc.mentions.size());
    for (ConceptMention m : doc.mentions) {
        for (const Section& s : doc.sections) {
            if (!rules.allow_list().count(s.section_id)) continue;
            if (m.start >= s.body.start && m.end <= s.body.end) {
                m.section_id = s.section_id;
                kept.push_back(std::move(m));
                break;
            }
        }
    }
    doc.mentions = std::move(kept);
    return doc;
}

} // namespace kce
