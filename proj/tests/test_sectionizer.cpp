#include <doctest.h>

#include <sstream>

#include "kce/rng.hpp"
#include "kce/sectionizer.hpp"
#include "kce/unicode.hpp"

using namespace kce;

TEST_CASE("two canonical headers split into two sections") {
    const auto rules = HeaderRuleSet::defaults();
    const auto sections = detect_sections("Chief Complaint: chest pain\nPhysical Exam: wheezing", rules);
    REQUIRE(sections.size() == 2);
    CHECK(sections[0].section_id == "chief_complaint");
    CHECK(sections[1].section_id == "physical_exam");
    CHECK(sections[0].header.start == 0);
    CHECK(sections[0].header.end == 16);   // "Chief Complaint:" is 16 chars
    CHECK(sections[0].body.end == 28);     // body runs through the newline
    CHECK(sections[1].body.end == 51);
}

TEST_CASE("a note with all five canonical headers yields the full section list") {
    const std::string note =
        "Chief Complaint: dyspnea\n"
        "History of Present Illness: three days of cough\n"
        "Past Medical History: copd\n"
        "Family History: none\n"
        "Physical Exam: wheezing bilaterally\n";
    const auto sections = detect_sections(note, HeaderRuleSet::defaults());
    REQUIRE(sections.size() == 5);
    CHECK(sections[0].section_id == "chief_complaint");
    CHECK(sections[1].section_id == "history_of_present_illness");
    CHECK(sections[2].section_id == "past_medical_history");
    CHECK(sections[3].section_id == "family_history");
    CHECK(sections[4].section_id == "physical_exam");
}

TEST_CASE("text without headers becomes one unknown section") {
    const auto sections = detect_sections("no headers here", HeaderRuleSet::defaults());
    REQUIRE(sections.size() == 1);
    CHECK(sections[0].section_id == "unknown");
    CHECK(sections[0].header.start == sections[0].header.end);
    CHECK(sections[0].body.start == 0);
    CHECK(sections[0].body.end == 15);
}

TEST_CASE("empty text yields an empty section list") {
    CHECK(detect_sections("", HeaderRuleSet::defaults()).empty());
}

TEST_CASE("detection is case-insensitive") {
    const std::string note = "Chief Complaint: pain\nPhysical Exam: ok";
    const auto upper = detect_sections("CHIEF COMPLAINT: PAIN\nPHYSICAL EXAM: OK",
                                       HeaderRuleSet::defaults());
    const auto lower = detect_sections("chief complaint: pain\nphysical exam: ok",
                                       HeaderRuleSet::defaults());
    const auto mixed = detect_sections(note, HeaderRuleSet::defaults());
    REQUIRE(upper.size() == mixed.size());
    for (std::size_t i = 0; i < mixed.size(); ++i) {
        CHECK(upper[i] == mixed[i]);
        CHECK(lower[i] == mixed[i]);
    }
}

TEST_CASE("headers must sit at line starts and end with a colon") {
    const auto rules = HeaderRuleSet::defaults();
    const auto mid = detect_sections("pain near chief complaint: none", rules);
    REQUIRE(mid.size() == 1);
    CHECK(mid[0].section_id == "unknown");
    const auto no_colon = detect_sections("Chief Complaint was pain", rules);
    REQUIRE(no_colon.size() == 1);
    CHECK(no_colon[0].section_id == "unknown");
}

TEST_CASE("a repeated header starts a new section") {
    const auto sections =
        detect_sections("Chief Complaint: a\nChief Complaint: b", HeaderRuleSet::defaults());
    REQUIRE(sections.size() == 2);
    CHECK(sections[0].section_id == "chief_complaint");
    CHECK(sections[1].section_id == "chief_complaint");
}

TEST_CASE("header and body spans tile the whole text") {
    Rng rng(7);
    const char* snippets[] = {"Chief Complaint:", "hpi:", "PE:", "plain words", "\n", " ",
                              "Family History:", "fever cough", ":", "pmh:"};
    for (int iter = 0; iter < 200; ++iter) {
        std::string text;
        const std::size_t parts = rng.below(12);
        for (std::size_t i = 0; i < parts; ++i) text += snippets[rng.below(10)];
        const auto sections = detect_sections(text, HeaderRuleSet::defaults());
        const std::size_t total = codepoint_count(text);
        if (text.empty()) {
            CHECK(sections.empty());
            continue;
        }
        std::size_t cursor = 0;
        for (const Section& s : sections) {
            CHECK(s.header.start == cursor);
            CHECK(s.header.end >= s.header.start);
            CHECK(s.body.start == s.header.end);
            CHECK(s.body.end >= s.body.start);
            cursor = s.body.end;
        }
        CHECK(cursor == total);
    }
}

namespace {

AnnotatedDocument make_doc(const std::string& text) {
    AnnotatedDocument doc;
    doc.doc.doc_id = "d";
    doc.doc.text = text;
    doc.sections = detect_sections(text, HeaderRuleSet::defaults());
    return doc;
}

ConceptMention mention_at(std::size_t start, std::size_t end) {
    ConceptMention m;
    m.cui = "C0000001";
    m.preferred_name = "thing";
    m.start = start;
    m.end = end;
    return m;
}

} // namespace

TEST_CASE("mentions inside allow-listed sections are retained and stamped") {
    AnnotatedDocument doc = make_doc("Family History: cancer\nnotes");
    doc.mentions.push_back(mention_at(16, 22));   // "cancer"
    const auto filtered = filter_sections(doc, HeaderRuleSet::defaults());
    REQUIRE(filtered.mentions.size() == 1);
    CHECK(filtered.mentions[0].section_id == "family_history");
}

TEST_CASE("mentions in the unknown preamble are removed") {
    AnnotatedDocument doc = make_doc("preamble text\nChief Complaint: pain");
    doc.mentions.push_back(mention_at(0, 8));
    const auto filtered = filter_sections(doc, HeaderRuleSet::defaults());
    CHECK(filtered.mentions.empty());
}

TEST_CASE("an empty allow-list removes every mention") {
    HeaderRuleSet rules({{"chief complaint", "chief_complaint"}}, {});
    AnnotatedDocument doc;
    doc.doc.doc_id = "d";
    doc.doc.text = "Chief Complaint: pain";
    doc.sections = detect_sections(doc.doc.text, rules);
    doc.mentions.push_back(mention_at(17, 21));
    CHECK(filter_sections(doc, rules).mentions.empty());
}

TEST_CASE("filter_sections is idempotent") {
    AnnotatedDocument doc = make_doc("Chief Complaint: pain and more pain\nPE: fine");
    doc.mentions.push_back(mention_at(17, 21));
    doc.mentions.push_back(mention_at(0, 5));
    const auto once = filter_sections(doc, HeaderRuleSet::defaults());
    const auto twice = filter_sections(once, HeaderRuleSet::defaults());
    CHECK(once == twice);
}

TEST_CASE("filter_sections requires detected sections") {
    AnnotatedDocument doc;
    doc.doc.doc_id = "d";
    doc.doc.text = "some text";
    doc.mentions.push_back(mention_at(0, 4));
    CHECK_THROWS_AS(filter_sections(doc, HeaderRuleSet::defaults()), data_error);
}

TEST_CASE("rule sets validate their configuration") {
    CHECK_THROWS_AS(HeaderRuleSet({{"cc", "chief_complaint"}, {"cc", "other"}}, {}), config_error);
    CHECK_THROWS_AS(HeaderRuleSet({{"cc", "chief_complaint"}}, {"missing_target"}), config_error);
    CHECK_THROWS_AS(HeaderRuleSet({{"a||b", "x"}}, {}), config_error);
}

TEST_CASE("rule sets load from JSON") {
    std::istringstream in(R"({"rules": {"reason for visit|rfv": "chief_complaint"},
                              "allow_list": ["chief_complaint"]})");
    const HeaderRuleSet rules = HeaderRuleSet::load(in);
    const auto sections = detect_sections("RFV: headache", rules);
    REQUIRE(sections.size() == 1);
    CHECK(sections[0].section_id == "chief_complaint");
}
