#include "kce/synth.hpp"

#include <algorithm>
#include <set>

#include "kce/rng.hpp"
#include "kce/unicode.hpp"

namespace kce {

namespace {

std::string pad(std::size_t v, std::size_t width) {
    std::string s = std::to_string(v);
    while (s.size() < width) s.insert(s.begin(), '0');
    return s;
}

std::string signal_cui(std::size_t cls, std::size_t term) {
    return "C1" + pad(cls, 2) + pad(term, 4);
}

std::string noise_cui(std::size_t i) { return "C9" + pad(i, 6); }

std::string signal_name(std::size_t cls, std::size_t term) {
    return "signal condition c" + std::to_string(cls) + " t" + std::to_string(term);
}

std::string noise_name(std::size_t i) { return "noise finding n" + std::to_string(i); }

} // namespace

std::vector<AnnotatedDocument> generate_synthetic_corpus(const SynthConfig& cfg) {
    if (cfg.n_classes == 0 || cfg.n_classes > 100 || cfg.signal_terms_per_class > 10000 ||
        cfg.n_noise_terms > 1000000) {
        throw data_error("synthetic corpus parameters out of range");
    }
    if (cfg.signal_prob < 0.0 || cfg.signal_prob > 1.0 || cfg.neg_fraction < 0.0 ||
        cfg.neg_fraction > 1.0) {
        throw data_error("signal_prob and neg_fraction must lie in [0, 1]");
    }

    Rng rng(cfg.seed);
    std::vector<AnnotatedDocument> corpus;
    corpus.reserve(cfg.n_docs);

    for (std::size_t d = 0; d < cfg.n_docs; ++d) {
        AnnotatedDocument doc;
        doc.doc.doc_id = "doc" + pad(d, 6);

        std::vector<std::size_t> classes(cfg.n_classes);
        for (std::size_t c = 0; c < cfg.n_classes; ++c) classes[c] = c;
        rng.shuffle(classes);
        const std::size_t n_chosen = 1 + rng.below(std::min<std::size_t>(3, cfg.n_classes));
        classes.resize(n_chosen);
        std::sort(classes.begin(), classes.end());

        struct Draft {
            std::string cui;
            std::string name;
            std::size_t cls;       // n_classes = noise
            bool negated = false;
        };
        std::vector<Draft> drafts;
        for (const std::size_t c : classes) {
            for (std::size_t t = 0; t < cfg.signal_terms_per_class; ++t) {
                if (!rng.bernoulli(cfg.signal_prob)) continue;
                for (std::size_t r = 0; r < cfg.signal_repeats; ++r) {
                    drafts.push_back({signal_cui(c, t), signal_name(c, t), c, false});
                }
            }
        }
        while (drafts.size() < cfg.concepts_per_doc && cfg.n_noise_terms > 0) {
            const std::size_t i = rng.below(cfg.n_noise_terms);
            drafts.push_back({noise_cui(i), noise_name(i), cfg.n_classes, false});
        }
        rng.shuffle(drafts);
        for (Draft& m : drafts) m.negated = rng.bernoulli(cfg.neg_fraction);

        // Labels follow from the surviving (non-negated) signal injections.
        std::set<std::string> label_codes;
        for (const Draft& m : drafts) {
            if (m.cls < cfg.n_classes && !m.negated) label_codes.insert("D" + std::to_string(m.cls));
        }
        doc.doc.labels.binary = label_codes.count("D0") != 0;
        doc.doc.labels.multi = label_codes;

        // Two sectioned halves; one clause per mention.
        std::string text;
        std::size_t cp_len = 0;
        auto append = [&](const std::string& s) {
            text += s;
            cp_len += codepoint_count(s);
        };
        const std::size_t half = (drafts.size() + 1) / 2;
        append("Chief Complaint:\n");
        for (std::size_t i = 0; i < drafts.size(); ++i) {
            if (i == half) append("History of Present Illness:\n");
            const Draft& m = drafts[i];
            if (m.negated) append("no ");
            ConceptMention mention;
            mention.cui = m.cui;
            mention.preferred_name = m.name;
            mention.start = cp_len;
            append(m.name);
            mention.end = cp_len;
            if (cfg.emit_negation_flags) mention.negated = m.negated;
            doc.mentions.push_back(std::move(mention));
            append(".\n");
        }
        doc.doc.text = std::move(text);
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

} // namespace kce
