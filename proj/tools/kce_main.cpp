#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kce/compare.hpp"
#include "kce/concept_pipeline.hpp"
#include "kce/corpus.hpp"
#include "kce/embed.hpp"
#include "kce/eval.hpp"
#include "kce/multipartite.hpp"
#include "kce/negation.hpp"
#include "kce/position_rank.hpp"
#include "kce/sectionizer.hpp"
#include "kce/synth.hpp"
#include "kce/tfidf.hpp"
#include "kce/tokenize.hpp"
#include "kce/yake.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using ojson = nlohmann::ordered_json;

struct RunConfig {
    // paths
    std::string in;
    std::string out;
    std::string corpus;        // label source for evaluate
    std::string dict;
    std::string rules;
    std::string lexicon;
    std::string stopwords;
    std::string embeddings;

    // selection
    std::string method = "tfidf";
    std::string mode = "tfidf_normalized";
    double threshold = 0.2;
    bool non_strict = false;
    std::string log_base = "e";

    // extractors
    std::size_t max_ngram = 3;
    std::size_t top_k = 20;
    std::size_t window = 0;    // 0 = per-method default (yake 2, position_rank 10)
    double dedup = 0.8;
    double cluster_sim = 0.25;
    double alpha = 1.1;
    double damping = 0.85;
    double tol = 1e-6;
    double mmr_lambda = -1.0;  // < 0 disables MMR

    // evaluation
    std::string task = "binary";
    std::string ratios = "0.8,0.1,0.1";
    double lr = 0.1;
    int epochs = 500;
    double l2 = 1e-4;
    double decision_threshold = 0.5;
    std::string weighting = "binary";
    std::string methods = "tfidf,full_concepts,random";

    // synth
    std::size_t docs = 100;
    std::size_t noise_terms = 100;
    std::size_t classes = 4;
    std::size_t signal_terms = 5;
    std::size_t concepts_per_doc = 30;
    std::size_t signal_repeats = 3;
    double signal_prob = 0.9;
    double neg_fraction = 0.1;
    bool null_negation = false;

    // global
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
};

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw kce::config_error(std::string(what) + " file not found: '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kce::config_error("cannot open output file '" + path + "'");
    return out;
}

// JSON config file: keys mirror the long flag names with '-' replaced by '_'.
// Flags given on the command line override file values.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in = open_input(path, "config");
    ojson obj;
    try {
        obj = ojson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw kce::config_error(std::string("malformed config file: ") + e.what());
    }
    for (const auto& [key, value] : obj.items()) {
        if (key == "in") cfg.in = value.get<std::string>();
        else if (key == "out") cfg.out = value.get<std::string>();
        else if (key == "corpus") cfg.corpus = value.get<std::string>();
        else if (key == "dict") cfg.dict = value.get<std::string>();
        else if (key == "rules") cfg.rules = value.get<std::string>();
        else if (key == "lexicon") cfg.lexicon = value.get<std::string>();
        else if (key == "stopwords") cfg.stopwords = value.get<std::string>();
        else if (key == "embeddings") cfg.embeddings = value.get<std::string>();
        else if (key == "method") cfg.method = value.get<std::string>();
        else if (key == "mode") cfg.mode = value.get<std::string>();
        else if (key == "threshold") cfg.threshold = value.get<double>();
        else if (key == "non_strict") cfg.non_strict = value.get<bool>();
        else if (key == "log_base") cfg.log_base = value.get<std::string>();
        else if (key == "max_ngram") cfg.max_ngram = value.get<std::size_t>();
        else if (key == "top_k") cfg.top_k = value.get<std::size_t>();
        else if (key == "window") cfg.window = value.get<std::size_t>();
        else if (key == "dedup") cfg.dedup = value.get<double>();
        else if (key == "cluster_sim") cfg.cluster_sim = value.get<double>();
        else if (key == "alpha") cfg.alpha = value.get<double>();
        else if (key == "damping") cfg.damping = value.get<double>();
        else if (key == "tol") cfg.tol = value.get<double>();
        else if (key == "mmr_lambda") cfg.mmr_lambda = value.get<double>();
        else if (key == "task") cfg.task = value.get<std::string>();
        else if (key == "ratios") cfg.ratios = value.get<std::string>();
        else if (key == "lr") cfg.lr = value.get<double>();
        else if (key == "epochs") cfg.epochs = value.get<int>();
        else if (key == "l2") cfg.l2 = value.get<double>();
        else if (key == "decision_threshold") cfg.decision_threshold = value.get<double>();
        else if (key == "weighting") cfg.weighting = value.get<std::string>();
        else if (key == "methods") cfg.methods = value.get<std::string>();
        else if (key == "docs") cfg.docs = value.get<std::size_t>();
        else if (key == "noise_terms") cfg.noise_terms = value.get<std::size_t>();
        else if (key == "classes") cfg.classes = value.get<std::size_t>();
        else if (key == "signal_terms") cfg.signal_terms = value.get<std::size_t>();
        else if (key == "concepts_per_doc") cfg.concepts_per_doc = value.get<std::size_t>();
        else if (key == "signal_repeats") cfg.signal_repeats = value.get<std::size_t>();
        else if (key == "signal_prob") cfg.signal_prob = value.get<double>();
        else if (key == "neg_fraction") cfg.neg_fraction = value.get<double>();
        else if (key == "null_negation") cfg.null_negation = value.get<bool>();
        else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "jobs") cfg.jobs = value.get<std::size_t>();
        else throw kce::config_error("unknown config key '" + key + "'");
    }
}

std::vector<double> parse_ratios(const std::string& s) {
    std::vector<double> out;
    std::istringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (...) {
            throw kce::config_error("bad ratio component '" + part + "'");
        }
    }
    if (out.size() != 3) throw kce::config_error("--ratios needs three comma-separated values");
    return out;
}

std::vector<std::string> parse_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

kce::HeaderRuleSet load_rules(const RunConfig& cfg) {
    if (cfg.rules.empty()) return kce::HeaderRuleSet::defaults();
    std::ifstream in = open_input(cfg.rules, "header rules");
    return kce::HeaderRuleSet::load(in);
}

kce::TriggerLexicon load_lexicon(const RunConfig& cfg) {
    if (cfg.lexicon.empty()) return kce::TriggerLexicon::defaults();
    std::ifstream in = open_input(cfg.lexicon, "negation lexicon");
    return kce::TriggerLexicon::load(in);
}

kce::StopwordSet load_stopwords(const RunConfig& cfg) {
    if (cfg.stopwords.empty()) return kce::StopwordSet::defaults();
    std::ifstream in = open_input(cfg.stopwords, "stopword");
    return kce::StopwordSet::load(in);
}

std::vector<kce::AnnotatedDocument> load_corpus(const std::string& path) {
    std::ifstream in = open_input(path, "corpus");
    return kce::parse_corpus(in);
}

// Every output gets a sidecar <out>.meta.json recording the effective
// configuration, so runs can be replayed byte for byte.
void write_sidecar(const std::string& out_path, const std::string& command, const ojson& cfg) {
    ojson meta;
    meta["tool"] = std::string("kce ") + kVersion;
    meta["command"] = command;
    meta["config"] = cfg;
    std::ofstream out = open_output(out_path + ".meta.json");
    out << meta.dump(2) << '\n';
}

ojson common_config(const RunConfig& cfg) {
    ojson j;
    j["seed"] = cfg.seed;
    return j;
}

// Order-stable parallel map: worker t handles indices congruent to t mod jobs.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < jobs; ++t) {
        workers.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < n; i += jobs) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

int cmd_synth(const RunConfig& cfg) {
    kce::SynthConfig sc;
    sc.n_docs = cfg.docs;
    sc.n_noise_terms = cfg.noise_terms;
    sc.n_classes = cfg.classes;
    sc.signal_terms_per_class = cfg.signal_terms;
    sc.concepts_per_doc = cfg.concepts_per_doc;
    sc.signal_prob = cfg.signal_prob;
    sc.neg_fraction = cfg.neg_fraction;
    sc.signal_repeats = cfg.signal_repeats;
    sc.emit_negation_flags = !cfg.null_negation;
    sc.seed = cfg.seed;
    const auto corpus = kce::generate_synthetic_corpus(sc);
    {
        std::ofstream out = open_output(cfg.out);
        kce::serialize_corpus(corpus, out);
    }
    ojson j = common_config(cfg);
    j["docs"] = cfg.docs;
    j["noise_terms"] = cfg.noise_terms;
    j["classes"] = cfg.classes;
    j["signal_terms"] = cfg.signal_terms;
    j["concepts_per_doc"] = cfg.concepts_per_doc;
    j["signal_repeats"] = cfg.signal_repeats;
    j["signal_prob"] = cfg.signal_prob;
    j["neg_fraction"] = cfg.neg_fraction;
    j["null_negation"] = cfg.null_negation;
    write_sidecar(cfg.out, "synth", j);
    std::cerr << "wrote " << corpus.size() << " documents to " << cfg.out << "\n";
    return 0;
}

int cmd_sectionize(const RunConfig& cfg) {
    const kce::HeaderRuleSet rules = load_rules(cfg);
    auto corpus = load_corpus(cfg.in);
    for (auto& doc : corpus) {
        doc.sections = kce::detect_sections(doc.doc.text, rules);
        doc = kce::filter_sections(std::move(doc), rules);
    }
    {
        std::ofstream out = open_output(cfg.out);
        kce::serialize_corpus(corpus, out);
    }
    ojson j = common_config(cfg);
    j["rules"] = cfg.rules.empty() ? "<builtin>" : cfg.rules;
    write_sidecar(cfg.out, "sectionize", j);
    std::cerr << "sectionized " << corpus.size() << " documents\n";
    return 0;
}

int cmd_negate(const RunConfig& cfg) {
    const kce::HeaderRuleSet rules = load_rules(cfg);
    const kce::TriggerLexicon lexicon = load_lexicon(cfg);
    auto corpus = load_corpus(cfg.in);
    for (auto& doc : corpus) {
        if (doc.sections.empty()) doc.sections = kce::detect_sections(doc.doc.text, rules);
        doc = kce::tag_negation(std::move(doc), lexicon);
    }
    {
        std::ofstream out = open_output(cfg.out);
        kce::serialize_corpus(corpus, out);
    }
    ojson j = common_config(cfg);
    j["lexicon"] = cfg.lexicon.empty() ? "<builtin>" : cfg.lexicon;
    j["rules"] = cfg.rules.empty() ? "<builtin>" : cfg.rules;
    write_sidecar(cfg.out, "negate", j);
    std::cerr << "tagged negation in " << corpus.size() << " documents\n";
    return 0;
}

int cmd_select(const RunConfig& cfg) {
    if (cfg.threshold < 0.0) throw kce::config_error("--threshold must be >= 0");
    if (cfg.method != "tfidf" && cfg.method != "full") {
        throw kce::config_error("select supports --method tfidf or full");
    }
    const auto corpus = load_corpus(cfg.in);
    kce::ConceptDictionary dict;
    if (!cfg.dict.empty()) {
        std::ifstream in = open_input(cfg.dict, "dictionary");
        dict = kce::load_dictionary(in);
    } else {
        dict = kce::build_dictionary(corpus);
    }

    std::vector<kce::KeyConceptDocument> keys;
    if (cfg.method == "tfidf") {
        kce::SelectorConfig sel;
        sel.mode = kce::matrix_mode_from_string(cfg.mode);
        sel.threshold = cfg.threshold;
        sel.strict = !cfg.non_strict;
        sel.log_base = cfg.log_base == "10" ? kce::LogBase::base10 : kce::LogBase::natural;
        keys = kce::run_tfidf_selection(corpus, dict, sel);
    } else {
        for (const auto& doc : corpus) {
            const kce::ConceptBag bag = kce::to_concept_bag(doc);
            keys.push_back(kce::synthesize_document(bag.doc_id, bag.terms, dict));
        }
    }
    kce::write_key_concepts(keys, cfg.out);
    ojson j = common_config(cfg);
    j["method"] = cfg.method;
    j["mode"] = cfg.mode;
    j["threshold"] = cfg.threshold;
    j["non_strict"] = cfg.non_strict;
    j["log_base"] = cfg.log_base;
    j["dict"] = cfg.dict.empty() ? "<from corpus>" : cfg.dict;
    write_sidecar(cfg.out, "select", j);
    std::cerr << "selected key concepts for " << keys.size() << " documents\n";
    return 0;
}

int cmd_extract(const RunConfig& cfg) {
    const kce::Method method = kce::method_from_string(cfg.method);
    if (method == kce::Method::tfidf) {
        throw kce::config_error("use the select subcommand for tfidf");
    }
    const kce::StopwordSet stopwords = load_stopwords(cfg);
    kce::EmbeddingTable table;
    if (method == kce::Method::embed_cosine || method == kce::Method::embed_graph) {
        if (cfg.embeddings.empty()) {
            throw kce::config_error("--embeddings is required for embedding methods");
        }
        std::ifstream in = open_input(cfg.embeddings, "embedding");
        table = kce::EmbeddingTable::load(in);
    }

    std::ifstream in = open_input(cfg.in, "input");
    const auto docs = kce::read_key_concepts(in);

    std::vector<kce::DocumentRanking> results(docs.size());
    parallel_for(docs.size(), cfg.jobs, [&](std::size_t i) {
        const auto& doc = docs[i];
        kce::DocumentRanking r;
        r.doc_id = doc.doc_id;
        r.method = method;
        switch (method) {
            case kce::Method::yake: {
                kce::YakeOptions opts;
                opts.max_ngram = cfg.max_ngram;
                opts.top_k = cfg.top_k;
                opts.window = cfg.window ? cfg.window : 2;
                opts.dedup = cfg.dedup;
                r.phrases = kce::extract_yake(doc.text, opts, stopwords);
                break;
            }
            case kce::Method::position_rank: {
                kce::PositionRankOptions opts;
                opts.max_ngram = cfg.max_ngram;
                opts.top_k = cfg.top_k;
                opts.window = cfg.window ? cfg.window : 10;
                opts.damping = cfg.damping;
                opts.tol = cfg.tol;
                r.phrases = kce::extract_position_rank(doc.text, opts, stopwords);
                break;
            }
            case kce::Method::multipartite_rank: {
                kce::MultipartiteOptions opts;
                opts.max_ngram = cfg.max_ngram;
                opts.top_k = cfg.top_k;
                opts.cluster_sim = cfg.cluster_sim;
                opts.alpha = cfg.alpha;
                opts.damping = cfg.damping;
                opts.tol = cfg.tol;
                r.phrases = kce::extract_multipartite_rank(doc.text, opts, stopwords);
                break;
            }
            case kce::Method::embed_cosine:
            case kce::Method::embed_graph: {
                kce::EmbedOptions opts;
                opts.mode = method == kce::Method::embed_cosine ? kce::EmbedMode::cosine
                                                                : kce::EmbedMode::graph;
                opts.max_ngram = cfg.max_ngram;
                opts.top_k = cfg.top_k;
                opts.damping = cfg.damping;
                opts.tol = cfg.tol;
                if (cfg.mmr_lambda >= 0.0) opts.mmr_lambda = cfg.mmr_lambda;
                opts.doc_key = doc.doc_id;
                r.phrases = kce::extract_embed(doc.text, table, opts, stopwords);
                break;
            }
            default:
                break;
        }
        results[i] = std::move(r);
    });

    kce::write_ranked(results, cfg.out);
    ojson j = common_config(cfg);
    j["method"] = cfg.method;
    j["max_ngram"] = cfg.max_ngram;
    j["top_k"] = cfg.top_k;
    j["window"] = cfg.window;
    j["dedup"] = cfg.dedup;
    j["cluster_sim"] = cfg.cluster_sim;
    j["alpha"] = cfg.alpha;
    j["damping"] = cfg.damping;
    j["tol"] = cfg.tol;
    j["mmr_lambda"] = cfg.mmr_lambda;
    j["jobs"] = cfg.jobs;
    write_sidecar(cfg.out, "extract", j);
    std::cerr << "extracted phrases for " << results.size() << " documents\n";
    return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
    const kce::Task task = kce::task_from_string(cfg.task);
    const std::vector<double> ratios = parse_ratios(cfg.ratios);

    std::ifstream keys_in = open_input(cfg.in, "key-concept");
    const auto keys = kce::read_key_concepts(keys_in);
    const auto corpus = load_corpus(cfg.corpus);

    std::map<std::string, kce::LabelSet> labels_by_id;
    for (const auto& doc : corpus) labels_by_id[doc.doc.doc_id] = doc.doc.labels;

    std::vector<kce::AnnotatedDocument> labelled;
    std::vector<std::vector<std::string>> doc_terms;
    for (const auto& k : keys) {
        auto it = labels_by_id.find(k.doc_id);
        if (it == labels_by_id.end()) {
            throw kce::data_error("doc '" + k.doc_id + "' from the key-concept file is missing in the corpus");
        }
        kce::AnnotatedDocument d;
        d.doc.doc_id = k.doc_id;
        d.doc.labels = it->second;
        labelled.push_back(std::move(d));
        doc_terms.push_back(k.terms.empty() ? k.phrases : k.terms);
    }

    const kce::LabelMatrix labels = kce::make_labels(labelled, task);
    const kce::SplitIndices split = kce::split_indices(labelled.size(), ratios, cfg.seed);
    const kce::FeatureWeighting weighting = cfg.weighting == "tfidf_normalized"
                                                ? kce::FeatureWeighting::tfidf_normalized
                                                : kce::FeatureWeighting::binary;
    const kce::FeatureMatrix all = kce::featurize(doc_terms, weighting);

    auto take_features = [&](const std::vector<std::size_t>& idx) {
        kce::FeatureMatrix m;
        m.vocab = all.vocab;
        m.weighting = all.weighting;
        for (const std::size_t i : idx) m.rows.push_back(all.rows[i]);
        return m;
    };
    auto take_labels = [&](const std::vector<std::size_t>& idx) {
        kce::LabelMatrix m;
        m.labels = labels.labels;
        for (const std::size_t i : idx) m.rows.push_back(labels.rows[i]);
        return m;
    };

    kce::TrainConfig tc;
    tc.lr = cfg.lr;
    tc.epochs = cfg.epochs;
    tc.l2 = cfg.l2;
    tc.seed = cfg.seed;
    const kce::LinearModel model =
        kce::train_linear(take_features(split.train), take_labels(split.train), task, tc);
    const kce::EvalReport report = kce::evaluate(model, take_features(split.test),
                                                 take_labels(split.test), cfg.decision_threshold);

    ojson out;
    out["task"] = cfg.task;
    out["n_train"] = split.train.size();
    out["n_validation"] = split.validation.size();
    out["n_test"] = split.test.size();
    out["final_train_loss"] = model.final_loss;
    out["accuracy"] = report.accuracy;
    out["micro_f1"] = report.micro_f1;
    out["roc_auc"] = report.roc_auc;
    out["auc_skipped_labels"] = report.auc_skipped_labels;
    out["per_label_counts"] = ojson::array();
    for (const auto& c : report.per_label_counts) {
        ojson row;
        row["label"] = c.label;
        row["tp"] = c.tp;
        row["fp"] = c.fp;
        row["tn"] = c.tn;
        row["fn"] = c.fn;
        out["per_label_counts"].push_back(std::move(row));
    }
    {
        std::ofstream f = open_output(cfg.out);
        f << out.dump(2) << '\n';
    }
    ojson j = common_config(cfg);
    j["task"] = cfg.task;
    j["ratios"] = cfg.ratios;
    j["lr"] = cfg.lr;
    j["epochs"] = cfg.epochs;
    j["l2"] = cfg.l2;
    j["decision_threshold"] = cfg.decision_threshold;
    j["weighting"] = cfg.weighting;
    write_sidecar(cfg.out, "evaluate", j);
    std::cerr << "evaluation written to " << cfg.out << "\n";
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    if (cfg.threshold < 0.0) throw kce::config_error("--threshold must be >= 0");
    const auto corpus = load_corpus(cfg.in);
    const std::vector<std::string> methods = parse_list(cfg.methods);
    if (methods.empty()) throw kce::config_error("--methods must name at least one method");

    kce::EmbeddingTable table;
    bool have_table = false;
    if (!cfg.embeddings.empty()) {
        std::ifstream in = open_input(cfg.embeddings, "embedding");
        table = kce::EmbeddingTable::load(in);
        have_table = true;
    }

    kce::CompareConfig cc;
    cc.task = kce::task_from_string(cfg.task);
    cc.ratios = parse_ratios(cfg.ratios);
    cc.selector.mode = kce::matrix_mode_from_string(cfg.mode);
    cc.selector.threshold = cfg.threshold;
    cc.selector.strict = !cfg.non_strict;
    cc.selector.log_base = cfg.log_base == "10" ? kce::LogBase::base10 : kce::LogBase::natural;
    cc.top_k = cfg.top_k;
    cc.max_ngram = cfg.max_ngram;
    cc.weighting = cfg.weighting == "tfidf_normalized" ? kce::FeatureWeighting::tfidf_normalized
                                                       : kce::FeatureWeighting::binary;
    cc.train.lr = cfg.lr;
    cc.train.epochs = cfg.epochs;
    cc.train.l2 = cfg.l2;
    cc.train.seed = cfg.seed;
    cc.embeddings = have_table ? &table : nullptr;
    cc.seed = cfg.seed;

    const kce::ComparisonTable result = kce::compare_methods(corpus, methods, cc);
    {
        std::ofstream f = open_output(cfg.out);
        f << kce::to_json(result).dump(2) << '\n';
    }
    ojson j = common_config(cfg);
    j["task"] = cfg.task;
    j["methods"] = cfg.methods;
    j["mode"] = cfg.mode;
    j["threshold"] = cfg.threshold;
    j["top_k"] = cfg.top_k;
    j["max_ngram"] = cfg.max_ngram;
    j["ratios"] = cfg.ratios;
    j["lr"] = cfg.lr;
    j["epochs"] = cfg.epochs;
    j["l2"] = cfg.l2;
    j["weighting"] = cfg.weighting;
    write_sidecar(cfg.out, "compare", j);
    std::cerr << "comparison written to " << cfg.out << "\n";
    return 0;
}

int run(int argc, char** argv) {
    RunConfig cfg;

    // Pre-scan for --config so file values become defaults flags can override.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            apply_config_file(argv[i + 1], cfg);
            break;
        }
    }

    CLI::App app{"key-concept selection and keyphrase extraction over concept-annotated clinical notes"};
    app.set_version_flag("--version", std::string("kce ") + kVersion);
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its values");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out, "output path");
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic annotated corpus");
    add_common(synth);
    synth->add_option("--docs", cfg.docs, "number of documents");
    synth->add_option("--noise-terms", cfg.noise_terms, "size of the noise concept pool");
    synth->add_option("--classes", cfg.classes, "number of label classes");
    synth->add_option("--signal-terms", cfg.signal_terms, "signal concepts per class");
    synth->add_option("--concepts-per-doc", cfg.concepts_per_doc, "target mentions per document");
    synth->add_option("--signal-repeats", cfg.signal_repeats, "copies of each injected signal mention");
    synth->add_option("--signal-prob", cfg.signal_prob, "per-term injection probability");
    synth->add_option("--neg-fraction", cfg.neg_fraction, "fraction of mentions negated");
    synth->add_flag("--null-negation", cfg.null_negation, "leave negation flags null");

    CLI::App* sectionize = app.add_subcommand("sectionize", "detect sections and filter mentions");
    add_common(sectionize);
    sectionize->add_option("--in", cfg.in, "corpus JSONL");
    sectionize->add_option("--rules", cfg.rules, "header rules JSON");

    CLI::App* negate = app.add_subcommand("negate", "tag unresolved negation flags");
    add_common(negate);
    negate->add_option("--in", cfg.in, "corpus JSONL");
    negate->add_option("--rules", cfg.rules, "header rules JSON (scope boundaries)");
    negate->add_option("--lexicon", cfg.lexicon, "trigger lexicon JSON");

    CLI::App* select = app.add_subcommand("select", "select key concepts by corpus statistics");
    add_common(select);
    select->add_option("--in", cfg.in, "corpus JSONL");
    select->add_option("--dict", cfg.dict, "dictionary TSV (default: build from corpus)");
    select->add_option("--method", cfg.method, "tfidf or full");
    select->add_option("--mode", cfg.mode, "tf, tfidf_raw or tfidf_normalized");
    select->add_option("--threshold", cfg.threshold, "selection threshold");
    select->add_flag("--non-strict", cfg.non_strict, "keep scores equal to the threshold");
    select->add_option("--log-base", cfg.log_base, "e or 10");

    CLI::App* extract = app.add_subcommand("extract", "rank phrases of key-concept documents");
    add_common(extract);
    extract->add_option("--in", cfg.in, "key-concept JSONL (doc_id + text)");
    extract->add_option("--method", cfg.method,
                        "yake, position_rank, multipartite_rank, embed_cosine, embed_graph");
    extract->add_option("--max-ngram", cfg.max_ngram, "maximum phrase length");
    extract->add_option("--top-k", cfg.top_k, "phrases per document");
    extract->add_option("--window", cfg.window, "co-occurrence window (0 = method default)");
    extract->add_option("--dedup", cfg.dedup, "yake duplicate similarity cutoff");
    extract->add_option("--cluster-sim", cfg.cluster_sim, "multipartite topic similarity cutoff");
    extract->add_option("--alpha", cfg.alpha, "multipartite first-position boost");
    extract->add_option("--damping", cfg.damping, "pagerank damping");
    extract->add_option("--tol", cfg.tol, "pagerank tolerance");
    extract->add_option("--mmr-lambda", cfg.mmr_lambda, "MMR trade-off (embed_cosine; <0 disables)");
    extract->add_option("--embeddings", cfg.embeddings, "embedding table TSV");
    extract->add_option("--stopwords", cfg.stopwords, "stopword list file");
    extract->add_option("--jobs", cfg.jobs, "worker threads (output order is stable)");

    CLI::App* evaluate = app.add_subcommand("evaluate", "train and score the linear proxy classifier");
    add_common(evaluate);
    evaluate->add_option("--in", cfg.in, "key-concept JSONL");
    evaluate->add_option("--corpus", cfg.corpus, "corpus JSONL carrying the labels");
    evaluate->add_option("--task", cfg.task, "binary or multilabel");
    evaluate->add_option("--ratios", cfg.ratios, "train,validation,test split ratios");
    evaluate->add_option("--lr", cfg.lr, "learning rate");
    evaluate->add_option("--epochs", cfg.epochs, "training epochs");
    evaluate->add_option("--l2", cfg.l2, "L2 penalty");
    evaluate->add_option("--decision-threshold", cfg.decision_threshold, "classification threshold");
    evaluate->add_option("--weighting", cfg.weighting, "binary or tfidf_normalized");

    CLI::App* compare = app.add_subcommand("compare", "run several methods through the shared proxy task");
    add_common(compare);
    compare->add_option("--in", cfg.in, "corpus JSONL");
    compare->add_option("--methods", cfg.methods, "comma-separated method list");
    compare->add_option("--task", cfg.task, "binary or multilabel");
    compare->add_option("--mode", cfg.mode, "selector matrix mode");
    compare->add_option("--threshold", cfg.threshold, "selector threshold");
    compare->add_flag("--non-strict", cfg.non_strict, "keep scores equal to the threshold");
    compare->add_option("--log-base", cfg.log_base, "e or 10");
    compare->add_option("--top-k", cfg.top_k, "phrases per document for extractors");
    compare->add_option("--max-ngram", cfg.max_ngram, "maximum phrase length");
    compare->add_option("--ratios", cfg.ratios, "split ratios");
    compare->add_option("--lr", cfg.lr, "learning rate");
    compare->add_option("--epochs", cfg.epochs, "training epochs");
    compare->add_option("--l2", cfg.l2, "L2 penalty");
    compare->add_option("--weighting", cfg.weighting, "binary or tfidf_normalized");
    compare->add_option("--embeddings", cfg.embeddings, "embedding table TSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help / --version path
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto require = [](const std::string& value, const char* flag) {
        if (value.empty()) throw kce::config_error(std::string(flag) + " is required");
    };

    if (synth->parsed()) {
        require(cfg.out, "--out");
        return cmd_synth(cfg);
    }
    if (sectionize->parsed()) {
        require(cfg.in, "--in");
        require(cfg.out, "--out");
        return cmd_sectionize(cfg);
    }
    if (negate->parsed()) {
        require(cfg.in, "--in");
        require(cfg.out, "--out");
        return cmd_negate(cfg);
    }
    if (select->parsed()) {
        require(cfg.in, "--in");
        require(cfg.out, "--out");
        return cmd_select(cfg);
    }
    if (extract->parsed()) {
        require(cfg.in, "--in");
        require(cfg.out, "--out");
        return cmd_extract(cfg);
    }
    if (evaluate->parsed()) {
        require(cfg.in, "--in");
        require(cfg.corpus, "--corpus");
        require(cfg.out, "--out");
        return cmd_evaluate(cfg);
    }
    if (compare->parsed()) {
        require(cfg.in, "--in");
        require(cfg.out, "--out");
        return cmd_compare(cfg);
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const kce::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kce::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const kce::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
