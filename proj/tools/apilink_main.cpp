#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apilink/api_db.hpp"
#include "apilink/classifier.hpp"
#include "apilink/errors.hpp"
#include "apilink/eval.hpp"
#include "apilink/pipeline.hpp"
#include "apilink/render.hpp"
#include "apilink/text_prep.hpp"

namespace fs = std::filesystem;

namespace {

struct ConfigFlags {
    std::string config_path;
    int window = -1;
    double tau = -1.0;
    double token_sort_floor = -1.0;
    bool relax_extrinsic_gate = false;
    bool keep_default_types = false;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "JSON config file with pipeline settings");
    cmd->add_option("--window", flags.window,
                    "context window in sentences (default 3)");
    cmd->add_option("--tau", flags.tau,
                    "hit confidence threshold (default 0.5)");
    cmd->add_option("--token-sort-floor", flags.token_sort_floor,
                    "minimum token-sort weight for MCL entry (default 0.2)");
    cmd->add_flag("--relax-extrinsic-gate", flags.relax_extrinsic_gate,
                  "run extrinsic filters with one resolved neighbor");
    cmd->add_flag("--keep-default-types", flags.keep_default_types,
                  "keep java.lang types in code contexts");
}

apilink::PipelineConfig make_config(const CLI::App* cmd,
                                    const ConfigFlags& flags) {
    apilink::PipelineConfig cfg;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path, std::ios::binary);
        if (!in)
            throw apilink::input_error("cannot open config file: " +
                                       flags.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw apilink::input_error(flags.config_path + ": " + e.what());
        }
        cfg.window = j.value("window", cfg.window);
        cfg.tau = j.value("tau", cfg.tau);
        cfg.token_sort_floor = j.value("token_sort_floor",
                                       cfg.token_sort_floor);
        cfg.relax_extrinsic_gate = j.value("relax_extrinsic_gate",
                                           cfg.relax_extrinsic_gate);
        cfg.keep_default_types = j.value("keep_default_types",
                                         cfg.keep_default_types);
    }
    if (cmd->count("--window")) cfg.window = flags.window;
    if (cmd->count("--tau")) cfg.tau = flags.tau;
    if (cmd->count("--token-sort-floor"))
        cfg.token_sort_floor = flags.token_sort_floor;
    if (cmd->count("--relax-extrinsic-gate"))
        cfg.relax_extrinsic_gate = flags.relax_extrinsic_gate;
    if (cmd->count("--keep-default-types"))
        cfg.keep_default_types = flags.keep_default_types;
    if (cfg.window < 0)
        throw apilink::input_error("window must be non-negative");
    if (!(cfg.tau > 0.0) || !(cfg.tau < 1.0))
        throw apilink::input_error("tau must be inside (0,1)");
    return cfg;
}

std::vector<std::string> collect_thread_files(const std::string& path) {
    std::vector<std::string> files;
    if (fs::is_directory(path)) {
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file() &&
                entry.path().extension() == ".json")
                files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw apilink::input_error("no .json thread files under " + path);
    } else if (fs::exists(path)) {
        files.push_back(path);
    } else {
        throw apilink::input_error("no such thread file or directory: " +
                                   path);
    }
    return files;
}

void write_output(const std::string& out_path, const std::string& bytes) {
    if (out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw apilink::input_error("cannot write output file: " + out_path);
    out << bytes;
}

int run(int argc, char** argv) {
    CLI::App app{"API mention detection and resolution for forum threads"};
    app.require_subcommand(1);

    // ingest
    std::string ingest_db, ingest_out;
    CLI::App* ingest = app.add_subcommand(
        "ingest", "validate a database file and write its normalized form");
    ingest->add_option("db", ingest_db, "database file (JSONL)")->required();
    ingest->add_option("-o,--output", ingest_out,
                       "write the normalized database here");

    // train
    std::string train_corpus, train_db, train_out;
    std::vector<std::string> train_threads;
    unsigned train_synthetic = 0;
    unsigned train_seed = 20240601;
    ConfigFlags train_flags;
    CLI::App* train = app.add_subcommand("train", "train the hit classifier");
    train->add_option("corpus", train_corpus,
                      "labeled corpus file (JSONL records)");
    train->add_option("--db", train_db, "database file");
    train->add_option("--threads", train_threads,
                      "thread files or directories for the corpus mentions");
    train->add_option("--synthetic", train_synthetic,
                      "train on N generated examples instead of a corpus");
    train->add_option("--seed", train_seed, "seed for --synthetic");
    train->add_option("-o,--output", train_out, "model output path")
        ->required();
    add_config_flags(train, train_flags);

    // resolve
    std::string resolve_input, resolve_db, resolve_model, resolve_out;
    std::string resolve_format = "records";
    ConfigFlags resolve_flags;
    CLI::App* resolve = app.add_subcommand(
        "resolve", "resolve every mention in one thread or a directory");
    resolve->add_option("input", resolve_input, "thread file or directory")
        ->required();
    resolve->add_option("--db", resolve_db, "database file")->required();
    resolve->add_option("--model", resolve_model, "trained model file")
        ->required();
    resolve->add_option("--format", resolve_format,
                        "output format: records or html");
    resolve->add_option("-o,--output", resolve_out,
                        "output file (html over a directory: output dir)");
    add_config_flags(resolve, resolve_flags);

    // evaluate
    std::string eval_decisions, eval_truth, eval_out;
    std::string eval_format = "table";
    bool eval_overlap = false;
    CLI::App* evaluate_cmd = app.add_subcommand(
        "evaluate", "score decision records against ground truth");
    evaluate_cmd->add_option("decisions", eval_decisions,
                             "decision records file")
        ->required();
    evaluate_cmd->add_option("truth", eval_truth, "ground truth file")
        ->required();
    evaluate_cmd->add_option("--format", eval_format,
                             "output format: table or records");
    evaluate_cmd->add_flag("--overlap", eval_overlap,
                           "match spans on overlap instead of equality");
    evaluate_cmd->add_option("-o,--output", eval_out, "output file");

    // render
    std::string render_decisions, render_thread, render_db, render_out;
    CLI::App* render_cmd = app.add_subcommand(
        "render", "annotated HTML for one thread from decision records");
    render_cmd->add_option("decisions", render_decisions,
                           "decision records file")
        ->required();
    render_cmd->add_option("thread", render_thread, "thread file")->required();
    render_cmd->add_option("--db", render_db, "database file")->required();
    render_cmd->add_option("-o,--output", render_out, "output html file");

    CLI11_PARSE(app, argc, argv);

    if (ingest->parsed()) {
        apilink::ApiDatabase db = apilink::load_database(ingest_db);
        if (!ingest_out.empty())
            write_output(ingest_out, apilink::serialize(db));
        std::cerr << "ok: " << db.entries().size() << " entries, "
                  << db.graph().edge_count() << " dependency edges\n";
        return 0;
    }

    if (train->parsed()) {
        std::vector<apilink::TrainingExample> examples;
        if (train_synthetic > 0) {
            examples = apilink::make_synthetic_examples(train_synthetic,
                                                        train_seed);
        } else {
            if (train_corpus.empty() || train_db.empty() ||
                train_threads.empty())
                throw apilink::input_error(
                    "train needs <corpus>, --db and --threads "
                    "(or --synthetic N)");
            apilink::ApiDatabase db = apilink::load_database(train_db);
            std::vector<apilink::ThreadDoc> docs;
            for (const std::string& path : train_threads) {
                for (const std::string& f : collect_thread_files(path))
                    docs.push_back(apilink::load_thread_file(f));
            }
            apilink::PipelineConfig cfg = make_config(train, train_flags);
            examples = apilink::build_training_examples(
                db, docs, apilink::load_labeled_corpus(train_corpus), cfg);
        }
        apilink::NBModel model = apilink::NBModel::train(examples);
        model.save(train_out);
        std::cerr << "ok: trained on " << examples.size() << " examples\n";
        return 0;
    }

    if (resolve->parsed()) {
        if (resolve_format != "records" && resolve_format != "html")
            throw apilink::input_error("unknown format: " + resolve_format);
        apilink::ApiDatabase db = apilink::load_database(resolve_db);
        apilink::NBModel model = apilink::NBModel::load(resolve_model);
        apilink::PipelineConfig cfg = make_config(resolve, resolve_flags);
        apilink::Resolver resolver(db, std::move(model), cfg);

        std::vector<std::string> files = collect_thread_files(resolve_input);
        if (resolve_format == "records") {
            std::vector<apilink::ResolutionDecision> all;
            for (const std::string& f : files) {
                apilink::ThreadDoc doc = apilink::load_thread_file(f);
                for (apilink::ResolutionDecision& d :
                     resolver.resolve_thread(doc))
                    all.push_back(std::move(d));
            }
            write_output(resolve_out, apilink::render_records(all));
            return 0;
        }
        bool directory_mode = files.size() > 1;
        if (directory_mode && resolve_out.empty())
            throw apilink::input_error(
                "html over a directory needs -o <output dir>");
        for (const std::string& f : files) {
            apilink::ThreadDoc doc = apilink::load_thread_file(f);
            std::string html = apilink::render_annotated_html(
                doc, resolver.resolve_thread(doc), db,
                resolver.descriptions());
            if (directory_mode) {
                fs::create_directories(resolve_out);
                write_output(
                    (fs::path(resolve_out) / (doc.thread_id + ".html"))
                        .string(),
                    html);
            } else {
                write_output(resolve_out, html);
            }
        }
        return 0;
    }

    if (evaluate_cmd->parsed()) {
        if (eval_format != "table" && eval_format != "records")
            throw apilink::input_error("unknown format: " + eval_format);
        std::vector<apilink::ResolutionDecision> decisions =
            apilink::load_records(eval_decisions);
        std::vector<apilink::GroundTruthRecord> truth =
            apilink::load_ground_truth(eval_truth);
        apilink::EvalOptions options;
        options.overlap = eval_overlap;
        apilink::EvalReport report =
            apilink::evaluate(decisions, truth, options);
        write_output(eval_out, eval_format == "table"
                                   ? apilink::format_report_table(report)
                                   : apilink::report_records(report));
        return 0;
    }

    if (render_cmd->parsed()) {
        apilink::ApiDatabase db = apilink::load_database(render_db);
        apilink::ThreadDoc doc = apilink::load_thread_file(render_thread);
        std::vector<apilink::ResolutionDecision> decisions;
        for (apilink::ResolutionDecision& d :
             apilink::load_records(render_decisions)) {
            if (d.mention.thread_id == doc.thread_id)
                decisions.push_back(std::move(d));
        }
        apilink::DescriptionCache descs(db);
        write_output(render_out, apilink::render_annotated_html(
                                     doc, decisions, db, descs));
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const apilink::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
