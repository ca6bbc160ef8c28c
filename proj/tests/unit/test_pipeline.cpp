#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "apilink/errors.hpp"
#include "apilink/pipeline.hpp"
#include "apilink/render.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace apilink;
using testutil::fixture_db;
using testutil::fixture_model;
using testutil::fixture_path;
using testutil::one_post_thread;
using testutil::read_file;

namespace {

const Resolver& resolver() {
    static Resolver r(fixture_db(), fixture_model());
    return r;
}

std::vector<std::string> thread_files(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<ResolutionDecision> resolve_all_fixture_threads() {
    std::vector<ResolutionDecision> all;
    for (const std::string& f : thread_files(fixture_path("threads"))) {
        ThreadDoc doc = load_thread_file(f);
        std::vector<ResolutionDecision> d = resolver().resolve_thread(doc);
        all.insert(all.end(), d.begin(), d.end());
    }
    return all;
}

}  // namespace

TEST_CASE("an unambiguous name resolves as a single hit with its url") {
    ThreadDoc doc = one_post_thread("", "I love the spring framework.");
    std::vector<ResolutionDecision> out = resolver().resolve_thread(doc);
    REQUIRE(out.size() == 1);
    const ResolutionDecision& d = out[0];
    CHECK_FALSE(d.is_false);
    CHECK(d.api_id == "org.springframework");
    CHECK(d.module.empty());
    CHECK(d.url == "https://spring.io/projects/spring-framework");
    CHECK(d.provenance == "CLASSIFIER_SINGLE_HIT");
    CHECK(d.confidence > 0.5);
}

TEST_CASE("a mention without a confident candidate stays false") {
    ThreadDoc doc = one_post_thread("", "Jackson spoke yesterday.");
    std::vector<ResolutionDecision> out = resolver().resolve_thread(doc);
    REQUIRE(out.size() == 1);
    const ResolutionDecision& d = out[0];
    CHECK(d.is_false);
    CHECK(d.api_id.empty());
    CHECK(d.url.empty());
    CHECK(d.provenance == "CLASSIFIER_NO_HIT");
    CHECK(d.confidence >= 0.0);
    CHECK(d.confidence <= 0.5);
}

TEST_CASE("module matches carry the module and its homepage") {
    ThreadDoc doc =
        load_thread_file(fixture_path("threads/a2_meronymy.json"));
    std::vector<ResolutionDecision> out = resolver().resolve_thread(doc);
    auto it = std::find_if(out.begin(), out.end(), [](const auto& d) {
        return d.mention.surface == "SWT";
    });
    REQUIRE(it != out.end());
    CHECK_FALSE(it->is_false);
    CHECK(it->api_id == "org.eclipse.platform");
    CHECK(it->module == "SWT");
    CHECK(it->url == "https://www.eclipse.org/swt/");
    CHECK(it->provenance == "CLASSIFIER_SINGLE_HIT");
}

TEST_CASE("threads without mentions produce no decisions") {
    ThreadDoc doc = one_post_thread("", "Nothing noteworthy happened today.");
    CHECK(resolver().resolve_thread(doc).empty());
}

TEST_CASE("a high token sort floor suppresses weak mentions entirely") {
    PipelineConfig cfg;
    cfg.token_sort_floor = 0.9;
    Resolver strict(fixture_db(), fixture_model(), cfg);
    ThreadDoc doc = one_post_thread("", "I use Jackson to parse JSON messages.");
    CHECK(strict.resolve_thread(doc).empty());
    CHECK(strict.config().token_sort_floor == 0.9);
}

TEST_CASE("decision records round-trip through their text form") {
    ThreadDoc doc =
        load_thread_file(fixture_path("threads/s1_centrality.json"));
    std::vector<ResolutionDecision> out = resolver().resolve_thread(doc);
    REQUIRE_FALSE(out.empty());

    std::string text = render_records(out);
    std::vector<ResolutionDecision> back = parse_records(text);
    REQUIRE(back.size() == out.size());
    CHECK(render_records(back) == text);
    CHECK(back[0].mention.surface == out[0].mention.surface);
    CHECK(back[0].api_id == out[0].api_id);
    CHECK(back[0].provenance == out[0].provenance);
}

TEST_CASE("parse_records rejects missing or foreign headers") {
    CHECK_THROWS_AS(parse_records(""), input_error);
    CHECK_THROWS_AS(parse_records("{\"foo\":1}\n"), input_error);
    CHECK_THROWS_AS(
        parse_records("{\"format\":\"apilink.decisions\",\"version\":2}\n"),
        input_error);
    CHECK_THROWS_AS(
        parse_records("{\"format\":\"apilink.decisions\",\"version\":1}\n"
                      "not json\n"),
        input_error);
}

TEST_CASE("the bundled threads resolve to their recorded decisions") {
    std::string rendered = render_records(resolve_all_fixture_threads());
    CHECK(rendered == read_file(fixture_path("goldens/decisions.jsonl")));
}

TEST_CASE("resolution is deterministic across runs and instances") {
    ThreadDoc doc =
        load_thread_file(fixture_path("threads/a4_holonymy.json"));
    std::string first = render_records(resolver().resolve_thread(doc));
    std::string second = render_records(resolver().resolve_thread(doc));
    CHECK(first == second);

    Resolver fresh(fixture_db(), fixture_model());
    CHECK(render_records(fresh.resolve_thread(doc)) == first);
}

TEST_CASE("the annotated html report matches its golden copy") {
    ThreadDoc doc = load_thread_file(fixture_path("threads/s6_import.json"));
    std::vector<ResolutionDecision> out = resolver().resolve_thread(doc);
    std::string html = render_annotated_html(doc, out, fixture_db(),
                                             resolver().descriptions());
    CHECK(html == read_file(fixture_path("goldens/s6_import.html")));
}

TEST_CASE("training examples join the corpus against detected mentions") {
    std::vector<ThreadDoc> threads;
    for (const std::string& f : thread_files(fixture_path("threads_train")))
        threads.push_back(load_thread_file(f));
    std::vector<CorpusRecord> corpus =
        load_labeled_corpus(fixture_path("corpus.jsonl"));

    std::vector<TrainingExample> examples =
        build_training_examples(fixture_db(), threads, corpus, {});
    REQUIRE(examples.size() == corpus.size());
    int true_count = 0;
    for (const TrainingExample& e : examples) true_count += e.label;
    CHECK(true_count == 26);

    // Features coming out of the join are the classifier's inputs.
    for (const TrainingExample& e : examples) {
        CHECK(e.features.name_sim > 0.0);
        CHECK(e.features.name_sim <= 1.0);
    }
}

TEST_CASE("corpus rows that match nothing are an error") {
    std::vector<ThreadDoc> threads;
    for (const std::string& f : thread_files(fixture_path("threads_train")))
        threads.push_back(load_thread_file(f));
    std::vector<CorpusRecord> corpus =
        load_labeled_corpus(fixture_path("corpus.jsonl"));

    std::vector<CorpusRecord> bad_span = corpus;
    bad_span[0].span_begin = 97;
    bad_span[0].span_end = 98;
    CHECK_THROWS_AS(
        build_training_examples(fixture_db(), threads, bad_span, {}),
        input_error);

    std::vector<CorpusRecord> bad_thread = corpus;
    bad_thread[0].thread_id = "zzz-missing";
    CHECK_THROWS_AS(
        build_training_examples(fixture_db(), threads, bad_thread, {}),
        input_error);
}

TEST_CASE("retraining on the bundled corpus reproduces the bundled model") {
    std::vector<ThreadDoc> threads;
    for (const std::string& f : thread_files(fixture_path("threads_train")))
        threads.push_back(load_thread_file(f));
    std::vector<CorpusRecord> corpus =
        load_labeled_corpus(fixture_path("corpus.jsonl"));
    NBModel retrained = NBModel::train(
        build_training_examples(fixture_db(), threads, corpus, {}));
    CHECK(retrained.serialize_text() == fixture_model().serialize_text());
}
