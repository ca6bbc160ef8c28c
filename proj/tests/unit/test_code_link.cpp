#include <set>
#include <string>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/code_link.hpp"
#include "apilink/mention_detect.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace apilink;
using testutil::fixture_db;
using testutil::one_post_thread;

namespace {

MentionCandidateList mcl_for(const std::string& text) {
    MentionDetector det(fixture_db());
    MentionCandidateList mcl;
    mcl.mention.thread_id = "t";
    mcl.mention.post_id = "p1";
    mcl.mention.surface = text;
    mcl.candidates = det.match_text(text);
    return mcl;
}

std::vector<CodeSnippet> snippets_from(const std::vector<std::string>& raws) {
    std::vector<CodeSnippet> out;
    for (const std::string& r : raws) out.push_back(parse_snippet(r));
    return out;
}

}  // namespace

TEST_CASE("parse_snippet extracts imports, declarations, and usages") {
    CodeSnippet s = parse_snippet(
        "import com.fasterxml.jackson.databind.ObjectMapper;\n"
        "import com.google.gson.*;\n"
        "\n"
        "public class Wrapper {\n"
        "  ObjectMapper mapper = new ObjectMapper();\n"
        "  String name;\n"
        "}\n");
    CHECK(s.status == SnippetStatus::ValidJavaLike);
    REQUIRE(s.imports.size() == 2);
    CHECK(s.imports[0] == "com.fasterxml.jackson.databind.ObjectMapper");
    CHECK(s.imports[1] == "com.google.gson.*");
    CHECK(s.declared_types == std::set<std::string>{"Wrapper"});
    CHECK(s.used_types.count("ObjectMapper") == 1);
    CHECK(s.used_types.count("String") == 1);
    CHECK(s.used_types.count("com.fasterxml.jackson.databind.ObjectMapper") ==
          0);
}

TEST_CASE("static imports lose the static keyword") {
    CodeSnippet s =
        parse_snippet("import static org.junit.Assert.assertEquals;\n");
    CHECK(s.status == SnippetStatus::ValidJavaLike);
    REQUIRE(s.imports.size() == 1);
    CHECK(s.imports[0] == "org.junit.Assert.assertEquals");
}

TEST_CASE("markup and unbalanced blocks are discarded as malformed") {
    CodeSnippet xml = parse_snippet(
        "<dependency>\n  <groupId>com.google.gson</groupId>\n</dependency>\n");
    CHECK(xml.status == SnippetStatus::DiscardedMalformed);
    CHECK(xml.imports.empty());
    CHECK(xml.used_types.empty());

    CHECK(parse_snippet("").status == SnippetStatus::DiscardedMalformed);
    CHECK(parse_snippet("public class X { int y = 1;").status ==
          SnippetStatus::DiscardedMalformed);
}

TEST_CASE("foreign language and prose blocks are discarded as non java") {
    CodeSnippet py = parse_snippet("def parse(x):\n    return json.loads(x)\n");
    CHECK(py.status == SnippetStatus::DiscardedNonJava);
    CHECK(py.used_types.empty());

    CodeSnippet prose = parse_snippet(
        "This block is only words about libraries and nothing else at all.");
    CHECK(prose.status == SnippetStatus::DiscardedNonJava);
}

TEST_CASE("qualified usages survive as full names") {
    CodeSnippet s =
        parse_snippet("com.google.gson.Gson g = new com.google.gson.Gson();\n");
    CHECK(s.status == SnippetStatus::ValidJavaLike);
    CHECK(s.used_types.count("com.google.gson.Gson") == 1);
}

TEST_CASE("process_import strips keywords, wildcards, and stray dots") {
    CHECK(process_import("import com.foo.Bar;") == "com.foo.Bar");
    CHECK(process_import("import com.foo.*;") == "com.foo");
    CHECK(process_import("  com.foo.  ") == "com.foo");
}

TEST_CASE("a qualified name must match a type index exactly") {
    MentionCandidateList m = mcl_for("Jackson");
    CHECK(link_type(m, "com.fasterxml.jackson.databind.ObjectMapper", {},
                    fixture_db()) ==
          std::set<std::string>{"com.fasterxml.jackson.core"});
    // No fallback to the unqualified branch.
    CHECK(link_type(m, "com.nowhere.JsonParser", {}, fixture_db()).empty());
}

TEST_CASE("unqualified names match by last segment") {
    MentionCandidateList m = mcl_for("Jackson");
    CHECK(link_type(m, "ObjectMapper", {}, fixture_db()) ==
          std::set<std::string>{"com.fasterxml.jackson.core"});
    CHECK(link_type(m, "JodaModule", {}, fixture_db()) ==
          std::set<std::string>{"com.fasterxml.jackson.datatype"});
    CHECK(link_type(m, "CamelContext", {}, fixture_db()) ==
          std::set<std::string>{"org.apache.camel"});
    CHECK(link_type(m, "Missing", {}, fixture_db()).empty());
}

TEST_CASE("imports narrow ambiguous unqualified matches") {
    MentionCandidateList m = mcl_for("gson");

    CHECK(link_type(m, "Gson", {}, fixture_db()) ==
          std::set<std::string>{"com.google.gson", "gson-legacy"});

    auto wildcard = snippets_from({"import com.google.gson.*;\nGson g;\n"});
    CHECK(link_type(m, "Gson", wildcard, fixture_db()) ==
          std::set<std::string>{"com.google.gson"});

    auto direct = snippets_from({"import net.legacy.gson.Gson;\n"});
    CHECK(link_type(m, "Gson", direct, fixture_db()) ==
          std::set<std::string>{"gson-legacy"});

    // An import confirming nothing leaves the ambiguity in place.
    auto unrelated = snippets_from({"import org.unrelated.util.Thing;\n"});
    CHECK(link_type(m, "Gson", unrelated, fixture_db()) ==
          std::set<std::string>{"com.google.gson", "gson-legacy"});
}

TEST_CASE("a single mention collects every type in its post") {
    MentionDetector det(fixture_db());
    ThreadDoc doc = one_post_thread(
        "", std::string("I use Jackson here.\n```\n") +
                "import com.fasterxml.jackson.databind.ObjectMapper;\n" +
                "public class Wrapper { }\n" +
                "Wrapper w = new Wrapper();\n" +
                "ObjectMapper m = new ObjectMapper();\n" +
                "String s;\n```\n");
    std::vector<MentionCandidateList> mcls = det.detect(doc);
    REQUIRE(mcls.size() == 1);

    std::vector<CodeContext> ctx = extract_code_contexts(doc, mcls);
    REQUIRE(ctx.size() == 1);
    CHECK(ctx[0].types == std::set<std::string>{"ObjectMapper"});

    CodeLinkOptions keep;
    keep.keep_default_types = true;
    std::vector<CodeContext> kept = extract_code_contexts(doc, mcls, keep);
    CHECK(kept[0].types == std::set<std::string>{"ObjectMapper", "String"});
}

TEST_CASE("inline type words go to the nearest mention in the sentence") {
    MentionDetector det(fixture_db());
    ThreadDoc doc = one_post_thread("", "Jackson JsonFactory Gson JsonElement demo.");
    std::vector<MentionCandidateList> mcls = det.detect(doc);
    REQUIRE(mcls.size() == 2);
    REQUIRE(mcls[0].mention.surface == "Jackson");
    REQUIRE(mcls[1].mention.surface == "Gson");

    std::vector<CodeContext> ctx = extract_code_contexts(doc, mcls);
    CHECK(ctx[0].types == std::set<std::string>{"JsonFactory"});
    CHECK(ctx[1].types == std::set<std::string>{"JsonElement"});
}

TEST_CASE("types in unclaimed sentences go to the last mention before them") {
    MentionDetector det(fixture_db());
    ThreadDoc doc = one_post_thread(
        "",
        "Jackson helps here. Filler words happen. "
        "JsonFactory appears now. Gson helps too.");
    std::vector<MentionCandidateList> mcls = det.detect(doc);
    REQUIRE(mcls.size() == 2);

    std::vector<CodeContext> ctx = extract_code_contexts(doc, mcls);
    CHECK(ctx[0].types == std::set<std::string>{"JsonFactory"});
    CHECK(ctx[1].types.empty());
}

TEST_CASE("types before every mention go to the first one after") {
    MentionDetector det(fixture_db());
    ThreadDoc doc = one_post_thread(
        "", "JsonFactory appears first. Jackson helps. Gson helps.");
    std::vector<MentionCandidateList> mcls = det.detect(doc);
    REQUIRE(mcls.size() == 2);

    std::vector<CodeContext> ctx = extract_code_contexts(doc, mcls);
    CHECK(ctx[0].types == std::set<std::string>{"JsonFactory"});
    CHECK(ctx[1].types.empty());
}

TEST_CASE("snippet types slot in at the block position") {
    MentionDetector det(fixture_db());
    ThreadDoc doc = one_post_thread(
        "", std::string("Jackson starts.\n```\n") +
                "import com.fasterxml.jackson.databind.ObjectMapper;\n" +
                "ObjectMapper m = new ObjectMapper();\n```\n" + "Gson ends.");
    std::vector<MentionCandidateList> mcls = det.detect(doc);
    REQUIRE(mcls.size() == 2);

    std::vector<CodeContext> ctx = extract_code_contexts(doc, mcls);
    CHECK(ctx[0].types == std::set<std::string>{"ObjectMapper"});
    CHECK(ctx[1].types.empty());
}

TEST_CASE("dotted sentence tokens count as qualified types") {
    MentionDetector det(fixture_db());
    ThreadDoc doc =
        one_post_thread("", "Jackson offers org.zzz.WidgetFactory here.");
    std::vector<MentionCandidateList> mcls = det.detect(doc);
    REQUIRE(mcls.size() == 1);

    std::vector<CodeContext> ctx = extract_code_contexts(doc, mcls);
    CHECK(ctx[0].types == std::set<std::string>{"org.zzz.WidgetFactory"});
}

TEST_CASE("title mentions get an empty code context") {
    MentionDetector det(fixture_db());
    ThreadDoc doc = one_post_thread(
        "Jackson", "We talk broadly.\n```\n"
                   "import com.fasterxml.jackson.databind.ObjectMapper;\n"
                   "ObjectMapper m = new ObjectMapper();\n```\n");
    std::vector<MentionCandidateList> mcls = det.detect(doc);
    REQUIRE(mcls.size() == 1);
    REQUIRE(mcls[0].mention.in_title());

    std::vector<CodeContext> ctx = extract_code_contexts(doc, mcls);
    CHECK(ctx[0].types.empty());
}

TEST_CASE("structural similarity is the linked share of the context") {
    MentionCandidateList m = mcl_for("Jackson");
    CodeContext ctx;
    ctx.types = {"ObjectMapper", "org.zzz.Widget"};
    auto links = link_context_types(m, ctx, {}, fixture_db());
    REQUIRE(links.size() == 2);
    CHECK(links.at("ObjectMapper") ==
          std::set<std::string>{"com.fasterxml.jackson.core"});
    CHECK(links.at("org.zzz.Widget").empty());

    CHECK(structural_similarity(ctx, "com.fasterxml.jackson.core", links) ==
          0.5);
    CHECK(structural_similarity(ctx, "org.apache.camel", links) == 0.0);

    CodeContext empty;
    CHECK(structural_similarity(empty, "com.fasterxml.jackson.core", {}) ==
          0.0);
}
