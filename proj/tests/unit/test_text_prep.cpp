#include <string>
#include <vector>

#include "apilink/errors.hpp"
#include "apilink/text_prep.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace apilink;
using testutil::one_post_thread;

TEST_CASE("tokenize_sentence splits words and peels punctuation") {
    Sentence s = tokenize_sentence("I use Jackson to parse JSON messages.");
    REQUIRE(s.tokens.size() == 8);
    CHECK(s.tokens[0].surface == "I");
    CHECK(s.tokens[0].normalized == "i");
    CHECK(s.tokens[2].surface == "Jackson");
    CHECK(s.tokens[2].normalized == "jackson");
    CHECK(s.tokens[6].normalized == "messages");
    CHECK(s.tokens[7].surface == ".");
    CHECK(s.tokens[7].normalized.empty());
}

TEST_CASE("tokenize_sentence tags parts of speech") {
    Sentence s = tokenize_sentence("I use Jackson to parse JSON messages.");
    CHECK(s.tokens[1].pos == Pos::Verb);   // use
    CHECK(s.tokens[2].pos == Pos::Noun);   // Jackson, capitalized unknown
    CHECK(s.tokens[4].pos == Pos::Verb);   // parse
    CHECK(s.tokens[5].pos == Pos::Noun);   // JSON
    CHECK(s.tokens[6].pos == Pos::Noun);   // messages, plural of lexicon noun
}

TEST_CASE("tag_word falls through lexicon, suffix rules, capitalization") {
    CHECK(tag_word("parser", "parser") == Pos::Noun);
    CHECK(tag_word("parse", "parse") == Pos::Verb);
    CHECK(tag_word("parsed", "parsed") == Pos::Verb);
    CHECK(tag_word("", "") == Pos::Other);
    CHECK(tag_word("Frobnicator", "frobnicator") == Pos::Noun);
    CHECK(tag_word("frobbing", "frobbing") == Pos::Verb);
    CHECK(tag_word("assertion", "assertion") == Pos::Noun);
    CHECK(tag_word("Serializing", "serializing") == Pos::Verb);
    CHECK(tag_word("blorp", "blorp") == Pos::Other);
}

TEST_CASE("stopword list covers function words and citation shorthand") {
    CHECK(is_stopword("the"));
    CHECK(is_stopword("i"));
    CHECK(is_stopword("s"));
    CHECK(is_stopword("e.g"));
    CHECK_FALSE(is_stopword("jackson"));
    CHECK_FALSE(is_stopword("parse"));
    CHECK(stopword_set().count("and") == 1);
}

TEST_CASE("split_sentences keeps abbreviations together") {
    std::vector<std::string> out =
        split_sentences("We use it, e.g. for parsing. Second sentence here.");
    REQUIRE(out.size() == 2);
    CHECK(out[0].find("e.g") != std::string::npos);
    CHECK(out[1].find("Second") != std::string::npos);
}

TEST_CASE("urls stay single tokens and are recorded as links") {
    Sentence s = tokenize_sentence("See https://spring.io/docs for details.");
    REQUIRE(s.tokens.size() == 5);
    CHECK(s.tokens[1].surface == "https://spring.io/docs");
    REQUIRE(s.links.size() == 1);
    CHECK(s.links[0] == "https://spring.io/docs");
}

TEST_CASE("preprocess_thread parses ids, title, and sentences") {
    ThreadDoc doc = one_post_thread("Choosing a parser",
                                    "First sentence. Second sentence.");
    CHECK(doc.thread_id == "t");
    REQUIRE(doc.title.size() == 3);
    CHECK(doc.title[0].normalized == "choosing");
    CHECK(doc.title[0].pos == Pos::Verb);
    REQUIRE(doc.posts.size() == 1);
    CHECK(doc.posts[0].post_id == "p1");
    CHECK(doc.posts[0].sentences.size() == 2);
    CHECK(doc.posts[0].snippets.empty());
}

TEST_CASE("code fences are cut out between sentences byte for byte") {
    ThreadDoc doc = one_post_thread(
        "t", "First sentence.\n```\nint x = 1;\n\nint y = 2;\n```\nSecond sentence.");
    const Post& p = doc.posts[0];
    REQUIRE(p.sentences.size() == 2);
    REQUIRE(p.snippets.size() == 1);
    CHECK(p.snippets[0].position == 1);
    CHECK(p.snippets[0].text == "int x = 1;\n\nint y = 2;\n");
}

TEST_CASE("fence language tags are dropped from the snippet") {
    ThreadDoc doc = one_post_thread("t", "Intro.\n```java\nint x;\n```");
    REQUIRE(doc.posts[0].snippets.size() == 1);
    CHECK(doc.posts[0].snippets[0].text == "int x;\n");
}

TEST_CASE("a leading code block has position zero") {
    ThreadDoc doc = one_post_thread("t", "```\nint x;\n```\nOnly sentence.");
    REQUIRE(doc.posts[0].snippets.size() == 1);
    CHECK(doc.posts[0].snippets[0].position == 0);
    CHECK(doc.posts[0].sentences.size() == 1);
}

TEST_CASE("html bodies are stripped and pre blocks unescaped") {
    ThreadDoc doc = one_post_thread(
        "t",
        "<p>I use <b>Jackson</b> daily.</p>"
        "<pre><code>List&lt;String&gt; xs;</code></pre>"
        "<p>It works.</p>");
    const Post& p = doc.posts[0];
    REQUIRE(p.sentences.size() == 2);
    CHECK(p.sentences[0].tokens[2].normalized == "jackson");
    REQUIRE(p.snippets.size() == 1);
    CHECK(p.snippets[0].position == 1);
    CHECK(p.snippets[0].text == "List<String> xs;");
}

TEST_CASE("anchor targets survive html stripping as links") {
    ThreadDoc doc = one_post_thread(
        "t", "<p>See <a href=\"https://spring.io/projects\">the site</a> now.</p>");
    const Sentence& s = doc.posts[0].sentences[0];
    REQUIRE(s.links.size() == 1);
    CHECK(s.links[0] == "https://spring.io/projects");
}

TEST_CASE("preprocess_thread rejects malformed input") {
    CHECK_THROWS_AS(preprocess_thread("{not json"), input_error);
    CHECK_THROWS_AS(preprocess_thread("{\"title\":\"x\",\"posts\":[]}"),
                    input_error);
}

TEST_CASE("tokenize_name_seq splits separators and camel case in order") {
    CHECK(tokenize_name_seq("com.fasterxml.jackson.core") ==
          std::vector<std::string>{"com", "fasterxml", "jackson", "core"});
    CHECK(tokenize_name_seq("easyGson") ==
          std::vector<std::string>{"easy", "gson"});
    CHECK(tokenize_name_seq("Spring Framework") ==
          std::vector<std::string>{"spring", "framework"});
    CHECK(tokenize_name_seq("joda-time") ==
          std::vector<std::string>{"joda", "time"});
    CHECK(tokenize_name_seq("gson gson") ==
          std::vector<std::string>{"gson", "gson"});
    CHECK(tokenize_name_seq("").empty());
}

TEST_CASE("tokenize_name collapses to a set without package prefixes") {
    CHECK(tokenize_name("com.fasterxml.jackson.core") ==
          std::set<std::string>{"fasterxml", "jackson", "core"});
    CHECK(tokenize_name("GSON") == std::set<std::string>{"gson"});
    CHECK(tokenize_name("Jackson JSON Parser") ==
          std::set<std::string>{"jackson", "json", "parser"});
    CHECK(tokenize_name("the gson") == std::set<std::string>{"gson"});
    CHECK(tokenize_name("org.apache.camel") ==
          std::set<std::string>{"apache", "camel"});
    CHECK(tokenize_name("www") == std::set<std::string>{});
}

TEST_CASE("tokenize_name is stable on already normalized text") {
    std::set<std::string> once = tokenize_name("Jackson JSON Parser");
    std::string joined;
    for (const std::string& t : once) joined += t + " ";
    CHECK(tokenize_name(joined) == once);
}
