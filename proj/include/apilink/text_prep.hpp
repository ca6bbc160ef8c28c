#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace apilink {

enum class Pos { Noun, Verb, Other };

struct Token {
    std::string surface;     // as written, punctuation peeled into its own tokens
    std::string normalized;  // lowercase, surrounding punctuation stripped
    Pos pos = Pos::Other;
};

struct Sentence {
    std::vector<Token> tokens;
    std::vector<std::string> links;  // URLs appearing in the sentence
};

// A raw code block. `position` is the number of sentences that precede it
// in the post, so it ranges over [0, sentence count].
struct RawSnippet {
    std::string text;
    int position = 0;
};

struct Post {
    std::string post_id;
    std::vector<Sentence> sentences;
    std::vector<RawSnippet> snippets;
};

struct ThreadDoc {
    std::string thread_id;
    std::vector<Token> title;
    std::vector<Post> posts;
};

// Parses the thread input document (JSON: thread_id, title, posts[].post_id,
// posts[].body). Bodies may be plain text or HTML; code blocks are taken from
// ``` fences or <pre><code> blocks and are never tokenized as text.
ThreadDoc preprocess_thread(const std::string& raw_json);
ThreadDoc load_thread_file(const std::string& path);

// Splits on non-alphanumeric characters and lowercase-to-uppercase camel-case
// boundaries and lowercases. Order and duplicates preserved.
std::vector<std::string> tokenize_name_seq(std::string_view name);

// Same splitting, collapsed to a set with stopwords and the package-prefix
// tokens {com, org, net, io, www} dropped.
std::set<std::string> tokenize_name(std::string_view name);

// Deterministic tagging: embedded lexicon first, then suffix rules
// (-ing/-ize/-ed => VERB; -tion/-ment/-er/-or => NOUN), NOUN for capitalized
// unknowns, OTHER otherwise.
void pos_tag(Sentence& sentence);
Pos tag_word(std::string_view surface, std::string_view normalized);

bool is_stopword(std::string_view normalized);
const std::set<std::string, std::less<>>& stopword_set();

// Internal pieces exposed for reuse and tests.
std::vector<std::string> split_sentences(const std::string& text);
std::string strip_html(const std::string& html);
Sentence tokenize_sentence(const std::string& text);

}  // namespace apilink
