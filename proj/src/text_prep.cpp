#include "apilink/text_prep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apilink/errors.hpp"

namespace apilink {
namespace {

bool is_ascii_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool looks_like_url(std::string_view w) {
    return w.substr(0, 7) == "http://" || w.substr(0, 8) == "https://" ||
           w.substr(0, 4) == "www.";
}

std::string unescape_entities(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (size_t i = 0; i < in.size();) {
        if (in[i] != '&') {
            out += in[i++];
            continue;
        }
        auto try_take = [&](std::string_view ent, std::string_view repl) {
            if (in.substr(i, ent.size()) == ent) {
                out += repl;
                i += ent.size();
                return true;
            }
            return false;
        };
        if (try_take("&amp;", "&") || try_take("&lt;", "<") ||
            try_take("&gt;", ">") || try_take("&quot;", "\"") ||
            try_take("&#39;", "'") || try_take("&apos;", "'") ||
            try_take("&nbsp;", " "))
            continue;
        out += in[i++];
    }
    return out;
}

// One body segment: either prose or the verbatim contents of a code block.
struct Segment {
    std::string text;
    bool is_code = false;
};

// Split a post body on ``` fences and <pre><code> blocks. Fence contents are
// kept byte for byte; <pre><code> contents get entities unescaped because the
// surrounding document already escaped them once.
std::vector<Segment> split_code_blocks(const std::string& body) {
    std::vector<Segment> segments;
    size_t pos = 0;
    auto emit_text = [&segments](std::string t) {
        if (!t.empty()) segments.push_back({std::move(t), false});
    };
    while (pos < body.size()) {
        size_t fence = body.find("```", pos);
        size_t pre = body.find("<pre>", pos);
        size_t next = std::min(fence, pre);
        if (next == std::string::npos) {
            emit_text(body.substr(pos));
            break;
        }
        emit_text(body.substr(pos, next - pos));
        if (next == fence) {
            size_t start = fence + 3;
            // An optional language tag runs to the end of the opening line.
            size_t nl = body.find('\n', start);
            size_t close = body.find("```", start);
            if (close == std::string::npos) {
                segments.push_back({body.substr(start), true});
                break;
            }
            if (nl != std::string::npos && nl < close) start = nl + 1;
            segments.push_back({body.substr(start, close - start), true});
            pos = close + 3;
        } else {
            size_t start = pre + 5;
            if (body.compare(start, 6, "<code>") == 0) start += 6;
            size_t close = body.find("</pre>", start);
            size_t end = close == std::string::npos ? body.size() : close;
            std::string code = body.substr(start, end - start);
            size_t tail = code.rfind("</code>");
            if (tail != std::string::npos && tail == code.size() - 7)
                code.erase(tail);
            segments.push_back({unescape_entities(code), true});
            pos = close == std::string::npos ? body.size() : close + 6;
        }
    }
    return segments;
}

}  // namespace

std::string strip_html(const std::string& html) {
    std::string out;
    out.reserve(html.size());
    size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<') {
            out += html[i++];
            continue;
        }
        size_t close = html.find('>', i);
        if (close == std::string::npos) {
            out += html.substr(i);
            break;
        }
        std::string tag = to_lower(html.substr(i + 1, close - i - 1));
        if (tag.substr(0, 7) == "a href=" || tag.substr(0, 8) == "a  href=") {
            // Keep the target so the URL still appears in the prose.
            size_t q1 = tag.find_first_of("\"'");
            size_t q2 = q1 == std::string::npos
                            ? std::string::npos
                            : tag.find(tag[q1], q1 + 1);
            std::string href;
            if (q2 != std::string::npos) href = tag.substr(q1 + 1, q2 - q1 - 1);
            size_t text_end = html.find("</a>", close + 1);
            std::string anchor = text_end == std::string::npos
                                     ? html.substr(close + 1)
                                     : html.substr(close + 1, text_end - close - 1);
            out += anchor;
            if (!href.empty() && anchor != href) out += " " + href + " ";
            i = text_end == std::string::npos ? html.size() : text_end + 4;
            continue;
        }
        out += ' ';
        i = close + 1;
    }
    return unescape_entities(out);
}

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::string current;
    size_t i = 0;
    auto flush = [&]() {
        size_t a = current.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) {
            current.clear();
            return;
        }
        size_t b = current.find_last_not_of(" \t\r\n");
        sentences.push_back(current.substr(a, b - a + 1));
        current.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        // URLs pass through whole so their dots never end a sentence.
        if (!std::isspace(static_cast<unsigned char>(c))) {
            size_t end = i;
            while (end < text.size() &&
                   !std::isspace(static_cast<unsigned char>(text[end])))
                ++end;
            std::string_view word(text.data() + i, end - i);
            if (looks_like_url(word)) {
                current.append(word);
                i = end;
                continue;
            }
        }
        if (c == '\n') {
            // A blank line always terminates the sentence in progress.
            size_t j = i + 1;
            while (j < text.size() && (text[j] == ' ' || text[j] == '\t' ||
                                       text[j] == '\r'))
                ++j;
            if (j < text.size() && text[j] == '\n') {
                flush();
                i = j + 1;
                continue;
            }
            current += ' ';
            ++i;
            continue;
        }
        current += c;
        ++i;
        if (c != '.' && c != '!' && c != '?') continue;
        // Abbreviations that must not end a sentence.
        auto tail_is = [&current](std::string_view abbr) {
            return current.size() >= abbr.size() &&
                   std::string_view(current).substr(current.size() -
                                                    abbr.size()) == abbr;
        };
        if (c == '.' && (tail_is("e.g.") || tail_is("i.e.") || tail_is("etc.") ||
                         tail_is("vs.")))
            continue;
        size_t j = i;
        while (j < text.size() && (text[j] == '"' || text[j] == '\'' ||
                                   text[j] == ')' || text[j] == ']'))
            current += text[j++];
        if (j >= text.size()) {
            i = j;
            flush();
            continue;
        }
        if (!std::isspace(static_cast<unsigned char>(text[j]))) {
            i = j;
            continue;
        }
        size_t k = j;
        while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k])))
            ++k;
        if (k >= text.size() ||
            std::isupper(static_cast<unsigned char>(text[k])) ||
            std::isdigit(static_cast<unsigned char>(text[k]))) {
            i = k;
            flush();
        } else {
            i = j;
        }
    }
    flush();
    return sentences;
}

Sentence tokenize_sentence(const std::string& text) {
    Sentence s;
    std::istringstream in(text);
    std::string word;
    while (in >> word) {
        if (looks_like_url(word)) {
            // Trim sentence punctuation that stuck to the URL.
            while (!word.empty()) {
                char back = word.back();
                if (back == '.' || back == ',' || back == ';' || back == ':' ||
                    back == '!' || back == '?' || back == ')' || back == '"' ||
                    back == '\'')
                    word.pop_back();
                else
                    break;
            }
            if (word.empty()) continue;
            s.tokens.push_back({word, to_lower(word), Pos::Other});
            s.links.push_back(word);
            continue;
        }
        size_t a = 0;
        size_t b = word.size();
        while (a < b && is_ascii_punct(word[a])) ++a;
        while (b > a && is_ascii_punct(word[b - 1])) --b;
        if (a > 0) s.tokens.push_back({word.substr(0, a), "", Pos::Other});
        if (b > a) {
            std::string core = word.substr(a, b - a);
            s.tokens.push_back({core, to_lower(core), Pos::Other});
        }
        if (b < word.size())
            s.tokens.push_back({word.substr(b), "", Pos::Other});
    }
    pos_tag(s);
    return s;
}

std::vector<std::string> tokenize_name_seq(std::string_view name) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&]() {
        if (!current.empty()) {
            out.push_back(to_lower(current));
            current.clear();
        }
    };
    char prev = '\0';
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c))) {
            flush();
            prev = c;
            continue;
        }
        if (std::isupper(static_cast<unsigned char>(c)) &&
            std::islower(static_cast<unsigned char>(prev)))
            flush();
        current += c;
        prev = c;
    }
    flush();
    return out;
}

std::set<std::string> tokenize_name(std::string_view name) {
    static const std::set<std::string, std::less<>> package_prefixes = {
        "com", "org", "net", "io", "www"};
    std::set<std::string> out;
    for (std::string& t : tokenize_name_seq(name)) {
        if (is_stopword(t) || package_prefixes.count(t)) continue;
        out.insert(std::move(t));
    }
    return out;
}

ThreadDoc preprocess_thread(const std::string& raw_json) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw_json);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("thread document is not valid JSON: ") +
                          e.what());
    }
    if (!doc.is_object() || !doc.contains("thread_id") ||
        !doc.contains("posts"))
        throw input_error("thread document needs thread_id and posts fields");

    ThreadDoc td;
    td.thread_id = doc["thread_id"].get<std::string>();
    std::string title = doc.value("title", std::string());
    td.title = tokenize_sentence(strip_html(title)).tokens;

    if (!doc["posts"].is_array() || doc["posts"].empty())
        throw input_error("thread " + td.thread_id + " has no posts");

    for (const auto& jp : doc["posts"]) {
        if (!jp.is_object() || !jp.contains("post_id") || !jp.contains("body"))
            throw input_error("thread " + td.thread_id +
                              ": post needs post_id and body fields");
        Post post;
        post.post_id = jp["post_id"].get<std::string>();
        const std::string body = jp["body"].get<std::string>();

        for (Segment& seg : split_code_blocks(body)) {
            if (seg.is_code) {
                post.snippets.push_back(
                    {std::move(seg.text),
                     static_cast<int>(post.sentences.size())});
                continue;
            }
            for (const std::string& raw : split_sentences(strip_html(seg.text))) {
                Sentence s = tokenize_sentence(raw);
                if (!s.tokens.empty()) post.sentences.push_back(std::move(s));
            }
        }
        td.posts.push_back(std::move(post));
    }
    return td;
}

ThreadDoc load_thread_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open thread file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return preprocess_thread(buf.str());
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

}  // namespace apilink
