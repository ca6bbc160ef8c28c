#include "apilink/code_link.hpp"

#include <algorithm>
#include <cctype>

namespace apilink {
namespace {

const char* const kOtherEcosystemSignals[] = {
    "#include", "<?php", "using namespace", "def ", "console.log",
    "function ", "=>", "puts ", "fn main", "println!",
};

// java.lang and primitive wrapper types; they match no database candidate
// and would only dilute the structural similarity.
const char* const kDefaultTypes[] = {
    "String", "Object", "Integer", "Long", "Double", "Float", "Short",
    "Byte", "Character", "Boolean", "Number", "Math", "System", "Thread",
    "Exception", "RuntimeException", "Error", "Throwable", "Void",
    "Iterable", "Comparable", "Runnable", "StringBuilder", "StringBuffer",
    "Class", "Override",
};

const char* const kJavaKeywords[] = {
    "import", "class", "interface", "enum", "public", "private",
    "protected", "static", "final", "void", "new", "return", "extends",
    "implements", "throws", "try", "catch", "package", "this", "null",
    "true", "false", "int", "boolean", "if", "else", "for", "while",
};

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool is_ident(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Loose type convention used inside snippets: ObjectMapper, String, Wrapper.
bool loose_type_name(std::string_view w) {
    if (w.empty() || !is_upper(w[0])) return false;
    return std::any_of(w.begin(), w.end(), is_lower);
}

// Strict convention for prose: needs an interior hump (JsonNode) so plain
// capitalized words do not count as code.
bool humped_type_name(std::string_view w) {
    if (!loose_type_name(w)) return false;
    for (size_t i = 1; i < w.size(); ++i)
        if (is_upper(w[i]) && is_lower(w[i - 1])) return true;
    return false;
}

std::string strip_comments_and_strings(const std::string& in) {
    std::string out;
    out.reserve(in.size());
    for (size_t i = 0; i < in.size();) {
        if (in.compare(i, 2, "//") == 0) {
            while (i < in.size() && in[i] != '\n') ++i;
        } else if (in.compare(i, 2, "/*") == 0) {
            size_t end = in.find("*/", i + 2);
            i = end == std::string::npos ? in.size() : end + 2;
            out += ' ';
        } else if (in[i] == '"' || in[i] == '\'') {
            char quote = in[i++];
            while (i < in.size() && in[i] != quote) {
                if (in[i] == '\\') ++i;
                if (i < in.size()) ++i;
            }
            if (i < in.size()) ++i;
            out += ' ';
        } else {
            out += in[i++];
        }
    }
    return out;
}

bool balanced_delimiters(const std::string& code) {
    int curly = 0, round = 0, square = 0;
    for (char c : code) {
        switch (c) {
            case '{': ++curly; break;
            case '}': --curly; break;
            case '(': ++round; break;
            case ')': --round; break;
            case '[': ++square; break;
            case ']': --square; break;
            default: break;
        }
        if (curly < 0 || round < 0 || square < 0) return false;
    }
    return curly == 0 && round == 0 && square == 0;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(line);
            line.clear();
        } else {
            line += c;
        }
    }
    if (!line.empty()) lines.push_back(line);
    return lines;
}

std::string rtrim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    return s;
}

std::string to_lower_copy(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

// Identifier runs, keeping dotted chains together: "a.b.C" is one run.
std::vector<std::string> identifier_runs(const std::string& code) {
    std::vector<std::string> runs;
    size_t i = 0;
    while (i < code.size()) {
        if (!is_ident(code[i]) ||
            std::isdigit(static_cast<unsigned char>(code[i]))) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < code.size() &&
               (is_ident(code[j]) ||
                (code[j] == '.' && j + 1 < code.size() && is_ident(code[j + 1]))))
            ++j;
        runs.push_back(code.substr(i, j - i));
        i = j;
    }
    return runs;
}

std::string last_segment(const std::string& name) {
    size_t dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

bool has_java_signal(const std::string& code) {
    static const std::set<std::string> keywords(std::begin(kJavaKeywords),
                                                std::end(kJavaKeywords));
    for (const std::string& run : identifier_runs(code)) {
        if (keywords.count(run)) return true;
        if (loose_type_name(last_segment(run))) return true;
    }
    return code.find(';') != std::string::npos;
}

bool prose_shaped(const std::string& code) {
    int considered = 0, code_like = 0;
    for (const std::string& raw_line : split_lines(code)) {
        std::string line = rtrim(raw_line);
        if (line.empty()) continue;
        ++considered;
        char back = line.back();
        if (back == ';' || back == '{' || back == '}' || back == '(' ||
            back == ')' || back == ',' || back == ':' ||
            line.find('=') != std::string::npos ||
            line.find('(') != std::string::npos)
            ++code_like;
    }
    return considered > 0 && code_like * 2 < considered;
}

}  // namespace

const char* to_string(SnippetStatus s) {
    switch (s) {
        case SnippetStatus::ValidJavaLike: return "VALID_JAVA_LIKE";
        case SnippetStatus::DiscardedNonJava: return "DISCARDED_NON_JAVA";
        case SnippetStatus::DiscardedMalformed: return "DISCARDED_MALFORMED";
    }
    return "DISCARDED_MALFORMED";
}

std::string process_import(const std::string& import_statement) {
    std::string s = import_statement;
    auto erase_all = [&s](std::string_view what) {
        size_t pos;
        while ((pos = s.find(what)) != std::string::npos)
            s.erase(pos, what.size());
    };
    erase_all("import");
    erase_all(";");
    erase_all("*");
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    while (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

CodeSnippet parse_snippet(const std::string& raw) {
    CodeSnippet snip;
    snip.raw = raw;

    size_t first = raw.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        snip.status = SnippetStatus::DiscardedMalformed;
        return snip;
    }
    if (raw[first] == '<') {
        snip.status = SnippetStatus::DiscardedMalformed;
        return snip;
    }
    for (const char* signal : kOtherEcosystemSignals) {
        if (raw.find(signal) != std::string::npos) {
            snip.status = SnippetStatus::DiscardedNonJava;
            return snip;
        }
    }
    std::string code = strip_comments_and_strings(raw);
    if (!balanced_delimiters(code)) {
        snip.status = SnippetStatus::DiscardedMalformed;
        return snip;
    }
    if (!has_java_signal(code) || prose_shaped(code)) {
        snip.status = SnippetStatus::DiscardedNonJava;
        return snip;
    }
    snip.status = SnippetStatus::ValidJavaLike;

    for (const std::string& raw_line : split_lines(code)) {
        std::string line = raw_line;
        size_t at = line.find("import ");
        if (at == std::string::npos) continue;
        size_t end = line.find(';', at);
        std::string stmt = line.substr(at, end == std::string::npos
                                               ? std::string::npos
                                               : end - at);
        size_t st = stmt.find("static ");
        if (st != std::string::npos) stmt.erase(st, 7);
        std::string path = process_import(stmt);
        if (!path.empty()) {
            // Keep the wildcard marker the algorithm strips later.
            if (line.find(".*", at) != std::string::npos) path += ".*";
            snip.imports.push_back(path);
        }
    }

    std::vector<std::string> runs = identifier_runs(code);
    for (size_t i = 0; i < runs.size(); ++i) {
        std::string lowered = to_lower_copy(runs[i]);
        if ((lowered == "class" || lowered == "interface" ||
             lowered == "enum") &&
            i + 1 < runs.size() && loose_type_name(runs[i + 1]))
            snip.declared_types.insert(runs[i + 1]);
    }

    bool after_import = false;
    for (size_t i = 0; i < runs.size(); ++i) {
        const std::string& run = runs[i];
        if (run == "import") {
            after_import = true;
            continue;
        }
        if (after_import) {
            // Import paths are not usages.
            after_import = false;
            continue;
        }
        if (snip.declared_types.count(run) && i > 0) {
            std::string prev = to_lower_copy(runs[i - 1]);
            if (prev == "class" || prev == "interface" || prev == "enum")
                continue;  // the declaration itself
        }
        if (run.find('.') != std::string::npos) {
            if (loose_type_name(last_segment(run))) {
                snip.used_types.insert(run);
            } else if (loose_type_name(run.substr(0, run.find('.')))) {
                snip.used_types.insert(run.substr(0, run.find('.')));
            }
            continue;
        }
        if (loose_type_name(run)) snip.used_types.insert(run);
    }
    return snip;
}

namespace {

struct CodeTerm {
    std::string type;
    int sentence = -1;       // -1 for snippet terms
    int token = 0;           // token index for inline terms
    int order = 0;           // global order key within the post
};

struct MentionPos {
    size_t mcl_index;
    int sentence;
    int begin;
    int end;
    int order;
};

bool default_type(const std::string& unqualified) {
    static const std::set<std::string> defaults(std::begin(kDefaultTypes),
                                                std::end(kDefaultTypes));
    return defaults.count(unqualified) > 0;
}

}  // namespace

std::vector<CodeContext> extract_code_contexts(
    const ThreadDoc& doc, const std::vector<MentionCandidateList>& mcls,
    const CodeLinkOptions& options) {
    std::vector<CodeContext> out(mcls.size());

    for (const Post& post : doc.posts) {
        std::vector<MentionPos> mentions;
        for (size_t i = 0; i < mcls.size(); ++i) {
            const Mention& m = mcls[i].mention;
            if (m.post_id != post.post_id || m.in_title()) continue;
            mentions.push_back({i, m.sentence_index, m.span_begin, m.span_end, 0});
        }
        if (mentions.empty()) continue;

        std::vector<CodeSnippet> snippets;
        std::set<std::string> declared;
        for (const RawSnippet& rs : post.snippets) {
            CodeSnippet s = parse_snippet(rs.text);
            s.position = rs.position;
            if (s.status == SnippetStatus::ValidJavaLike)
                declared.insert(s.declared_types.begin(),
                                s.declared_types.end());
            snippets.push_back(std::move(s));
        }

        // Walk the post once to give every event a global order key.
        std::vector<CodeTerm> terms;
        int order = 0;
        size_t next_snippet = 0;
        auto flush_snippets = [&](int upto_sentence) {
            while (next_snippet < snippets.size() &&
                   snippets[next_snippet].position <= upto_sentence) {
                const CodeSnippet& s = snippets[next_snippet];
                if (s.status == SnippetStatus::ValidJavaLike) {
                    for (const std::string& t : s.used_types)
                        terms.push_back({t, -1, 0, order++});
                }
                ++next_snippet;
            }
        };
        for (int s = 0; s < static_cast<int>(post.sentences.size()); ++s) {
            flush_snippets(s);
            const auto& toks = post.sentences[s].tokens;
            for (int t = 0; t < static_cast<int>(toks.size()); ++t) {
                bool inside_mention = false;
                for (MentionPos& m : mentions) {
                    if (m.sentence == s && t >= m.begin && t < m.end) {
                        inside_mention = true;
                        if (t == m.begin) m.order = order++;
                    }
                }
                if (inside_mention) continue;
                const std::string& w = toks[t].surface;
                if (humped_type_name(w)) {
                    terms.push_back({w, s, t, order++});
                } else if (w.find('.') != std::string::npos &&
                           humped_type_name(last_segment(w))) {
                    terms.push_back({w, s, t, order++});
                }
            }
        }
        flush_snippets(static_cast<int>(post.sentences.size()));

        auto assign = [&](const CodeTerm& term) -> size_t {
            if (mentions.size() == 1) return mentions[0].mcl_index;
            if (term.sentence >= 0) {
                const MentionPos* best = nullptr;
                int best_dist = 0;
                for (const MentionPos& m : mentions) {
                    if (m.sentence != term.sentence) continue;
                    int dist = term.token < m.begin ? m.begin - term.token
                                                    : term.token - m.end + 1;
                    bool preceding = m.order < term.order;
                    if (!best || dist < best_dist ||
                        (dist == best_dist && preceding)) {
                        best = &m;
                        best_dist = dist;
                    }
                }
                if (best) return best->mcl_index;
            }
            const MentionPos* before = nullptr;
            const MentionPos* after = nullptr;
            for (const MentionPos& m : mentions) {
                if (m.order < term.order) {
                    if (!before || m.order > before->order) before = &m;
                } else if (!after || m.order < after->order) {
                    after = &m;
                }
            }
            if (before) return before->mcl_index;
            return after->mcl_index;
        };

        for (const CodeTerm& term : terms) {
            if (declared.count(last_segment(term.type))) continue;
            if (!options.keep_default_types &&
                default_type(last_segment(term.type)))
                continue;
            out[assign(term)].types.insert(term.type);
        }
    }
    return out;
}

std::set<std::string> link_type(const MentionCandidateList& mcl,
                                const std::string& type_name,
                                const std::vector<CodeSnippet>& post_snippets,
                                const ApiDatabase& db) {
    std::set<std::string> candidate_ids;
    for (const Candidate& c : mcl.candidates) candidate_ids.insert(c.api_id);

    if (type_name.find('.') != std::string::npos) {
        std::set<std::string> out;
        for (const std::string& id : candidate_ids) {
            const ApiEntry& e = db.at(id);
            if (std::find(e.type_index.begin(), e.type_index.end(),
                          type_name) != e.type_index.end())
                out.insert(id);
        }
        return out;
    }

    std::set<std::string> unqualified_matches;
    for (const std::string& id : candidate_ids) {
        const ApiEntry& e = db.at(id);
        for (const std::string& fqn : e.type_index) {
            if (last_segment(fqn) == type_name) {
                unqualified_matches.insert(id);
                break;
            }
        }
    }
    if (unqualified_matches.empty()) return unqualified_matches;

    std::vector<std::string> processed;
    for (const CodeSnippet& s : post_snippets) {
        if (s.status != SnippetStatus::ValidJavaLike) continue;
        for (const std::string& imp : s.imports)
            processed.push_back(process_import(imp));
    }

    std::set<std::string> confirmed;
    for (const std::string& id : unqualified_matches) {
        const ApiEntry& e = db.at(id);
        for (const std::string& p : processed) {
            std::string fqn = p.size() > type_name.size() + 1 &&
                                      p.compare(p.size() - type_name.size() - 1,
                                                std::string::npos,
                                                "." + type_name) == 0
                                  ? p
                                  : p + "." + type_name;
            if (std::find(e.type_index.begin(), e.type_index.end(), fqn) !=
                e.type_index.end()) {
                confirmed.insert(id);
                break;
            }
        }
    }
    return confirmed.empty() ? unqualified_matches : confirmed;
}

std::map<std::string, std::set<std::string>> link_context_types(
    const MentionCandidateList& mcl, const CodeContext& ctx,
    const std::vector<CodeSnippet>& post_snippets, const ApiDatabase& db) {
    std::map<std::string, std::set<std::string>> out;
    for (const std::string& t : ctx.types)
        out.emplace(t, link_type(mcl, t, post_snippets, db));
    return out;
}

double structural_similarity(
    const CodeContext& ctx, const std::string& api_id,
    const std::map<std::string, std::set<std::string>>& links) {
    if (ctx.types.empty()) return 0.0;
    size_t linked = 0;
    for (const std::string& t : ctx.types) {
        auto it = links.find(t);
        if (it != links.end() && it->second.count(api_id)) ++linked;
    }
    return static_cast<double>(linked) / static_cast<double>(ctx.types.size());
}

}  // namespace apilink
