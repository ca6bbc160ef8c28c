#include "apilink/context_sim.hpp"

#include <algorithm>

#include "apilink/errors.hpp"

namespace apilink {
namespace {

bool content_token(const Token& t) {
    return !t.normalized.empty() && !is_stopword(t.normalized);
}

void add_sentence_window(const Post& post, int center, int window,
                         int skip_sentence, int skip_begin, int skip_end,
                         CtxSource source, FeatureContext& out) {
    const int n = static_cast<int>(post.sentences.size());
    const int lo = std::max(0, center - window);
    const int hi = std::min(n - 1, center + window);
    for (int s = lo; s <= hi; ++s) {
        const std::vector<Token>& toks = post.sentences[s].tokens;
        for (int t = 0; t < static_cast<int>(toks.size()); ++t) {
            if (s == skip_sentence && t >= skip_begin && t < skip_end) continue;
            if (!content_token(toks[t])) continue;
            out.tokens.push_back({toks[t].normalized, toks[t].pos, source});
        }
    }
}

std::vector<std::string> span_normalized(const std::vector<Token>& tokens,
                                         int begin, int end) {
    std::vector<std::string> out;
    for (int i = begin; i < end && i < static_cast<int>(tokens.size()); ++i)
        out.push_back(tokens[i].normalized);
    return out;
}

// Occurrences of `needle` as a consecutive normalized-token run.
std::vector<std::pair<int, int>> find_occurrences(
    const Sentence& sentence, const std::vector<std::string>& needle) {
    std::vector<std::pair<int, int>> hits;
    if (needle.empty()) return hits;
    const auto& toks = sentence.tokens;
    const int n = static_cast<int>(toks.size());
    const int k = static_cast<int>(needle.size());
    for (int i = 0; i + k <= n; ++i) {
        bool match = true;
        for (int j = 0; j < k; ++j) {
            if (toks[i + j].normalized != needle[j]) {
                match = false;
                break;
            }
        }
        if (match) hits.push_back({i, i + k});
    }
    return hits;
}

void add_title(const ThreadDoc& doc, int skip_begin, int skip_end,
               FeatureContext& out) {
    for (int t = 0; t < static_cast<int>(doc.title.size()); ++t) {
        if (t >= skip_begin && t < skip_end) continue;
        if (!content_token(doc.title[t])) continue;
        out.tokens.push_back(
            {doc.title[t].normalized, doc.title[t].pos, CtxSource::Title});
    }
}

// Sentence tokens expanded through name tokenization, so "Easy-gson" also
// yields "easy" and "gson". Used for rule 1 and rule 3 checks.
std::vector<std::string> expanded_tokens(const Sentence& s) {
    std::vector<std::string> out;
    for (const Token& t : s.tokens) {
        if (t.normalized.empty()) continue;
        for (std::string& piece : tokenize_name_seq(t.normalized))
            out.push_back(std::move(piece));
    }
    return out;
}

bool contains_sequence(const std::vector<std::string>& haystack,
                       const std::vector<std::string>& needle) {
    if (needle.empty() || needle.size() > haystack.size()) return false;
    for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), haystack.begin() + i))
            return true;
    }
    return false;
}

}  // namespace

std::set<std::string> FeatureContext::noun_set() const {
    std::set<std::string> out;
    for (const CtxToken& t : tokens)
        if (t.pos == Pos::Noun) out.insert(t.text);
    return out;
}

std::set<std::string> FeatureContext::verb_set() const {
    std::set<std::string> out;
    for (const CtxToken& t : tokens)
        if (t.pos == Pos::Verb) out.insert(t.text);
    return out;
}

double jaccard_similarity(const std::set<std::string>& a,
                          const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    for (const std::string& t : a) inter += b.count(t);
    size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0
                    : static_cast<double>(inter) / static_cast<double>(uni);
}

FeatureContext build_feature_context(const Mention& mention,
                                     const ThreadDoc& doc, int window) {
    FeatureContext ctx;
    std::vector<std::string> needle;

    if (mention.in_title()) {
        needle = span_normalized(doc.title, mention.span_begin,
                                 mention.span_end);
        add_title(doc, mention.span_begin, mention.span_end, ctx);
    } else {
        const Post* own = nullptr;
        for (const Post& p : doc.posts)
            if (p.post_id == mention.post_id) own = &p;
        if (!own || mention.sentence_index >=
                        static_cast<int>(own->sentences.size()))
            throw std::logic_error("mention does not belong to this thread");
        needle = span_normalized(
            own->sentences[mention.sentence_index].tokens, mention.span_begin,
            mention.span_end);
        add_sentence_window(*own, mention.sentence_index, window,
                            mention.sentence_index, mention.span_begin,
                            mention.span_end, CtxSource::SamePost, ctx);
        add_title(doc, -1, -1, ctx);
    }

    for (const Post& p : doc.posts) {
        if (!mention.in_title() && p.post_id == mention.post_id) continue;
        for (int s = 0; s < static_cast<int>(p.sentences.size()); ++s) {
            for (auto [b, e] : find_occurrences(p.sentences[s], needle))
                add_sentence_window(p, s, window, s, b, e,
                                    CtxSource::OtherPost, ctx);
        }
    }
    return ctx;
}

CandidateDescription select_description_sentences(const ApiEntry& candidate,
                                                  const ApiDatabase& db) {
    CandidateDescription out;
    out.api_id = candidate.id;

    std::set<std::string> name_tokens = tokenize_name(candidate.name);
    for (const ModuleEntry& m : candidate.modules) {
        for (const std::string& t : tokenize_name(m.name))
            name_tokens.insert(t);
    }

    // Links belonging to other database entries, for rule 3.
    std::set<std::string> other_links;
    for (const ApiEntry& e : db.entries()) {
        if (e.id == candidate.id) continue;
        other_links.insert(e.resource_links.begin(), e.resource_links.end());
    }
    std::vector<std::vector<std::string>> dep_name_seqs;
    for (const std::string& dep : candidate.dependencies)
        dep_name_seqs.push_back(tokenize_name_seq(db.at(dep).name));

    std::vector<std::string> raw;
    for (const std::string& s : split_sentences(candidate.portal_description))
        raw.push_back(s);
    for (const std::string& s :
         split_sentences(candidate.homepage_description))
        raw.push_back(s);

    bool prev_kept_rule1 = false;
    for (const std::string& text : raw) {
        Sentence s = tokenize_sentence(text);
        if (s.tokens.empty()) {
            prev_kept_rule1 = false;
            continue;
        }
        const Token* first = nullptr;
        for (const Token& t : s.tokens) {
            if (!t.normalized.empty()) {
                first = &t;
                break;
            }
        }
        bool rule1 = false;
        if (first) {
            for (const std::string& piece : tokenize_name(first->normalized)) {
                if (name_tokens.count(piece)) {
                    rule1 = true;
                    break;
                }
            }
        }
        bool rule2 = !rule1 && prev_kept_rule1 && first &&
                     (first->normalized == "it" || first->normalized == "they");
        bool rule3 = false;
        if (!rule1 && !rule2) {
            for (const std::string& link : s.links) {
                if (other_links.count(link)) {
                    rule3 = true;
                    break;
                }
            }
            if (!rule3) {
                std::vector<std::string> expanded = expanded_tokens(s);
                for (const auto& seq : dep_name_seqs) {
                    if (contains_sequence(expanded, seq)) {
                        rule3 = true;
                        break;
                    }
                }
            }
        }
        if (rule1 || rule2 || rule3) out.selected.push_back(std::move(s));
        prev_kept_rule1 = rule1;
    }

    for (const Sentence& s : out.selected) {
        for (const Token& t : s.tokens) {
            if (t.normalized.empty() || is_stopword(t.normalized)) continue;
            if (t.pos == Pos::Noun) out.noun_set.insert(t.normalized);
            if (t.pos == Pos::Verb) out.verb_set.insert(t.normalized);
        }
    }
    return out;
}

std::pair<double, double> context_similarity(const FeatureContext& ctx,
                                             const CandidateDescription& desc) {
    return {jaccard_similarity(ctx.noun_set(), desc.noun_set),
            jaccard_similarity(ctx.verb_set(), desc.verb_set)};
}

DescriptionCache::DescriptionCache(const ApiDatabase& db) {
    for (const ApiEntry& e : db.entries())
        by_id_.emplace(e.id, select_description_sentences(e, db));
}

const CandidateDescription& DescriptionCache::get(
    const std::string& api_id) const {
    auto it = by_id_.find(api_id);
    if (it == by_id_.end()) throw input_error("unknown api id: " + api_id);
    return it->second;
}

}  // namespace apilink
