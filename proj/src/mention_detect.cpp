#include "apilink/mention_detect.hpp"

#include <algorithm>
#include <set>

namespace apilink {
namespace {

bool is_prefix(const std::vector<std::string>& shorter,
               const std::vector<std::string>& longer) {
    if (shorter.empty() || shorter.size() >= longer.size()) return false;
    return std::equal(shorter.begin(), shorter.end(), longer.begin());
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t inter = 0;
    for (const std::string& t : a) inter += b.count(t);
    size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Span boundaries must carry content: no stopwords, no punctuation tokens.
bool valid_boundary(const Token& t) {
    return !t.normalized.empty() && !is_stopword(t.normalized);
}

}  // namespace

const char* to_string(MatchKind k) {
    switch (k) {
        case MatchKind::None: return "NONE";
        case MatchKind::Exact: return "EXACT";
        case MatchKind::Prefix: return "PREFIX";
        case MatchKind::TokenSort: return "TOKEN_SORT";
    }
    return "NONE";
}

std::pair<MatchKind, double> name_similarity(std::string_view mention_text,
                                             std::string_view name) {
    std::vector<std::string> seq_m = tokenize_name_seq(mention_text);
    std::vector<std::string> seq_n = tokenize_name_seq(name);
    if (!seq_m.empty() && seq_m == seq_n) return {MatchKind::Exact, 1.0};

    const bool m_shorter = seq_m.size() < seq_n.size();
    const std::string_view shorter_text = m_shorter ? mention_text : name;
    if ((m_shorter ? is_prefix(seq_m, seq_n) : is_prefix(seq_n, seq_m)) &&
        shorter_text.size() >= 4)
        return {MatchKind::Prefix, 1.0};

    double w = jaccard(tokenize_name(mention_text), tokenize_name(name));
    if (w <= 0.0) return {MatchKind::None, 0.0};
    return {MatchKind::TokenSort, w};
}

MentionDetector::MentionDetector(const ApiDatabase& db, DetectOptions options)
    : db_(db), options_(options) {
    for (const ApiEntry& e : db.entries()) {
        records_.push_back({e.id, "", e.name});
        for (const ModuleEntry& m : e.modules)
            records_.push_back({e.id, m.name, m.name});
    }
    for (size_t i = 0; i < records_.size(); ++i) {
        std::set<std::string> keys = tokenize_name(records_[i].name);
        std::vector<std::string> seq = tokenize_name_seq(records_[i].name);
        keys.insert(seq.begin(), seq.end());
        max_name_tokens_ = std::max(max_name_tokens_, seq.size());
        for (const std::string& k : keys) token_to_records_[k].push_back(i);
    }
}

std::vector<Candidate> MentionDetector::match_text(
    const std::string& text) const {
    std::vector<Candidate> out;
    std::set<std::pair<std::string, std::string>> seen;
    std::set<size_t> record_ids;
    for (const std::string& t : tokenize_name_seq(text)) {
        auto it = token_to_records_.find(t);
        if (it == token_to_records_.end()) continue;
        record_ids.insert(it->second.begin(), it->second.end());
    }
    for (size_t r : record_ids) {
        auto [kind, weight] = name_similarity(text, records_[r].name);
        if (kind == MatchKind::None) continue;
        if (kind == MatchKind::TokenSort && weight < options_.token_sort_floor)
            continue;
        if (!seen.insert({records_[r].api_id, records_[r].module}).second)
            continue;
        out.push_back({records_[r].api_id, records_[r].module, kind, weight});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.api_id, a.matched_module) <
               std::tie(b.api_id, b.matched_module);
    });
    return out;
}

void MentionDetector::scan_tokens(const std::vector<Token>& tokens,
                                  const std::string& thread_id,
                                  const std::string& post_id,
                                  int sentence_index,
                                  std::vector<MentionCandidateList>& out) const {
    struct Span {
        size_t begin = 0;
        size_t end = 0;
        double weight = 0.0;
        std::vector<Candidate> candidates;
    };
    const size_t n = tokens.size();
    std::vector<Span> spans;
    for (size_t i = 0; i < n; ++i) {
        if (!valid_boundary(tokens[i])) continue;
        const size_t max_len = std::min(max_name_tokens_, n - i);
        for (size_t len = 1; len <= max_len; ++len) {
            if (!valid_boundary(tokens[i + len - 1])) continue;
            std::string text;
            for (size_t k = i; k < i + len; ++k) {
                if (!text.empty()) text += ' ';
                text += tokens[k].surface;
            }
            std::vector<Candidate> cands = match_text(text);
            // Any multi-word span keeps a weight-1 PREFIX match while it
            // extends over unrelated following words, so that match
            // direction is only accepted for single-token mentions.
            if (len > 1) {
                const size_t span_len = tokenize_name_seq(text).size();
                std::erase_if(cands, [&](const Candidate& c) {
                    if (c.match_kind != MatchKind::Prefix) return false;
                    const std::string& nm = c.matched_module.empty()
                                                ? db_.at(c.api_id).name
                                                : c.matched_module;
                    return tokenize_name_seq(nm).size() < span_len;
                });
            }
            if (cands.empty()) continue;
            double weight = 0.0;
            for (const Candidate& c : cands)
                weight = std::max(weight, c.name_sim);
            spans.push_back({i, i + len, weight, std::move(cands)});
        }
    }
    // Strongest spans claim their tokens first; longer spans shadow equally
    // weighted shorter ones, earlier spans break full ties.
    std::stable_sort(spans.begin(), spans.end(),
                     [](const Span& a, const Span& b) {
                         if (a.weight != b.weight) return a.weight > b.weight;
                         size_t la = a.end - a.begin, lb = b.end - b.begin;
                         if (la != lb) return la > lb;
                         return a.begin < b.begin;
                     });
    std::vector<bool> taken(n, false);
    std::vector<const Span*> accepted;
    for (const Span& s : spans) {
        bool overlaps = false;
        for (size_t k = s.begin; k < s.end && !overlaps; ++k)
            overlaps = taken[k];
        if (overlaps) continue;
        for (size_t k = s.begin; k < s.end; ++k) taken[k] = true;
        accepted.push_back(&s);
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const Span* a, const Span* b) { return a->begin < b->begin; });
    for (const Span* s : accepted) {
        MentionCandidateList mcl;
        mcl.mention.thread_id = thread_id;
        mcl.mention.post_id = post_id;
        mcl.mention.sentence_index = sentence_index;
        mcl.mention.span_begin = static_cast<int>(s->begin);
        mcl.mention.span_end = static_cast<int>(s->end);
        std::string surface;
        for (size_t k = s->begin; k < s->end; ++k) {
            if (!surface.empty()) surface += ' ';
            surface += tokens[k].surface;
        }
        mcl.mention.surface = std::move(surface);
        mcl.candidates = s->candidates;
        out.push_back(std::move(mcl));
    }
}

std::vector<MentionCandidateList> MentionDetector::detect(
    const ThreadDoc& doc) const {
    std::vector<MentionCandidateList> out;
    scan_tokens(doc.title, doc.thread_id, "", 0, out);
    for (const Post& p : doc.posts) {
        for (size_t s = 0; s < p.sentences.size(); ++s)
            scan_tokens(p.sentences[s].tokens, doc.thread_id, p.post_id,
                        static_cast<int>(s), out);
    }
    return out;
}

}  // namespace apilink
