#pragma once

#include <string>
#include <utility>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/text_prep.hpp"

namespace apilink {

enum class MatchKind { None, Exact, Prefix, TokenSort };

const char* to_string(MatchKind k);

// A detected name mention. Title mentions use post_id = "" and
// sentence_index = 0; the span then indexes into ThreadDoc::title.
struct Mention {
    std::string thread_id;
    std::string post_id;
    int sentence_index = 0;
    int span_begin = 0;  // token index, inclusive
    int span_end = 0;    // token index, exclusive
    std::string surface;

    bool in_title() const { return post_id.empty(); }
};

struct Candidate {
    std::string api_id;
    std::string matched_module;  // set when the module name made the match
    MatchKind match_kind = MatchKind::None;
    double name_sim = 0.0;
};

struct MentionCandidateList {
    Mention mention;
    std::vector<Candidate> candidates;  // sorted by (api_id, matched_module)
};

// Classifies the match between a mention text and one API or module name.
// EXACT: equal token sequences, case-insensitive. PREFIX: one sequence is a
// proper prefix of the other and the shorter input is at least 4 characters.
// Otherwise TOKEN_SORT with the Jaccard weight of the two token sets; a
// weight of 0 means no match at all.
std::pair<MatchKind, double> name_similarity(std::string_view mention_text,
                                             std::string_view name);

struct DetectOptions {
    // Minimum TOKEN_SORT weight for a candidate to enter an MCL. EXACT and
    // PREFIX matches always qualify.
    double token_sort_floor = 0.2;
};

class MentionDetector {
  public:
    MentionDetector(const ApiDatabase& db, DetectOptions options = {});

    // Scans the title and every sentence. All candidate spans are ranked by
    // match weight, then span length, then start position; spans are accepted
    // greedily and shadow their tokens against weaker overlapping spans.
    // Spans never begin or end on a stopword or punctuation token.
    std::vector<MentionCandidateList> detect(const ThreadDoc& doc) const;

    // Candidates for one exact text, using the same floor rules.
    std::vector<Candidate> match_text(const std::string& text) const;

  private:
    struct NameRecord {
        std::string api_id;
        std::string module;      // empty when the API name itself is matched
        std::string name;        // original name string
    };

    void scan_tokens(const std::vector<Token>& tokens,
                     const std::string& thread_id, const std::string& post_id,
                     int sentence_index,
                     std::vector<MentionCandidateList>& out) const;

    const ApiDatabase& db_;
    DetectOptions options_;
    std::vector<NameRecord> records_;
    std::map<std::string, std::vector<size_t>> token_to_records_;
    size_t max_name_tokens_ = 1;
};

}  // namespace apilink
