#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/mention_detect.hpp"
#include "apilink/text_prep.hpp"

namespace apilink {

enum class CtxSource { SamePost, OtherPost, Title };

struct CtxToken {
    std::string text;  // normalized token
    Pos pos = Pos::Other;
    CtxSource source = CtxSource::SamePost;
};

// Bag of tokens describing the surroundings of one mention. Stopwords and
// punctuation tokens are excluded, as are the mention's own tokens (by
// position, so equal text elsewhere still counts).
struct FeatureContext {
    std::vector<CtxToken> tokens;

    std::set<std::string> noun_set() const;
    std::set<std::string> verb_set() const;
};

struct CandidateDescription {
    std::string api_id;
    std::vector<Sentence> selected;
    std::set<std::string> noun_set;
    std::set<std::string> verb_set;
};

// Tokens around the mention: up to `window` sentences each side of its own
// sentence (SAME_POST), the same window around every same-surface occurrence
// in other posts (OTHER_POST), and all title tokens (TITLE). A title mention
// takes part in the OTHER_POST scan against every post.
FeatureContext build_feature_context(const Mention& mention,
                                     const ThreadDoc& doc, int window);

// Keeps a description sentence when (1) it starts with a token of the API or
// module name, (2) it starts with "it" or "they" and directly follows a kept
// rule-1 sentence, or (3) it references another API through a link equal to
// another entry's resource link or through the name of a dependency.
// Sentences come from portal_description then homepage_description.
CandidateDescription select_description_sentences(const ApiEntry& candidate,
                                                  const ApiDatabase& db);

// (noun_sim, verb_sim): Jaccard over the noun and verb sets; two empty sets
// give 0, not 1.
std::pair<double, double> context_similarity(const FeatureContext& ctx,
                                             const CandidateDescription& desc);

double jaccard_similarity(const std::set<std::string>& a,
                          const std::set<std::string>& b);

class DescriptionCache {
  public:
    explicit DescriptionCache(const ApiDatabase& db);
    const CandidateDescription& get(const std::string& api_id) const;

  private:
    std::map<std::string, CandidateDescription> by_id_;
};

}  // namespace apilink
