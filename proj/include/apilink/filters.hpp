#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/context_sim.hpp"
#include "apilink/mention_detect.hpp"

namespace apilink {

struct Hit {
    Candidate candidate;
    double confidence = 0.0;  // classifier confidence, always above tau
};

struct HitList {
    size_t mcl_index = 0;  // position in the detected MCL vector
    std::vector<Hit> hits;
};

struct FilterDecision {
    std::optional<Candidate> chosen;
    double confidence = 0.0;
    std::string filter_name;  // BETWEENNESS, CENTRALITY, ... or FALLBACK
    bool overwrote_intrinsic = false;
};

// Trigger vocabulary for the betweenness filter, in normalized token form.
const std::vector<std::string>& betweenness_keywords();

// Applies only when the context holds a trigger keyword. Buckets every hit
// that directly depends on another hit; a single bucket entry wins, several
// go to the highest name similarity (ties to the smallest api id and module).
std::optional<Candidate> betweenness_filter(const HitList& hits,
                                            const FeatureContext& ctx,
                                            const DependencyGraph& graph);

// (# other MCL candidate APIs depending on the hit) divided by
// (# other MCL candidate APIs the hit depends on, plus one).
double influence_score(const Candidate& hit, const MentionCandidateList& mcl,
                       const DependencyGraph& graph);

// 1 / (# other MCL candidate APIs depending on the hit, plus one).
double closeness_score(const Candidate& hit, const MentionCandidateList& mcl,
                       const DependencyGraph& graph);

// Betweenness, then centrality (highest influence score; ties broken by most
// in-MCL dependents, remaining ties abstain), then closeness (lowest score
// among hits with at least one in-MCL dependent; ties abstain). When every
// filter abstains the highest-confidence hit wins as FALLBACK.
FilterDecision intrinsic_filter(const HitList& hits,
                                const MentionCandidateList& mcl,
                                const FeatureContext& ctx,
                                const DependencyGraph& graph);

// A pass-one resolution adjacent to the mention under consideration.
struct NeighborResolution {
    std::string api_id;
    int distance = 0;  // flat token distance from the mention
};

// Requires resolved true mentions on both sides of the mention in the same
// post (one side suffices with relax_gate). Composition: the preceding API
// owning a module that shares a token with the mention wins and overwrites
// any intrinsic choice. Aggregation: else, if the nearest neighbor's API
// depends on exactly one hit, that hit wins. Projection: else, if exactly
// one hit depends on a surrounding API, it wins. Otherwise no decision.
FilterDecision extrinsic_filter(const HitList& hits, const Mention& mention,
                                const std::optional<NeighborResolution>& prev,
                                const std::optional<NeighborResolution>& next,
                                const ApiDatabase& db, bool relax_gate);

}  // namespace apilink
