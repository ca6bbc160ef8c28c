#include "apilink/filters.hpp"

#include <algorithm>
#include <set>

namespace apilink {
namespace {

// Distinct candidate api ids in the MCL other than the given one.
std::set<std::string> other_candidate_apis(const MentionCandidateList& mcl,
                                           const std::string& api_id) {
    std::set<std::string> out;
    for (const Candidate& c : mcl.candidates)
        if (c.api_id != api_id) out.insert(c.api_id);
    return out;
}

size_t mcl_dependents(const Candidate& hit, const MentionCandidateList& mcl,
                      const DependencyGraph& graph) {
    size_t n = 0;
    for (const std::string& other : other_candidate_apis(mcl, hit.api_id))
        if (graph.depends_on(other, hit.api_id)) ++n;
    return n;
}

size_t mcl_dependees(const Candidate& hit, const MentionCandidateList& mcl,
                     const DependencyGraph& graph) {
    size_t n = 0;
    for (const std::string& other : other_candidate_apis(mcl, hit.api_id))
        if (graph.depends_on(hit.api_id, other)) ++n;
    return n;
}

bool candidate_less(const Candidate& a, const Candidate& b) {
    return std::tie(a.api_id, a.matched_module) <
           std::tie(b.api_id, b.matched_module);
}

const Hit* best_hit_for_api(const HitList& hits, const std::string& api_id) {
    const Hit* best = nullptr;
    for (const Hit& h : hits.hits) {
        if (h.candidate.api_id != api_id) continue;
        if (!best || h.confidence > best->confidence ||
            (h.confidence == best->confidence &&
             candidate_less(h.candidate, best->candidate)))
            best = &h;
    }
    return best;
}

}  // namespace

const std::vector<std::string>& betweenness_keywords() {
    static const std::vector<std::string> kw = {
        "extension", "extensions", "extended", "wrapper",  "wrappers",
        "wrapping",  "plugin",     "plugins",  "plug-in",  "plug-ins",
    };
    return kw;
}

std::optional<Candidate> betweenness_filter(const HitList& hits,
                                            const FeatureContext& ctx,
                                            const DependencyGraph& graph) {
    const auto& kw = betweenness_keywords();
    bool triggered = std::any_of(
        ctx.tokens.begin(), ctx.tokens.end(), [&kw](const CtxToken& t) {
            return std::find(kw.begin(), kw.end(), t.text) != kw.end();
        });
    if (!triggered) return std::nullopt;

    std::set<std::string> hit_apis;
    for (const Hit& h : hits.hits) hit_apis.insert(h.candidate.api_id);

    std::vector<const Hit*> bucket;
    for (const Hit& h : hits.hits) {
        bool extends_other = false;
        for (const std::string& other : hit_apis) {
            if (other != h.candidate.api_id &&
                graph.depends_on(h.candidate.api_id, other)) {
                extends_other = true;
                break;
            }
        }
        if (extends_other) bucket.push_back(&h);
    }
    if (bucket.empty()) return std::nullopt;
    const Hit* best = bucket[0];
    for (const Hit* h : bucket) {
        if (h->candidate.name_sim > best->candidate.name_sim ||
            (h->candidate.name_sim == best->candidate.name_sim &&
             candidate_less(h->candidate, best->candidate)))
            best = h;
    }
    return best->candidate;
}

double influence_score(const Candidate& hit, const MentionCandidateList& mcl,
                       const DependencyGraph& graph) {
    double dependents = static_cast<double>(mcl_dependents(hit, mcl, graph));
    double dependees = static_cast<double>(mcl_dependees(hit, mcl, graph));
    return dependents / (dependees + 1.0);
}

double closeness_score(const Candidate& hit, const MentionCandidateList& mcl,
                       const DependencyGraph& graph) {
    double dependents = static_cast<double>(mcl_dependents(hit, mcl, graph));
    return 1.0 / (dependents + 1.0);
}

FilterDecision intrinsic_filter(const HitList& hits,
                                const MentionCandidateList& mcl,
                                const FeatureContext& ctx,
                                const DependencyGraph& graph) {
    FilterDecision d;
    auto finish = [&hits, &d](const Candidate& c, const char* name) {
        d.chosen = c;
        d.filter_name = name;
        for (const Hit& h : hits.hits) {
            if (h.candidate.api_id == c.api_id &&
                h.candidate.matched_module == c.matched_module)
                d.confidence = h.confidence;
        }
        return d;
    };

    if (auto c = betweenness_filter(hits, ctx, graph))
        return finish(*c, "BETWEENNESS");

    // Distinct hit APIs; hits on the same API through another match route
    // never count as rivals in the tie checks below.
    std::map<std::string, std::pair<double, size_t>> api_scores;
    for (const Hit& h : hits.hits) {
        if (api_scores.count(h.candidate.api_id)) continue;
        api_scores[h.candidate.api_id] = {
            influence_score(h.candidate, mcl, graph),
            mcl_dependents(h.candidate, mcl, graph)};
    }

    // Centrality: unique highest influence, ties broken by most dependents.
    {
        std::pair<double, size_t> best{-1.0, 0};
        std::string best_api;
        int at_best = 0;
        for (const auto& [api, sd] : api_scores) {
            if (sd > best) {
                best = sd;
                best_api = api;
                at_best = 1;
            } else if (sd == best) {
                ++at_best;
            }
        }
        if (at_best == 1 && best.first > 0.0)
            return finish(best_hit_for_api(hits, best_api)->candidate,
                          "CENTRALITY");
    }

    // Closeness: unique lowest score among APIs with in-MCL dependents.
    {
        double best_score = 0.0;
        std::string best_api;
        int at_best = 0;
        for (const auto& [api, sd] : api_scores) {
            if (sd.second == 0) continue;
            double score = 1.0 / (static_cast<double>(sd.second) + 1.0);
            if (best_api.empty() || score < best_score) {
                best_score = score;
                best_api = api;
                at_best = 1;
            } else if (score == best_score) {
                ++at_best;
            }
        }
        if (at_best == 1)
            return finish(best_hit_for_api(hits, best_api)->candidate,
                          "CLOSENESS");
    }

    const Hit* best = nullptr;
    for (const Hit& h : hits.hits) {
        if (!best || h.confidence > best->confidence ||
            (h.confidence == best->confidence &&
             candidate_less(h.candidate, best->candidate)))
            best = &h;
    }
    return finish(best->candidate, "FALLBACK");
}

FilterDecision extrinsic_filter(const HitList& hits, const Mention& mention,
                                const std::optional<NeighborResolution>& prev,
                                const std::optional<NeighborResolution>& next,
                                const ApiDatabase& db, bool relax_gate) {
    FilterDecision d;
    const bool gate_ok = relax_gate ? (prev.has_value() || next.has_value())
                                    : (prev.has_value() && next.has_value());
    if (!gate_ok || hits.hits.empty()) return d;

    // Composition: the preceding API has a module sharing a mention token.
    if (prev) {
        const ApiEntry& p = db.at(prev->api_id);
        std::set<std::string> mention_tokens = tokenize_name(mention.surface);
        for (const ModuleEntry& m : p.modules) {
            bool overlap = false;
            for (const std::string& t : tokenize_name(m.name)) {
                if (mention_tokens.count(t)) {
                    overlap = true;
                    break;
                }
            }
            if (!overlap) continue;
            const Hit* h = nullptr;
            for (const Hit& cand : hits.hits) {
                if (cand.candidate.api_id != p.id) continue;
                bool module_route = cand.candidate.matched_module == m.name;
                if (!h || module_route ||
                    (h->candidate.matched_module != m.name &&
                     cand.confidence > h->confidence))
                    h = &cand;
            }
            if (!h) continue;
            d.chosen = h->candidate;
            d.chosen->matched_module = m.name;
            d.confidence = h->confidence;
            d.filter_name = "COMPOSITION";
            d.overwrote_intrinsic = true;
            return d;
        }
    }

    // Aggregation: nearest neighbor's API depends on exactly one hit.
    {
        const NeighborResolution* nearest = nullptr;
        if (prev && next)
            nearest = next->distance < prev->distance ? &*next : &*prev;
        else
            nearest = prev ? &*prev : &*next;
        std::set<std::string> hit_apis;
        for (const Hit& h : hits.hits) hit_apis.insert(h.candidate.api_id);
        std::vector<std::string> depended;
        for (const std::string& api : hit_apis) {
            if (api != nearest->api_id &&
                db.graph().depends_on(nearest->api_id, api))
                depended.push_back(api);
        }
        if (depended.size() == 1) {
            const Hit* h = best_hit_for_api(hits, depended[0]);
            d.chosen = h->candidate;
            d.confidence = h->confidence;
            d.filter_name = "AGGREGATION";
            d.overwrote_intrinsic = true;
            return d;
        }
    }

    // Projection: exactly one hit depends on a surrounding API.
    {
        std::set<std::string> surrounding;
        if (prev) surrounding.insert(prev->api_id);
        if (next) surrounding.insert(next->api_id);
        std::set<std::string> depending;
        for (const Hit& h : hits.hits) {
            for (const std::string& api : surrounding) {
                if (h.candidate.api_id != api &&
                    db.graph().depends_on(h.candidate.api_id, api))
                    depending.insert(h.candidate.api_id);
            }
        }
        if (depending.size() == 1) {
            const Hit* h = best_hit_for_api(hits, *depending.begin());
            d.chosen = h->candidate;
            d.confidence = h->confidence;
            d.filter_name = "PROJECTION";
            d.overwrote_intrinsic = true;
            return d;
        }
    }
    return d;
}

}  // namespace apilink
