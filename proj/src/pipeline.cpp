#include "apilink/pipeline.hpp"

#include <algorithm>

#include "apilink/errors.hpp"

namespace apilink {
namespace {

// First module whose name equals the mention text as a token sequence.
std::optional<std::string> scan_modules(const ApiEntry& api,
                                        const std::string& mention_surface) {
    std::vector<std::string> mention_seq = tokenize_name_seq(mention_surface);
    for (const ModuleEntry& m : api.modules) {
        if (tokenize_name_seq(m.name) == mention_seq) return m.name;
    }
    return std::nullopt;
}

void assign_module_and_url(ResolutionDecision& d, const ApiDatabase& db,
                           bool module_fixed) {
    const ApiEntry& api = db.at(d.api_id);
    if (!module_fixed) {
        d.module.clear();
        if (auto m = scan_modules(api, d.mention.surface)) d.module = *m;
    }
    if (!d.module.empty()) {
        for (const ModuleEntry& m : api.modules) {
            if (m.name == d.module) {
                d.url = get_homepage(api, m);
                return;
            }
        }
    }
    d.url = get_homepage(api);
}

// Flat token offset of a mention within its post, for neighbor distances.
int flat_offset(const Post& post, const Mention& m) {
    int offset = 0;
    for (int s = 0; s < m.sentence_index &&
                    s < static_cast<int>(post.sentences.size());
         ++s)
        offset += static_cast<int>(post.sentences[s].tokens.size());
    return offset + m.span_begin;
}

}  // namespace

MentionResolution resolve_mention(
    const MentionCandidateList& mcl, const NBModel& model,
    const FeatureContext& ctx, const CodeContext& code,
    const std::map<std::string, std::set<std::string>>& code_links,
    const DescriptionCache& descs, const ApiDatabase& db,
    const PipelineConfig& config) {
    MentionResolution out;
    out.decision.mention = mcl.mention;

    double best_losing = 0.0;
    for (const Candidate& c : mcl.candidates) {
        FeatureVector f = featurize(c, ctx, descs.get(c.api_id), code,
                                    code_links, db);
        double conf = model.confidence(f);
        if (conf > config.tau)
            out.hits.hits.push_back({c, conf});
        else
            best_losing = std::max(best_losing, conf);
    }

    if (out.hits.hits.empty()) {
        out.decision.is_false = true;
        out.decision.provenance = "CLASSIFIER_NO_HIT";
        out.decision.confidence = best_losing;
        return out;
    }

    out.decision.is_false = false;
    if (out.hits.hits.size() == 1) {
        out.decision.api_id = out.hits.hits[0].candidate.api_id;
        out.decision.confidence = out.hits.hits[0].confidence;
        out.decision.provenance = "CLASSIFIER_SINGLE_HIT";
    } else {
        FilterDecision fd = intrinsic_filter(out.hits, mcl, ctx, db.graph());
        out.decision.api_id = fd.chosen->api_id;
        out.decision.confidence = fd.confidence;
        out.decision.provenance = fd.filter_name == "FALLBACK"
                                      ? "FALLBACK"
                                      : "INTRINSIC:" + fd.filter_name;
    }
    assign_module_and_url(out.decision, db, false);
    return out;
}

Resolver::Resolver(const ApiDatabase& db, NBModel model, PipelineConfig config)
    : db_(db),
      model_(std::move(model)),
      config_(config),
      detector_(db, DetectOptions{config.token_sort_floor}),
      descs_(db) {}

std::vector<ResolutionDecision> Resolver::resolve_thread(
    const ThreadDoc& doc) const {
    std::vector<MentionCandidateList> mcls = detector_.detect(doc);
    CodeLinkOptions code_options{config_.keep_default_types};
    std::vector<CodeContext> codes =
        extract_code_contexts(doc, mcls, code_options);

    std::map<std::string, std::vector<CodeSnippet>> post_snippets;
    for (const Post& p : doc.posts) {
        std::vector<CodeSnippet> parsed;
        for (const RawSnippet& rs : p.snippets) {
            CodeSnippet s = parse_snippet(rs.text);
            s.position = rs.position;
            parsed.push_back(std::move(s));
        }
        post_snippets.emplace(p.post_id, std::move(parsed));
    }
    static const std::vector<CodeSnippet> kNoSnippets;

    // Pass one: classifier plus intrinsic filters, in document order.
    std::vector<MentionResolution> pass1;
    std::vector<FeatureContext> contexts;
    pass1.reserve(mcls.size());
    for (size_t i = 0; i < mcls.size(); ++i) {
        FeatureContext ctx =
            build_feature_context(mcls[i].mention, doc, config_.window);
        const auto& snippets = mcls[i].mention.in_title()
                                   ? kNoSnippets
                                   : post_snippets.at(mcls[i].mention.post_id);
        auto links = link_context_types(mcls[i], codes[i], snippets, db_);
        MentionResolution r = resolve_mention(mcls[i], model_, ctx, codes[i],
                                              links, descs_, db_, config_);
        r.hits.mcl_index = i;
        pass1.push_back(std::move(r));
        contexts.push_back(std::move(ctx));
    }

    // Pass two: extrinsic filters, neighbors frozen to pass-one output.
    std::vector<ResolutionDecision> out;
    out.reserve(pass1.size());
    for (size_t i = 0; i < pass1.size(); ++i) out.push_back(pass1[i].decision);

    for (const Post& post : doc.posts) {
        // Pass-one true mentions of this post, in document order.
        std::vector<std::pair<int, size_t>> resolved;
        for (size_t i = 0; i < pass1.size(); ++i) {
            const Mention& m = pass1[i].decision.mention;
            if (m.in_title() || m.post_id != post.post_id) continue;
            if (!pass1[i].decision.is_false)
                resolved.push_back({flat_offset(post, m), i});
        }
        for (size_t i = 0; i < pass1.size(); ++i) {
            const Mention& m = pass1[i].decision.mention;
            if (m.in_title() || m.post_id != post.post_id) continue;
            if (pass1[i].decision.is_false) continue;
            int pos = flat_offset(post, m);
            std::optional<NeighborResolution> prev, next;
            for (const auto& [npos, idx] : resolved) {
                if (idx == i) continue;
                if (npos < pos) {
                    if (!prev || pos - npos < prev->distance)
                        prev = {pass1[idx].decision.api_id, pos - npos};
                } else if (npos > pos) {
                    if (!next || npos - pos < next->distance)
                        next = {pass1[idx].decision.api_id, npos - pos};
                }
            }
            FilterDecision fd = extrinsic_filter(
                pass1[i].hits, m, prev, next, db_,
                config_.relax_extrinsic_gate);
            if (!fd.chosen) continue;
            ResolutionDecision& d = out[i];
            d.api_id = fd.chosen->api_id;
            d.confidence = fd.confidence;
            d.provenance = "EXTRINSIC:" + fd.filter_name;
            bool module_fixed = fd.filter_name == "COMPOSITION";
            if (module_fixed) d.module = fd.chosen->matched_module;
            assign_module_and_url(d, db_, module_fixed);
        }
    }
    return out;
}

std::vector<TrainingExample> build_training_examples(
    const ApiDatabase& db, const std::vector<ThreadDoc>& threads,
    const std::vector<CorpusRecord>& corpus, const PipelineConfig& config) {
    MentionDetector detector(db, DetectOptions{config.token_sort_floor});
    DescriptionCache descs(db);
    CodeLinkOptions code_options{config.keep_default_types};

    struct ThreadData {
        const ThreadDoc* doc;
        std::vector<MentionCandidateList> mcls;
        std::vector<CodeContext> codes;
        std::map<std::string, std::vector<CodeSnippet>> snippets;
    };
    std::map<std::string, ThreadData> by_id;
    for (const ThreadDoc& t : threads) {
        ThreadData data;
        data.doc = &t;
        data.mcls = detector.detect(t);
        data.codes = extract_code_contexts(t, data.mcls, code_options);
        for (const Post& p : t.posts) {
            std::vector<CodeSnippet> parsed;
            for (const RawSnippet& rs : p.snippets) {
                CodeSnippet s = parse_snippet(rs.text);
                s.position = rs.position;
                parsed.push_back(std::move(s));
            }
            data.snippets.emplace(p.post_id, std::move(parsed));
        }
        by_id.emplace(t.thread_id, std::move(data));
    }

    static const std::vector<CodeSnippet> kNoSnippets;
    std::vector<TrainingExample> out;
    for (const CorpusRecord& r : corpus) {
        auto it = by_id.find(r.thread_id);
        if (it == by_id.end())
            throw input_error("corpus references unknown thread " +
                              r.thread_id);
        ThreadData& data = it->second;
        const MentionCandidateList* mcl = nullptr;
        size_t mcl_index = 0;
        for (size_t i = 0; i < data.mcls.size(); ++i) {
            const Mention& m = data.mcls[i].mention;
            if (m.post_id == r.post_id &&
                m.sentence_index == r.sentence_index &&
                m.span_begin == r.span_begin && m.span_end == r.span_end) {
                mcl = &data.mcls[i];
                mcl_index = i;
                break;
            }
        }
        if (!mcl)
            throw input_error("corpus record matches no detected mention in " +
                              r.thread_id + " post '" + r.post_id + "'");
        const Candidate* cand = nullptr;
        for (const Candidate& c : mcl->candidates) {
            if (c.api_id == r.api_id && c.matched_module == r.module)
                cand = &c;
        }
        if (!cand)
            throw input_error("corpus record labels unknown candidate " +
                              r.api_id + " for mention '" +
                              mcl->mention.surface + "' in " + r.thread_id);
        FeatureContext ctx =
            build_feature_context(mcl->mention, *data.doc, config.window);
        const auto& snips = mcl->mention.in_title()
                                ? kNoSnippets
                                : data.snippets.at(mcl->mention.post_id);
        auto links = link_context_types(*mcl, data.codes[mcl_index], snips, db);
        out.push_back({featurize(*cand, ctx, descs.get(cand->api_id),
                                 data.codes[mcl_index], links, db),
                       r.label});
    }
    return out;
}

}  // namespace apilink
