#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/classifier.hpp"
#include "apilink/code_link.hpp"
#include "apilink/context_sim.hpp"
#include "apilink/filters.hpp"
#include "apilink/mention_detect.hpp"
#include "apilink/text_prep.hpp"

namespace apilink {

struct PipelineConfig {
    int window = 3;
    double tau = 0.5;
    double token_sort_floor = 0.2;
    bool relax_extrinsic_gate = false;
    bool keep_default_types = false;
};

// Provenance values: CLASSIFIER_NO_HIT (false mention), CLASSIFIER_SINGLE_HIT,
// INTRINSIC:<filter>, EXTRINSIC:<filter>, FALLBACK.
struct ResolutionDecision {
    Mention mention;
    bool is_false = true;
    std::string api_id;
    std::string module;  // empty when no module was determined
    std::string url;
    std::string provenance;
    // Chosen candidate's confidence; for a false mention, the best losing
    // candidate's confidence.
    double confidence = 0.0;
};

struct MentionResolution {
    ResolutionDecision decision;
    HitList hits;
};

// Classifier stage plus intrinsic filtering for one mention (pass one of the
// thread resolution). The module scan and URL assignment run here too.
MentionResolution resolve_mention(
    const MentionCandidateList& mcl, const NBModel& model,
    const FeatureContext& ctx, const CodeContext& code,
    const std::map<std::string, std::set<std::string>>& code_links,
    const DescriptionCache& descs, const ApiDatabase& db,
    const PipelineConfig& config);

class Resolver {
  public:
    Resolver(const ApiDatabase& db, NBModel model, PipelineConfig config = {});

    // Pass one: detect, classify, intrinsic-filter every mention. Pass two:
    // extrinsic filters per post against the pass-one resolutions, which may
    // overwrite pass-one decisions. Output is in document order.
    std::vector<ResolutionDecision> resolve_thread(const ThreadDoc& doc) const;

    const ApiDatabase& db() const { return db_; }
    const NBModel& model() const { return model_; }
    const PipelineConfig& config() const { return config_; }
    const MentionDetector& detector() const { return detector_; }
    const DescriptionCache& descriptions() const { return descs_; }

  private:
    const ApiDatabase& db_;
    NBModel model_;
    PipelineConfig config_;
    MentionDetector detector_;
    DescriptionCache descs_;
};

// Joins detected mentions with corpus labels and builds feature vectors.
// Throws input_error when a record matches no detected mention or candidate.
std::vector<TrainingExample> build_training_examples(
    const ApiDatabase& db, const std::vector<ThreadDoc>& threads,
    const std::vector<CorpusRecord>& corpus, const PipelineConfig& config);

}  // namespace apilink
