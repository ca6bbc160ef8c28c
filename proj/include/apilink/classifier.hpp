#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/code_link.hpp"
#include "apilink/context_sim.hpp"
#include "apilink/mention_detect.hpp"

namespace apilink {

// Feature order is part of the model file format; never reorder.
struct FeatureVector {
    double name_sim = 0.0;
    double noun_sim = 0.0;
    double verb_sim = 0.0;
    double struct_sim = 0.0;
    double usage_log = 0.0;     // log1p(usage_count)
    double download_log = 0.0;  // log1p(download_count)

    static constexpr int kCount = 6;
    std::array<double, kCount> values() const {
        return {name_sim, noun_sim, verb_sim,
                struct_sim, usage_log, download_log};
    }
};

struct TrainingExample {
    FeatureVector features;
    bool label = false;  // true = the mention resolves to this candidate
};

// Gaussian Naive Bayes over the six features. Variances are maximum
// likelihood (population) estimates with a fixed floor so no feature can
// collapse to zero variance.
class NBModel {
  public:
    static constexpr double kVarianceFloor = 1e-9;

    // Throws input_error on an empty list, a single-class list, or
    // non-finite feature values.
    static NBModel train(const std::vector<TrainingExample>& examples);

    // Posterior probability of the true class, in [0,1].
    double confidence(const FeatureVector& features) const;

    // Text serialization; hexadecimal float fields make the round trip
    // bit-identical. parse_text throws input_error on malformed input.
    std::string serialize_text() const;
    static NBModel parse_text(const std::string& text);

    void save(const std::string& path) const;
    static NBModel load(const std::string& path);

    double prior_true() const { return prior_true_; }
    const std::array<double, FeatureVector::kCount>& mean(bool label) const {
        return label ? mean_true_ : mean_false_;
    }
    const std::array<double, FeatureVector::kCount>& variance(
        bool label) const {
        return label ? var_true_ : var_false_;
    }

  private:
    double prior_true_ = 0.5;
    std::array<double, FeatureVector::kCount> mean_true_{};
    std::array<double, FeatureVector::kCount> var_true_{};
    std::array<double, FeatureVector::kCount> mean_false_{};
    std::array<double, FeatureVector::kCount> var_false_{};
};

// Assembles the six features for one mention/candidate pair.
FeatureVector featurize(const Candidate& candidate, const FeatureContext& ctx,
                        const CandidateDescription& desc,
                        const CodeContext& code,
                        const std::map<std::string, std::set<std::string>>&
                            code_links,
                        const ApiDatabase& db);

// Deterministic two-class sample around fixed per-class Gaussians, for the
// training-free paths (demo model, robustness tests). Half the examples are
// true-labeled. Similarity features are clamped into [0,1].
std::vector<TrainingExample> make_synthetic_examples(size_t n, uint32_t seed);

// One labeled mention/candidate pair, as stored in the corpus file.
struct CorpusRecord {
    std::string thread_id;
    std::string post_id;
    int sentence_index = 0;
    int span_begin = 0;
    int span_end = 0;
    std::string api_id;
    std::string module;  // empty unless the module candidate is labeled
    bool label = false;
};

std::vector<CorpusRecord> load_labeled_corpus(const std::string& path);

}  // namespace apilink
