#include "apilink/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "apilink/errors.hpp"

namespace apilink {
namespace {

constexpr int kN = FeatureVector::kCount;

std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw input_error("model file: bad number: " + s);
    return v;
}

void append_row(std::string& out, const char* label,
                const std::array<double, kN>& row) {
    out += label;
    for (double v : row) {
        out += ' ';
        out += hex_double(v);
    }
    out += '\n';
}

std::array<double, kN> read_row(std::istringstream& in, const char* label) {
    std::string key;
    in >> key;
    if (key != label)
        throw input_error(std::string("model file: expected ") + label +
                          ", got " + key);
    std::array<double, kN> row{};
    for (double& v : row) {
        std::string tok;
        if (!(in >> tok)) throw input_error("model file: truncated row");
        v = parse_double(tok);
    }
    return row;
}

double log_gaussian(double x, double mean, double var) {
    static const double kLog2Pi = std::log(2.0 * std::acos(-1.0));
    double d = x - mean;
    return -0.5 * (kLog2Pi + std::log(var)) - d * d / (2.0 * var);
}

class BoxMuller {
  public:
    explicit BoxMuller(uint32_t seed) : rng_(seed) {}

    double normal(double mean, double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::acos(-1.0) * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

  private:
    double uniform() {
        // (0,1) exclusive so the log above stays finite.
        return (static_cast<double>(rng_()) + 0.5) / 4294967296.0;
    }
    std::mt19937 rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

NBModel NBModel::train(const std::vector<TrainingExample>& examples) {
    if (examples.empty()) throw input_error("training set is empty");
    size_t n_true = 0;
    for (const TrainingExample& e : examples) {
        for (double v : e.features.values()) {
            if (!std::isfinite(v))
                throw input_error("training example has a non-finite feature");
        }
        if (e.label) ++n_true;
    }
    size_t n_false = examples.size() - n_true;
    if (n_true == 0 || n_false == 0)
        throw input_error("training set needs both classes");

    NBModel m;
    m.prior_true_ =
        static_cast<double>(n_true) / static_cast<double>(examples.size());

    auto fit = [&examples](bool label, std::array<double, kN>& mean,
                           std::array<double, kN>& var) {
        size_t count = 0;
        mean.fill(0.0);
        var.fill(0.0);
        for (const TrainingExample& e : examples) {
            if (e.label != label) continue;
            ++count;
            auto v = e.features.values();
            for (int i = 0; i < kN; ++i) mean[i] += v[i];
        }
        for (int i = 0; i < kN; ++i) mean[i] /= static_cast<double>(count);
        for (const TrainingExample& e : examples) {
            if (e.label != label) continue;
            auto v = e.features.values();
            for (int i = 0; i < kN; ++i) {
                double d = v[i] - mean[i];
                var[i] += d * d;
            }
        }
        for (int i = 0; i < kN; ++i) {
            var[i] /= static_cast<double>(count);
            if (var[i] < kVarianceFloor) var[i] = kVarianceFloor;
        }
    };
    fit(true, m.mean_true_, m.var_true_);
    fit(false, m.mean_false_, m.var_false_);
    return m;
}

double NBModel::confidence(const FeatureVector& features) const {
    auto v = features.values();
    double log_true = std::log(prior_true_);
    double log_false = std::log(1.0 - prior_true_);
    for (int i = 0; i < kN; ++i) {
        log_true += log_gaussian(v[i], mean_true_[i], var_true_[i]);
        log_false += log_gaussian(v[i], mean_false_[i], var_false_[i]);
    }
    // posterior(true) = 1 / (1 + exp(log_false - log_true))
    double diff = log_false - log_true;
    if (diff > 700.0) return 0.0;
    if (diff < -700.0) return 1.0;
    return 1.0 / (1.0 + std::exp(diff));
}

std::string NBModel::serialize_text() const {
    std::string out = "apilink.nbmodel 1\n";
    out += "features " + std::to_string(kN) + "\n";
    out += "prior_true " + hex_double(prior_true_) + "\n";
    append_row(out, "true_mean", mean_true_);
    append_row(out, "true_var", var_true_);
    append_row(out, "false_mean", mean_false_);
    append_row(out, "false_var", var_false_);
    return out;
}

NBModel NBModel::parse_text(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "apilink.nbmodel" || version != 1)
        throw input_error("not an apilink.nbmodel version 1 file");
    std::string key;
    int n = 0;
    in >> key >> n;
    if (key != "features" || n != kN)
        throw input_error("model file: unsupported feature count");
    std::string tok;
    in >> key >> tok;
    if (key != "prior_true") throw input_error("model file: missing prior");
    NBModel m;
    m.prior_true_ = parse_double(tok);
    if (!(m.prior_true_ > 0.0) || !(m.prior_true_ < 1.0))
        throw input_error("model file: prior_true must be inside (0,1)");
    m.mean_true_ = read_row(in, "true_mean");
    m.var_true_ = read_row(in, "true_var");
    m.mean_false_ = read_row(in, "false_mean");
    m.var_false_ = read_row(in, "false_var");
    for (int i = 0; i < kN; ++i) {
        if (!(m.var_true_[i] > 0.0) || !(m.var_false_[i] > 0.0))
            throw input_error("model file: variances must be positive");
    }
    return m;
}

void NBModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write model file: " + path);
    out << serialize_text();
}

NBModel NBModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

FeatureVector featurize(const Candidate& candidate, const FeatureContext& ctx,
                        const CandidateDescription& desc,
                        const CodeContext& code,
                        const std::map<std::string, std::set<std::string>>&
                            code_links,
                        const ApiDatabase& db) {
    FeatureVector f;
    f.name_sim = candidate.name_sim;
    auto [noun, verb] = context_similarity(ctx, desc);
    f.noun_sim = noun;
    f.verb_sim = verb;
    f.struct_sim = structural_similarity(code, candidate.api_id, code_links);
    const ApiEntry& e = db.at(candidate.api_id);
    f.usage_log = std::log1p(static_cast<double>(e.usage_count));
    f.download_log = std::log1p(static_cast<double>(e.download_count));
    return f;
}

std::vector<TrainingExample> make_synthetic_examples(size_t n, uint32_t seed) {
    BoxMuller gen(seed);
    std::vector<TrainingExample> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        bool label = i % 2 == 0;
        FeatureVector f;
        if (label) {
            f.name_sim = clamp01(gen.normal(0.80, 0.15));
            f.noun_sim = clamp01(gen.normal(0.45, 0.15));
            f.verb_sim = clamp01(gen.normal(0.30, 0.15));
            f.struct_sim = clamp01(gen.normal(0.50, 0.25));
            f.usage_log = std::max(0.0, gen.normal(6.0, 1.0));
            f.download_log = std::max(0.0, gen.normal(11.0, 1.5));
        } else {
            f.name_sim = clamp01(gen.normal(0.35, 0.15));
            f.noun_sim = clamp01(gen.normal(0.08, 0.06));
            f.verb_sim = clamp01(gen.normal(0.05, 0.05));
            f.struct_sim = clamp01(gen.normal(0.05, 0.08));
            f.usage_log = std::max(0.0, gen.normal(3.0, 1.0));
            f.download_log = std::max(0.0, gen.normal(6.0, 1.5));
        }
        out.push_back({f, label});
    }
    return out;
}

std::vector<CorpusRecord> load_labeled_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open corpus file: " + path);
    std::vector<CorpusRecord> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            auto j = nlohmann::json::parse(line);
            CorpusRecord r;
            r.thread_id = j.at("thread_id").get<std::string>();
            r.post_id = j.value("post_id", std::string());
            r.sentence_index = j.value("sentence_index", 0);
            r.span_begin = j.at("span_begin").get<int>();
            r.span_end = j.at("span_end").get<int>();
            r.api_id = j.at("api_id").get<std::string>();
            r.module = j.value("module", std::string());
            r.label = j.at("label").get<bool>();
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw input_error(path + ":" + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    return out;
}

}  // namespace apilink
