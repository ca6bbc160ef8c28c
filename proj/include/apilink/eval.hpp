#pragma once

#include <map>
#include <string>
#include <vector>

#include "apilink/pipeline.hpp"

namespace apilink {

struct GroundTruthRecord {
    std::string thread_id;
    std::string post_id;
    int sentence_index = 0;
    int span_begin = 0;
    int span_end = 0;
    bool is_false = false;  // FALSE_MENTION truth
    std::string api_id;     // set when is_false is false
    std::string module;     // optional
};

std::vector<GroundTruthRecord> load_ground_truth(const std::string& path);

struct Metrics {
    int tp = 0;
    int fp = 0;
    int fn = 0;

    double precision() const;
    double recall() const;
    double f1() const;
};

struct ThreadScore {
    Metrics detection;
    Metrics resolution;
    int module_mismatches = 0;
};

struct EvalReport {
    std::map<std::string, ThreadScore> per_thread;
    ThreadScore aggregate;
};

struct EvalOptions {
    // Count a predicted span as matching a truth span when they merely
    // overlap instead of requiring exact equality.
    bool overlap = false;
};

// Detection scores compare predicted true mentions against truth true
// mentions by span. Resolution additionally requires the api id; a correct
// api with a different module counts as resolved but is tallied separately.
EvalReport evaluate(const std::vector<ResolutionDecision>& decisions,
                    const std::vector<GroundTruthRecord>& truth,
                    const EvalOptions& options = {});

// Human-readable table, one row per thread plus a TOTAL row.
std::string format_report_table(const EvalReport& report);

// Line-delimited records mirroring the table.
std::string report_records(const EvalReport& report);

}  // namespace apilink
