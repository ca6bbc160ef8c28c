#include "apilink/eval.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "apilink/errors.hpp"

namespace apilink {
namespace {

struct Location {
    std::string thread_id;
    std::string post_id;
    int sentence_index;
};

bool same_location(const Mention& m, const GroundTruthRecord& t) {
    return m.thread_id == t.thread_id && m.post_id == t.post_id &&
           m.sentence_index == t.sentence_index;
}

bool spans_match(int b1, int e1, int b2, int e2, bool overlap) {
    if (overlap) return b1 < e2 && b2 < e1;
    return b1 == b2 && e1 == e2;
}

std::string pct(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

double Metrics::precision() const {
    return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
}

double Metrics::recall() const {
    return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
}

double Metrics::f1() const {
    double p = precision();
    double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

std::vector<GroundTruthRecord> load_ground_truth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open ground truth file: " + path);
    std::vector<GroundTruthRecord> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            auto j = nlohmann::json::parse(line);
            GroundTruthRecord r;
            r.thread_id = j.at("thread_id").get<std::string>();
            r.post_id = j.value("post_id", std::string());
            r.sentence_index = j.value("sentence_index", 0);
            r.span_begin = j.at("span_begin").get<int>();
            r.span_end = j.at("span_end").get<int>();
            std::string truth = j.at("truth").get<std::string>();
            if (truth == "FALSE_MENTION") {
                r.is_false = true;
            } else {
                r.is_false = false;
                r.api_id = truth;
                r.module = j.value("module", std::string());
            }
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw input_error(path + ":" + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    return out;
}

EvalReport evaluate(const std::vector<ResolutionDecision>& decisions,
                    const std::vector<GroundTruthRecord>& truth,
                    const EvalOptions& options) {
    EvalReport report;

    // Thread rows exist for every thread seen on either side.
    for (const ResolutionDecision& d : decisions)
        report.per_thread[d.mention.thread_id];
    for (const GroundTruthRecord& t : truth) report.per_thread[t.thread_id];

    std::vector<bool> truth_detected(truth.size(), false);
    std::vector<bool> truth_resolved(truth.size(), false);

    for (const ResolutionDecision& d : decisions) {
        if (d.is_false) continue;
        ThreadScore& row = report.per_thread[d.mention.thread_id];
        bool det_match = false;
        bool res_match = false;
        for (size_t i = 0; i < truth.size(); ++i) {
            const GroundTruthRecord& t = truth[i];
            if (t.is_false || !same_location(d.mention, t)) continue;
            if (!spans_match(d.mention.span_begin, d.mention.span_end,
                             t.span_begin, t.span_end, options.overlap))
                continue;
            if (!truth_detected[i] && !det_match) {
                det_match = true;
                truth_detected[i] = true;
            }
            if (t.api_id == d.api_id && !truth_resolved[i] && !res_match) {
                res_match = true;
                truth_resolved[i] = true;
                if (t.module != d.module) ++row.module_mismatches;
            }
        }
        if (det_match)
            ++row.detection.tp;
        else
            ++row.detection.fp;
        if (res_match)
            ++row.resolution.tp;
        else
            ++row.resolution.fp;
    }
    for (size_t i = 0; i < truth.size(); ++i) {
        if (truth[i].is_false) continue;
        ThreadScore& row = report.per_thread[truth[i].thread_id];
        if (!truth_detected[i]) ++row.detection.fn;
        if (!truth_resolved[i]) ++row.resolution.fn;
    }

    for (const auto& [id, row] : report.per_thread) {
        report.aggregate.detection.tp += row.detection.tp;
        report.aggregate.detection.fp += row.detection.fp;
        report.aggregate.detection.fn += row.detection.fn;
        report.aggregate.resolution.tp += row.resolution.tp;
        report.aggregate.resolution.fp += row.resolution.fp;
        report.aggregate.resolution.fn += row.resolution.fn;
        report.aggregate.module_mismatches += row.module_mismatches;
    }
    return report;
}

namespace {

void append_row(std::string& out, const std::string& name,
                const ThreadScore& row) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-24s %4d %4d %4d %7s %7s %7s   %4d %4d %4d %7s %7s %7s "
                  "%6d\n",
                  name.c_str(), row.detection.tp, row.detection.fp,
                  row.detection.fn, pct(row.detection.precision()).c_str(),
                  pct(row.detection.recall()).c_str(),
                  pct(row.detection.f1()).c_str(), row.resolution.tp,
                  row.resolution.fp, row.resolution.fn,
                  pct(row.resolution.precision()).c_str(),
                  pct(row.resolution.recall()).c_str(),
                  pct(row.resolution.f1()).c_str(), row.module_mismatches);
    out += buf;
}

}  // namespace

std::string format_report_table(const EvalReport& report) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-24s %s    %s\n", "thread",
                  "--------- detection ---------",
                  "-------- resolution ---------");
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "%-24s %4s %4s %4s %7s %7s %7s   %4s %4s %4s %7s %7s %7s "
                  "%6s\n",
                  "", "tp", "fp", "fn", "prec", "rec", "f1", "tp", "fp", "fn",
                  "prec", "rec", "f1", "modmis");
    out += buf;
    for (const auto& [id, row] : report.per_thread) append_row(out, id, row);
    append_row(out, "TOTAL", report.aggregate);
    return out;
}

std::string report_records(const EvalReport& report) {
    nlohmann::ordered_json header;
    header["format"] = "apilink.metrics";
    header["version"] = 1;
    std::string out = header.dump() + "\n";
    auto row_json = [](const std::string& name, const ThreadScore& row) {
        nlohmann::ordered_json j;
        j["thread_id"] = name;
        j["detection"] = {{"tp", row.detection.tp},
                          {"fp", row.detection.fp},
                          {"fn", row.detection.fn},
                          {"precision", pct(row.detection.precision())},
                          {"recall", pct(row.detection.recall())},
                          {"f1", pct(row.detection.f1())}};
        j["resolution"] = {{"tp", row.resolution.tp},
                           {"fp", row.resolution.fp},
                           {"fn", row.resolution.fn},
                           {"precision", pct(row.resolution.precision())},
                           {"recall", pct(row.resolution.recall())},
                           {"f1", pct(row.resolution.f1())}};
        j["module_mismatches"] = row.module_mismatches;
        return j;
    };
    for (const auto& [id, row] : report.per_thread)
        out += row_json(id, row).dump() + "\n";
    out += row_json("TOTAL", report.aggregate).dump() + "\n";
    return out;
}

}  // namespace apilink
