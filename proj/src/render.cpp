#include "apilink/render.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apilink/errors.hpp"

namespace apilink {
namespace {

using nlohmann::ordered_json;

constexpr const char* kRecordsFormat = "apilink.decisions";
constexpr int kRecordsVersion = 1;

std::string format_confidence(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string html_escape(const std::string& in) {
    std::string out;
    out.reserve(in.size());
    for (char c : in) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

bool attaches_left(const std::string& surface) {
    if (surface.empty()) return false;
    for (char c : surface) {
        if (c != '.' && c != ',' && c != ';' && c != ':' && c != '!' &&
            c != '?' && c != ')' && c != ']' && c != '\'' && c != '"')
            return false;
    }
    return true;
}

// Mentions of one location keyed by starting token.
struct SpanMark {
    const ResolutionDecision* decision;
    int end;
};

std::map<int, SpanMark> marks_for(
    const std::vector<const ResolutionDecision*>& decisions) {
    std::map<int, SpanMark> out;
    for (const ResolutionDecision* d : decisions)
        out[d->mention.span_begin] = {d, d->mention.span_end};
    return out;
}

std::string describe(const ResolutionDecision& d, const ApiDatabase& db,
                     const DescriptionCache& descs) {
    const ApiEntry& api = db.at(d.api_id);
    std::string excerpt;
    const CandidateDescription& cd = descs.get(d.api_id);
    if (!cd.selected.empty()) {
        for (const Token& t : cd.selected[0].tokens) {
            if (!excerpt.empty()) excerpt += ' ';
            excerpt += t.surface;
        }
    } else {
        excerpt = api.portal_description.substr(0, 160);
    }
    std::string tip = "<span class=\"tip\"><b>" + html_escape(api.name) +
                      "</b>";
    if (!d.module.empty())
        tip += " / " + html_escape(d.module);
    if (!excerpt.empty()) tip += "<br>" + html_escape(excerpt);
    tip += "<br><a href=\"" + html_escape(d.url) + "\">" +
           html_escape(d.url) + "</a></span>";
    return tip;
}

void render_tokens(std::string& out, const std::vector<Token>& tokens,
                   const std::map<int, SpanMark>& marks,
                   const ApiDatabase& db, const DescriptionCache& descs) {
    bool first = true;
    for (int t = 0; t < static_cast<int>(tokens.size());) {
        auto it = marks.find(t);
        bool sep = !first && !attaches_left(tokens[t].surface);
        if (sep) out += ' ';
        first = false;
        if (it == marks.end()) {
            out += html_escape(tokens[t].surface);
            ++t;
            continue;
        }
        const ResolutionDecision& d = *it->second.decision;
        std::string text;
        for (int k = t; k < it->second.end; ++k) {
            if (k > t) text += ' ';
            text += tokens[k].surface;
        }
        if (d.is_false) {
            out += "<span class=\"m false\">" + html_escape(text) + "</span>";
        } else {
            out += "<span class=\"m true\">" + html_escape(text) +
                   describe(d, db, descs) + "</span>";
        }
        t = it->second.end;
    }
}

}  // namespace

std::string render_records(const std::vector<ResolutionDecision>& decisions) {
    ordered_json header;
    header["format"] = kRecordsFormat;
    header["version"] = kRecordsVersion;
    std::string out = header.dump() + "\n";
    for (const ResolutionDecision& d : decisions) {
        ordered_json j;
        j["thread_id"] = d.mention.thread_id;
        j["post_id"] = d.mention.post_id;
        j["sentence_index"] = d.mention.sentence_index;
        j["span_begin"] = d.mention.span_begin;
        j["span_end"] = d.mention.span_end;
        j["surface"] = d.mention.surface;
        j["outcome"] = d.is_false ? "FALSE_MENTION" : "RESOLVED";
        j["api_id"] = d.api_id;
        j["module"] = d.module;
        j["url"] = d.url;
        j["provenance"] = d.provenance;
        j["confidence"] = format_confidence(d.confidence);
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<ResolutionDecision> parse_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    std::vector<ResolutionDecision> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw input_error("decisions:" + std::to_string(line_no) + ": " +
                              e.what());
        }
        if (!header_seen) {
            if (j.value("format", std::string()) != kRecordsFormat ||
                j.value("version", -1) != kRecordsVersion)
                throw input_error(
                    "decisions file must start with the apilink.decisions "
                    "version 1 header");
            header_seen = true;
            continue;
        }
        try {
            ResolutionDecision d;
            d.mention.thread_id = j.at("thread_id").get<std::string>();
            d.mention.post_id = j.value("post_id", std::string());
            d.mention.sentence_index = j.value("sentence_index", 0);
            d.mention.span_begin = j.at("span_begin").get<int>();
            d.mention.span_end = j.at("span_end").get<int>();
            d.mention.surface = j.value("surface", std::string());
            d.is_false = j.at("outcome").get<std::string>() == "FALSE_MENTION";
            d.api_id = j.value("api_id", std::string());
            d.module = j.value("module", std::string());
            d.url = j.value("url", std::string());
            d.provenance = j.value("provenance", std::string());
            d.confidence = std::stod(j.value("confidence", std::string("0")));
            out.push_back(std::move(d));
        } catch (const nlohmann::json::exception& e) {
            throw input_error("decisions:" + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    if (!header_seen)
        throw input_error("decisions file is empty or has no header");
    return out;
}

std::vector<ResolutionDecision> load_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open decisions file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_records(buf.str());
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

std::string render_annotated_html(
    const ThreadDoc& doc, const std::vector<ResolutionDecision>& decisions,
    const ApiDatabase& db, const DescriptionCache& descs) {
    // Group decisions by location.
    std::map<std::pair<std::string, int>, std::vector<const ResolutionDecision*>>
        by_location;
    for (const ResolutionDecision& d : decisions) {
        if (d.mention.thread_id != doc.thread_id)
            throw input_error("decision for thread " + d.mention.thread_id +
                              " does not match document " + doc.thread_id);
        by_location[{d.mention.post_id, d.mention.sentence_index}].push_back(&d);
    }

    std::string out =
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
        html_escape(doc.thread_id) +
        "</title>\n<style>\n"
        "body{font-family:sans-serif;max-width:52rem;margin:2rem auto;"
        "padding:0 1rem;}\n"
        ".post{border:1px solid #ccc;border-radius:4px;padding:0.75rem;"
        "margin:1rem 0;}\n"
        ".post h3{margin:0 0 0.5rem;font-size:0.9rem;color:#555;}\n"
        "pre{background:#f4f4f4;padding:0.5rem;overflow-x:auto;}\n"
        ".m{position:relative;}\n"
        ".m.true{background:#b6e8b0;}\n"
        ".m.false{background:#f2b6b6;}\n"
        ".m .tip{display:none;position:absolute;left:0;top:1.4em;z-index:1;"
        "background:#fffbe8;border:1px solid #999;padding:0.4rem;"
        "min-width:16rem;font-size:0.85rem;}\n"
        ".m:hover .tip{display:inline-block;}\n"
        "</style>\n</head>\n<body>\n";

    out += "<h2>";
    auto title_marks = by_location.count({"", 0})
                           ? marks_for(by_location.at({"", 0}))
                           : std::map<int, SpanMark>();
    // Title mentions only; post "" sentence 0 is the title by convention.
    std::map<int, SpanMark> title_only;
    for (const auto& [start, mark] : title_marks)
        if (mark.decision->mention.in_title()) title_only.emplace(start, mark);
    render_tokens(out, doc.title, title_only, db, descs);
    out += "</h2>\n";

    for (const Post& p : doc.posts) {
        out += "<div class=\"post\">\n<h3>" + html_escape(p.post_id) +
               "</h3>\n";
        size_t next_snippet = 0;
        auto flush_snippets = [&](int upto) {
            while (next_snippet < p.snippets.size() &&
                   p.snippets[next_snippet].position <= upto) {
                out += "<pre>" +
                       html_escape(p.snippets[next_snippet].text) +
                       "</pre>\n";
                ++next_snippet;
            }
        };
        for (int s = 0; s < static_cast<int>(p.sentences.size()); ++s) {
            flush_snippets(s);
            auto key = std::make_pair(p.post_id, s);
            std::map<int, SpanMark> marks;
            if (by_location.count(key)) {
                for (const auto& [start, mark] :
                     marks_for(by_location.at(key)))
                    if (!mark.decision->mention.in_title())
                        marks.emplace(start, mark);
            }
            out += "<p>";
            render_tokens(out, p.sentences[s].tokens, marks, db, descs);
            out += "</p>\n";
        }
        flush_snippets(static_cast<int>(p.sentences.size()));
        out += "</div>\n";
    }
    out += "</body>\n</html>\n";
    return out;
}

}  // namespace apilink
