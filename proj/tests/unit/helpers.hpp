#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "apilink/api_db.hpp"
#include "apilink/classifier.hpp"
#include "apilink/text_prep.hpp"
#include "json.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(APILINK_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline const apilink::ApiDatabase& fixture_db() {
    static apilink::ApiDatabase db =
        apilink::load_database(fixture_path("apidb.jsonl"));
    return db;
}

inline const apilink::NBModel& fixture_model() {
    static apilink::NBModel model =
        apilink::NBModel::load(fixture_path("model.nbmodel"));
    return model;
}

inline apilink::ApiEntry quick_entry(std::string id, std::string name) {
    apilink::ApiEntry e;
    e.id = std::move(id);
    e.name = std::move(name);
    e.resource_links = {"https://" + e.id + ".example/"};
    return e;
}

// Single-post thread; the body may hold fenced code blocks.
inline apilink::ThreadDoc one_post_thread(const std::string& title,
                                          const std::string& body,
                                          const std::string& thread_id = "t",
                                          const std::string& post_id = "p1") {
    nlohmann::json j = {
        {"thread_id", thread_id},
        {"title", title},
        {"posts", {{{"post_id", post_id}, {"body", body}}}},
    };
    return apilink::preprocess_thread(j.dump());
}

inline apilink::ThreadDoc two_post_thread(const std::string& title,
                                          const std::string& body1,
                                          const std::string& body2) {
    nlohmann::json j = {
        {"thread_id", "t"},
        {"title", title},
        {"posts",
         {{{"post_id", "p1"}, {"body", body1}},
          {{"post_id", "p2"}, {"body", body2}}}},
    };
    return apilink::preprocess_thread(j.dump());
}

}  // namespace testutil
