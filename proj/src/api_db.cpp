#include "apilink/api_db.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apilink/errors.hpp"

namespace apilink {
namespace {

using nlohmann::ordered_json;

std::string url_host(const std::string& url) {
    std::string rest = url;
    size_t scheme = rest.find("://");
    if (scheme != std::string::npos) rest = rest.substr(scheme + 3);
    size_t slash = rest.find('/');
    if (slash != std::string::npos) rest = rest.substr(0, slash);
    std::transform(rest.begin(), rest.end(), rest.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return rest;
}

std::string pick_most_frequent(const std::vector<std::string>& links) {
    std::map<std::string, std::vector<std::string>> by_host;
    for (const std::string& l : links) by_host[url_host(l)].push_back(l);
    const std::vector<std::string>* best = nullptr;
    for (const auto& [host, urls] : by_host) {
        if (!best || urls.size() > best->size()) best = &urls;
    }
    return *std::min_element(best->begin(), best->end());
}

std::vector<std::string> string_list(const ordered_json& j, const char* field) {
    std::vector<std::string> out;
    if (!j.contains(field)) return out;
    for (const auto& v : j.at(field)) out.push_back(v.get<std::string>());
    return out;
}

ApiEntry parse_entry(const ordered_json& j) {
    ApiEntry e;
    e.id = j.at("id").get<std::string>();
    e.name = j.at("name").get<std::string>();
    if (e.id.empty()) throw input_error("entry id must be non-empty");
    if (e.name.empty()) throw input_error("entry name must be non-empty");
    if (j.contains("modules")) {
        for (const auto& jm : j.at("modules")) {
            ModuleEntry m;
            m.name = jm.at("name").get<std::string>();
            m.description = jm.value("description", std::string());
            m.homepage = jm.value("homepage", std::string());
            if (m.name.empty())
                throw input_error("entry " + e.id + ": empty module name");
            e.modules.push_back(std::move(m));
        }
    }
    std::set<std::string> module_names;
    for (const ModuleEntry& m : e.modules) {
        if (!module_names.insert(m.name).second)
            throw input_error("entry " + e.id + ": duplicate module name " +
                              m.name);
    }
    e.resource_links = string_list(j, "resource_links");
    e.portal_description = j.value("portal_description", std::string());
    e.homepage_description = j.value("homepage_description", std::string());
    e.license_org = j.value("license_org", std::string());
    e.dependencies = string_list(j, "dependencies");
    e.usage_count = j.value("usage_count", std::int64_t{0});
    e.download_count = j.value("download_count", std::int64_t{0});
    if (e.usage_count < 0 || e.download_count < 0)
        throw input_error("entry " + e.id + ": counts must be >= 0");
    e.type_index = string_list(j, "type_index");
    for (const std::string& t : e.type_index) {
        if (t.find('.') == std::string::npos)
            throw input_error("entry " + e.id + ": type_index entry " + t +
                              " is not fully qualified");
    }
    return e;
}

ordered_json entry_to_json(const ApiEntry& e) {
    ordered_json j;
    j["id"] = e.id;
    j["name"] = e.name;
    j["modules"] = ordered_json::array();
    for (const ModuleEntry& m : e.modules) {
        ordered_json jm;
        jm["name"] = m.name;
        jm["description"] = m.description;
        jm["homepage"] = m.homepage;
        j["modules"].push_back(std::move(jm));
    }
    j["resource_links"] = e.resource_links;
    j["portal_description"] = e.portal_description;
    j["homepage_description"] = e.homepage_description;
    j["license_org"] = e.license_org;
    j["dependencies"] = e.dependencies;
    j["usage_count"] = e.usage_count;
    j["download_count"] = e.download_count;
    j["type_index"] = e.type_index;
    return j;
}

}  // namespace

void DependencyGraph::add_node(const std::string& id) {
    forward_[id];
    reverse_[id];
}

void DependencyGraph::add_edge(const std::string& from, const std::string& to) {
    require_node(from);
    require_node(to);
    if (from == to)
        throw input_error("dependency graph: self edge on " + from);
    forward_[from].insert(to);
    reverse_[to].insert(from);
}

void DependencyGraph::require_node(const std::string& id) const {
    if (!forward_.count(id))
        throw input_error("dependency graph: unknown id " + id);
}

bool DependencyGraph::depends_on(const std::string& a,
                                 const std::string& b) const {
    require_node(a);
    require_node(b);
    return forward_.at(a).count(b) > 0;
}

std::set<std::string> DependencyGraph::dependents_of(
    const std::string& id) const {
    require_node(id);
    return reverse_.at(id);
}

std::set<std::string> DependencyGraph::dependees_of(
    const std::string& id) const {
    require_node(id);
    return forward_.at(id);
}

size_t DependencyGraph::edge_count() const {
    size_t n = 0;
    for (const auto& [id, out] : forward_) n += out.size();
    return n;
}

ApiDatabase::ApiDatabase(std::vector<ApiEntry> entries)
    : entries_(std::move(entries)) {
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (!index_.emplace(entries_[i].id, i).second)
            throw input_error("duplicate api id: " + entries_[i].id);
        graph_.add_node(entries_[i].id);
    }
    for (const ApiEntry& e : entries_) {
        for (const std::string& dep : e.dependencies) {
            if (!index_.count(dep))
                throw input_error("entry " + e.id +
                                  ": dangling dependency " + dep);
            graph_.add_edge(e.id, dep);
        }
    }
}

const ApiEntry* ApiDatabase::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &entries_[it->second];
}

const ApiEntry& ApiDatabase::at(const std::string& id) const {
    const ApiEntry* e = find(id);
    if (!e) throw input_error("unknown api id: " + id);
    return *e;
}

ApiDatabase parse_database(const std::string& text, const std::string& source) {
    std::vector<ApiEntry> entries;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            entries.push_back(parse_entry(ordered_json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw input_error(source + ":" + std::to_string(line_no) + ": " +
                              e.what());
        } catch (const input_error& e) {
            throw input_error(source + ":" + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    try {
        return ApiDatabase(std::move(entries));
    } catch (const input_error& e) {
        throw input_error(source + ": " + e.what());
    }
}

ApiDatabase load_database(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open database file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_database(buf.str(), path);
}

std::string serialize(const ApiDatabase& db) {
    std::string out;
    for (const ApiEntry& e : db.entries()) {
        out += entry_to_json(e).dump();
        out += '\n';
    }
    return out;
}

std::string get_homepage(const ApiEntry& api) {
    if (api.resource_links.empty())
        throw input_error("api " + api.id + " has no resource links");
    return pick_most_frequent(api.resource_links);
}

std::string get_homepage(const ApiEntry& owner, const ModuleEntry& module) {
    if (!module.homepage.empty()) return module.homepage;
    return get_homepage(owner);
}

}  // namespace apilink
