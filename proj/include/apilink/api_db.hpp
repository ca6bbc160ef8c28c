#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace apilink {

struct ModuleEntry {
    std::string name;
    std::string description;
    std::string homepage;  // optional; empty means fall back to the owner API
};

struct ApiEntry {
    std::string id;
    std::string name;
    std::vector<ModuleEntry> modules;
    std::vector<std::string> resource_links;
    std::string portal_description;
    std::string homepage_description;
    std::string license_org;
    std::vector<std::string> dependencies;  // ids of APIs this one depends on
    std::int64_t usage_count = 0;
    std::int64_t download_count = 0;
    std::vector<std::string> type_index;  // fully qualified type names
};

// Directed edges; a -> b means a depends on b.
class DependencyGraph {
  public:
    void add_node(const std::string& id);
    void add_edge(const std::string& from, const std::string& to);

    bool depends_on(const std::string& a, const std::string& b) const;
    std::set<std::string> dependents_of(const std::string& id) const;
    std::set<std::string> dependees_of(const std::string& id) const;
    size_t edge_count() const;

  private:
    void require_node(const std::string& id) const;
    std::map<std::string, std::set<std::string>> forward_;
    std::map<std::string, std::set<std::string>> reverse_;
};

class ApiDatabase {
  public:
    explicit ApiDatabase(std::vector<ApiEntry> entries);

    const std::vector<ApiEntry>& entries() const { return entries_; }
    const ApiEntry* find(const std::string& id) const;
    const ApiEntry& at(const std::string& id) const;
    const DependencyGraph& graph() const { return graph_; }

  private:
    std::vector<ApiEntry> entries_;
    std::map<std::string, size_t> index_;
    DependencyGraph graph_;
};

// One JSON record per line; field names are frozen in docs/formats.md.
// Throws input_error with the offending line number on parse or validation
// failures. Entries may reference ids defined on later lines.
ApiDatabase load_database(const std::string& path);
ApiDatabase parse_database(const std::string& text, const std::string& source);

// Inverse of parse_database on a validated database.
std::string serialize(const ApiDatabase& db);

// Deterministic resource URL for an API: group links by host, take the host
// with the most links (ties to the lexicographically smallest host), then the
// smallest URL within it. A module uses its own homepage when set and falls
// back to its owner's links otherwise. Throws input_error when no link exists.
std::string get_homepage(const ApiEntry& api);
std::string get_homepage(const ApiEntry& owner, const ModuleEntry& module);

}  // namespace apilink
