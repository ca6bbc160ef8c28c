#include <set>
#include <string>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace apilink;
using testutil::fixture_db;
using testutil::quick_entry;

namespace {

// Seven entries, four dependency edges: b->a, d->c, d->e, f->a.
ApiDatabase small_db() {
    std::vector<ApiEntry> entries;
    for (const char* id : {"a", "b", "c", "d", "e", "f", "g"})
        entries.push_back(quick_entry(id, std::string("lib-") + id));
    entries[1].dependencies = {"a"};
    entries[3].dependencies = {"c", "e"};
    entries[5].dependencies = {"a"};
    return ApiDatabase(std::move(entries));
}

}  // namespace

TEST_CASE("parse_database reads a minimal entry with defaults") {
    ApiDatabase db = parse_database(
        "{\"id\":\"gson\",\"name\":\"GSON\","
        "\"resource_links\":[\"https://github.com/google/gson\"]}\n",
        "mem");
    REQUIRE(db.entries().size() == 1);
    const ApiEntry& e = db.at("gson");
    CHECK(e.name == "GSON");
    CHECK(e.modules.empty());
    CHECK(e.dependencies.empty());
    CHECK(e.usage_count == 0);
    CHECK(e.download_count == 0);
    CHECK(db.graph().edge_count() == 0);
    CHECK(db.find("gson") != nullptr);
    CHECK(db.find("nope") == nullptr);
    CHECK_THROWS_AS(db.at("nope"), input_error);
}

TEST_CASE("dependency graph answers reachability queries") {
    ApiDatabase db = small_db();
    const DependencyGraph& g = db.graph();
    CHECK(g.edge_count() == 4);
    CHECK(g.depends_on("b", "a"));
    CHECK_FALSE(g.depends_on("a", "b"));
    CHECK(g.dependents_of("a") == std::set<std::string>{"b", "f"});
    CHECK(g.dependents_of("e") == std::set<std::string>{"d"});
    CHECK(g.dependees_of("d") == std::set<std::string>{"c", "e"});
    CHECK(g.dependents_of("g").empty());
    CHECK(g.dependees_of("g").empty());
    CHECK_THROWS_AS(g.depends_on("a", "nope"), input_error);
    CHECK_THROWS_AS(g.dependents_of("nope"), input_error);
}

TEST_CASE("forward dependency references across lines are accepted") {
    ApiDatabase db = parse_database(
        "{\"id\":\"x\",\"name\":\"X\",\"dependencies\":[\"y\"]}\n"
        "{\"id\":\"y\",\"name\":\"Y\"}\n",
        "mem");
    CHECK(db.graph().depends_on("x", "y"));
}

TEST_CASE("dangling dependencies are rejected") {
    CHECK_THROWS_WITH_AS(
        parse_database("{\"id\":\"x\",\"name\":\"X\","
                       "\"dependencies\":[\"ghost\"]}\n",
                       "mem"),
        doctest::Contains("ghost"), input_error);
}

TEST_CASE("duplicate ids are rejected") {
    CHECK_THROWS_AS(parse_database("{\"id\":\"x\",\"name\":\"X\"}\n"
                                   "{\"id\":\"x\",\"name\":\"X2\"}\n",
                                   "mem"),
                    input_error);
}

TEST_CASE("type index entries must be fully qualified") {
    CHECK_THROWS_AS(parse_database("{\"id\":\"x\",\"name\":\"X\","
                                   "\"type_index\":[\"NoDots\"]}\n",
                                   "mem"),
                    input_error);
}

TEST_CASE("parse errors carry the source and line number") {
    CHECK_THROWS_WITH_AS(
        parse_database("{\"id\":\"x\",\"name\":\"X\"}\n{broken\n", "db.jsonl"),
        doctest::Contains("db.jsonl:2"), input_error);
}

TEST_CASE("serialize and parse_database invert each other") {
    std::string once = serialize(fixture_db());
    ApiDatabase again = parse_database(once, "mem");
    CHECK(serialize(again) == once);
    CHECK(again.entries().size() == fixture_db().entries().size());
    CHECK(again.graph().edge_count() == fixture_db().graph().edge_count());
}

TEST_CASE("get_homepage picks the dominant host then the smallest url") {
    ApiEntry e = quick_entry("x", "X");
    e.resource_links = {"https://a.example/x", "https://a.example/y",
                        "https://b.example/z"};
    CHECK(get_homepage(e) == "https://a.example/x");

    e.resource_links = {"https://only.example/page"};
    CHECK(get_homepage(e) == "https://only.example/page");

    e.resource_links = {"https://b.example/z", "https://a.example/q"};
    CHECK(get_homepage(e) == "https://a.example/q");

    e.resource_links.clear();
    CHECK_THROWS_AS(get_homepage(e), input_error);
}

TEST_CASE("module homepages fall back to the owning api") {
    ApiEntry owner = quick_entry("x", "X");
    owner.resource_links = {"https://x.example/home"};
    ModuleEntry with_page{"x-mod", "", "https://x.example/mod"};
    ModuleEntry without{"x-other", "", ""};
    CHECK(get_homepage(owner, with_page) == "https://x.example/mod");
    CHECK(get_homepage(owner, without) == "https://x.example/home");
}

TEST_CASE("the bundled database loads with its dependency edges") {
    const ApiDatabase& db = fixture_db();
    CHECK(db.entries().size() == 9);
    CHECK(db.graph().edge_count() == 5);
    CHECK(db.graph().depends_on("easy-gson", "com.google.gson"));
    CHECK(db.graph().dependents_of("joda-time") ==
          std::set<std::string>{"com.fasterxml.jackson.datatype"});
    CHECK(db.graph().dependents_of("gson-legacy").empty());
}

TEST_CASE("dependents and dependees stay mutually consistent") {
    const DependencyGraph& g = fixture_db().graph();
    for (const ApiEntry& a : fixture_db().entries()) {
        for (const ApiEntry& b : fixture_db().entries()) {
            if (a.id == b.id) continue;
            bool dep = g.depends_on(a.id, b.id);
            CHECK(dep == (g.dependees_of(a.id).count(b.id) == 1));
            CHECK(dep == (g.dependents_of(b.id).count(a.id) == 1));
        }
    }
}
