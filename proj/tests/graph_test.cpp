#include <doctest.h>

#include <algorithm>
#include <set>

#include "comprec/graph.hpp"
#include "fixtures.hpp"

using namespace comprec;

TEST_CASE("the eight-record fixture builds an 8-node graph") {
    auto g = fixtures::fig_graph();
    CHECK(g.nodes.size() == 8);
    CHECK(g.edges.size() == 16);  // all co-used pairs, enumerated by hand
}

TEST_CASE("usage counts and neighborhoods match the record list") {
    auto g = fixtures::fig_graph();
    NodeId v1 = fixtures::nid(g, "v1");
    NodeId v4 = fixtures::nid(g, "v4");

    CHECK(times(g, v4) == 6);  // R1 R2 R4 R5 R6 R7
    CHECK(times(g, v1) == 2);  // R1 R3
    CHECK(times_pair(g, v1, v4) == 1);  // R1 only
    CHECK(times_pair(g, v4, v1) == 1);

    std::set<std::string> nbrs;
    for (NodeId u : g.adjacency[static_cast<std::size_t>(v4)])
        nbrs.insert(g.node(u).api_id);
    CHECK(nbrs == std::set<std::string>{"v1", "v2", "v3", "v5", "v6", "v7"});
}

TEST_CASE("times_pair rejects self pairs and bad ids") {
    auto g = fixtures::fig_graph();
    CHECK_THROWS_AS(times_pair(g, 0, 0), RangeError);
    CHECK_THROWS_AS(times(g, -1), RangeError);
    CHECK_THROWS_AS(times(g, 99), RangeError);
    CHECK(times_pair(g, fixtures::nid(g, "v1"), fixtures::nid(g, "v8")) == 0);
}

TEST_CASE("an empty record list produces an empty graph") {
    auto g = build_graph({}, fixtures::fig_catalog());
    CHECK(g.nodes.empty());
    CHECK(g.edges.empty());
}

TEST_CASE("build_graph rejects records that miss the catalog") {
    std::vector<MashupRecord> records{{"m", {"nope"}}};
    CHECK_THROWS_AS(build_graph(records, fixtures::fig_catalog()), ReferenceError);
}

TEST_CASE("keyword_cover_sets resolves the fixture query") {
    auto g = fixtures::fig_graph();
    auto cover = keyword_cover_sets(g, Query{{"k1", "k2", "k9"}, {}});
    auto apis = [&](const std::vector<NodeId>& ids) {
        std::set<std::string> out;
        for (NodeId v : ids) out.insert(g.node(v).api_id);
        return out;
    };
    CHECK(apis(cover.at("k1")) == std::set<std::string>{"v1"});
    CHECK(apis(cover.at("k2")) == std::set<std::string>{"v2"});
    CHECK(apis(cover.at("k9")) == std::set<std::string>{"v5", "v6"});
}

TEST_CASE("cover set is empty for an absent keyword, full for a universal one") {
    auto g = fixtures::fig_graph();
    auto cover = keyword_cover_sets(g, Query{{"nothing"}, {}});
    CHECK(cover.at("nothing").empty());

    std::vector<CatalogEntry> catalog{{"a", {"w"}}, {"b", {"w"}}, {"c", {"w"}}};
    std::vector<MashupRecord> records{{"m1", {"a", "b"}}, {"m2", {"b", "c"}}};
    auto g2 = build_graph(records, catalog);
    CHECK(keyword_cover_sets(g2, Query{{"w"}, {}}).at("w").size() == 3);
}

TEST_CASE("keyword mode picks functional or all category keywords") {
    auto functional = fixtures::fig_graph(KeywordMode::functional_only);
    auto all = fixtures::fig_graph(KeywordMode::all_categories);
    NodeId v1f = fixtures::nid(functional, "v1");
    NodeId v1a = fixtures::nid(all, "v1");
    CHECK(functional.node(v1f).keywords == std::vector<std::string>{"k1"});
    CHECK(all.node(v1a).keywords == std::vector<std::string>{"k1", "k3"});
}

TEST_CASE("graph invariants hold on random corpora") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        auto corpus = fixtures::random_corpus(rng, 4 + static_cast<int>(rng.next_below(30)),
                                              3 + static_cast<int>(rng.next_below(40)), 8, 2,
                                              5, trial % 2 == 0);
        auto g = build_graph(corpus.records, corpus.catalog);

        // Adjacency symmetry.
        for (std::size_t u = 0; u < g.adjacency.size(); ++u)
            for (NodeId v : g.adjacency[u]) {
                const auto& back = g.adjacency[static_cast<std::size_t>(v)];
                CHECK(std::find(back.begin(), back.end(), static_cast<NodeId>(u)) !=
                      back.end());
            }

        // Count consistency: sum of node usages equals total record length.
        long long total_use = 0;
        for (const auto& n : g.nodes) total_use += n.times_used;
        long long total_apis = 0;
        for (const auto& r : corpus.records) total_apis += static_cast<long long>(r.apis.size());
        CHECK(total_use == total_apis);
        for (const auto& e : g.edges) CHECK(e.co_invocations >= 1);

        // Keyword index round-trips against node keyword sets.
        for (const auto& [kw, ids] : g.keyword_index)
            for (NodeId v : ids) {
                const auto& kws = g.node(v).keywords;
                CHECK(std::find(kws.begin(), kws.end(), kw) != kws.end());
            }
        for (const auto& n : g.nodes)
            for (const auto& kw : n.keywords) {
                const auto& ids = g.keyword_index.at(kw);
                CHECK(std::find(ids.begin(), ids.end(), n.id) != ids.end());
            }
    }
}

TEST_CASE("content_hash changes when counts change") {
    auto g1 = fixtures::fig_graph();
    auto g2 = fixtures::fig_graph();
    CHECK(content_hash(g1) == content_hash(g2));
    g2.nodes[0].times_used += 1;
    CHECK(content_hash(g1) != content_hash(g2));
}
