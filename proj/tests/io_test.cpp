#include <doctest.h>

#include "comprec/io.hpp"
#include "fixtures.hpp"

using namespace comprec;

TEST_CASE("graph files round-trip byte-exactly") {
    fixtures::TempDir tmp;
    auto g = fixtures::fig_graph();
    auto path = tmp.file("g.graph");
    save_graph(g, path);
    auto loaded = load_graph(path);
    CHECK(serialize_graph(loaded) == serialize_graph(g));
    CHECK(content_hash(loaded) == content_hash(g));
    CHECK(loaded.keyword_index.at("k9").size() == 2);
    CHECK(times_pair(loaded, fixtures::nid(loaded, "v1"), fixtures::nid(loaded, "v4")) == 1);
}

TEST_CASE("tampered graph files are rejected") {
    fixtures::TempDir tmp;
    auto g = fixtures::fig_graph();
    std::string text = serialize_graph(g);
    auto pos = text.find("\tv4\t6\t");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 6, "\tv4\t7\t");  // bump a usage count behind the hash
    auto path = tmp.write("bad.graph", text);
    CHECK_THROWS_AS(load_graph(path), ConsistencyError);
    CHECK_THROWS_AS(load_graph(tmp.file("missing.graph")), IoError);
}

TEST_CASE("supergraph files round-trip and rebuild derived state") {
    fixtures::TempDir tmp;
    auto g = fixtures::fig_graph();
    for (int p : {1, 4}) {
        auto sg = compress(g, p);
        auto path = tmp.file("s" + std::to_string(p) + ".sgraph");
        save_supergraph(sg, path);
        auto loaded = load_supergraph(path);
        CHECK(serialize_supergraph(loaded) == serialize_supergraph(sg));
        CHECK(loaded.granularity == p);
        REQUIRE(loaded.supernodes.size() == sg.supernodes.size());
        for (std::size_t i = 0; i < sg.supernodes.size(); ++i) {
            CHECK(loaded.supernodes[i].ancestors == sg.supernodes[i].ancestors);
            CHECK(loaded.supernodes[i].keywords == sg.supernodes[i].keywords);
            CHECK(loaded.supernodes[i].weight == sg.supernodes[i].weight);
        }
        CHECK(loaded.owner == sg.owner);
        CHECK(loaded.adjacency == sg.adjacency);
    }
}

TEST_CASE("embedding files round-trip bit-exactly") {
    fixtures::TempDir tmp;
    auto g = fixtures::fig_graph();
    EmbeddingParams p;
    p.dimension = 12;
    p.walks_per_node = 3;
    p.walk_length = 6;
    p.window = 2;
    p.epochs = 2;
    p.seed = 33;
    auto model = train_embeddings(g, p);
    auto path = tmp.file("m.emb");
    save_embeddings(model, path);
    auto loaded = load_embeddings(path);
    CHECK(loaded.dimension == model.dimension);
    CHECK(loaded.graph_hash == model.graph_hash);
    CHECK(loaded.data == model.data);
    CHECK(loaded.params.seed == model.params.seed);
    CHECK(loaded.params.learning_rate == model.params.learning_rate);
}

TEST_CASE("query files round-trip") {
    fixtures::TempDir tmp;
    std::vector<Query> queries{{{"k1", "k2"}, std::string("R1")}, {{"k9"}, {}}};
    auto path = tmp.file("q.queries");
    save_queries(queries, path);
    auto loaded = load_queries(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].keywords == queries[0].keywords);
    CHECK(loaded[0].source_mashup == queries[0].source_mashup);
    CHECK(loaded[1].keywords == queries[1].keywords);
    CHECK_FALSE(loaded[1].source_mashup.has_value());
    CHECK(serialize_queries(loaded) == serialize_queries(queries));
}

TEST_CASE("candidate files round-trip through api ids") {
    fixtures::TempDir tmp;
    auto g = fixtures::fig_graph();
    auto sg = compress(g, 1);
    const std::vector<std::string> q{"k1", "k2", "k9"};
    CandidateSet cs;
    cs.graph_hash = content_hash(g);
    cs.keywords = q;
    for (const auto& t : solve_mgst(sg, q, 5))
        cs.compositions.push_back(decompress_and_prune(t, sg, q));
    auto path = tmp.file("c.cands");
    save_candidates(cs, g, path);
    auto loaded = load_candidates(path, g);
    CHECK(loaded.graph_hash == cs.graph_hash);
    CHECK(loaded.keywords == cs.keywords);
    REQUIRE(loaded.compositions.size() == cs.compositions.size());
    for (std::size_t i = 0; i < cs.compositions.size(); ++i)
        CHECK(loaded.compositions[i].nodes == cs.compositions[i].nodes);
    CHECK(serialize_candidates(loaded, g) == serialize_candidates(cs, g));

    // A candidate list from a different catalog cannot resolve.
    std::vector<CatalogEntry> other_cat{{"x", {"k"}}};
    std::vector<MashupRecord> other_rec{{"m", {"x"}}};
    auto other = build_graph(other_rec, other_cat);
    CHECK_THROWS_AS(load_candidates(path, other), ReferenceError);
}

TEST_CASE("recommendation files round-trip") {
    fixtures::TempDir tmp;
    auto g = fixtures::fig_graph();
    RecommendationFile rf;
    rf.graph_hash = content_hash(g);
    rf.keywords = {"k1", "k9"};
    rf.k = 2;
    rf.lambda = 0.3;
    rf.clusters = 4;
    rf.seed = 77;
    rf.items.push_back(RecommendedItem{{0, 2}, 4.25, 1.0, 1, 0.55});
    rf.items.push_back(RecommendedItem{{5}, 1.0, 0.0, 3, -0.25});
    auto path = tmp.file("r.topk");
    save_recommendations(rf, g, path);
    auto loaded = load_recommendations(path, g);
    CHECK(serialize_recommendations(loaded, g) == serialize_recommendations(rf, g));
    CHECK(loaded.items[0].nodes == rf.items[0].nodes);
    CHECK(loaded.items[1].mmr == rf.items[1].mmr);
}

TEST_CASE("report files round-trip byte-exactly") {
    fixtures::TempDir tmp;
    BenchmarkReport rep;
    rep.k = 5;
    rep.lambda = 0.5;
    rep.granularity = 4;
    rep.max_candidates = 500;
    rep.k_clusters = 0;
    rep.seed = 123456789;
    rep.graph_hash = 0xabcdef0123456789ULL;
    QueryMetrics row;
    row.keywords = {"k1", "k2"};
    row.candidate_count = 17;
    row.list_size = 5;
    row.mp = 0.25;
    row.mid = 0.8125;
    row.ms = 3.5;
    row.mq = 12.75;
    row.mq_norm = 0.625;
    row.tc = 0.001953125;
    row.success = true;
    rep.rows.push_back(row);
    row.mp = -1.0;
    row.success = false;
    rep.rows.push_back(row);
    rep.mp = 0.25;
    rep.mq = 12.75;
    rep.mq_norm = 0.625;
    rep.mid = 0.8125;
    rep.coverage = 1.0 / 3.0;
    rep.sr = 0.5;
    rep.ms = 3.5;
    rep.mean_tc = 0.0009765625;

    auto path = tmp.file("b.report");
    save_report(rep, path);
    auto loaded = load_report(path);
    CHECK(serialize_report(loaded) == serialize_report(rep));
    CHECK(loaded.rows.size() == 2);
    CHECK(loaded.rows[0].mp == rep.rows[0].mp);
    CHECK(loaded.coverage == rep.coverage);
    CHECK(loaded.graph_hash == rep.graph_hash);
}
