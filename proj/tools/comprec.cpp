// comprec: diverse, compatible API composition recommendation.
//
// Pipeline: ingest -> build -> compress -> embed -> query -> recommend,
// plus bench for the full metric suite over a query file. Every persisted
// artifact embeds the content hash of the graph it derives from, and
// downstream commands refuse mismatched artifacts.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "comprec/compress.hpp"
#include "comprec/corpus.hpp"
#include "comprec/embedding.hpp"
#include "comprec/evaluate.hpp"
#include "comprec/graph.hpp"
#include "comprec/io.hpp"
#include "comprec/recommend.hpp"
#include "comprec/scoring.hpp"
#include "comprec/steiner.hpp"

namespace {

std::string env(const std::string& flag) {
    std::string s = "COMPREC_";
    for (char c : flag) s += c == '-' ? '_' : static_cast<char>(std::toupper(c));
    return s;
}

std::uint64_t pick_seed(const std::optional<std::uint64_t>& given) {
    if (given) return *given;
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cout << "seed " << s << " (chosen at random; pass --seed to reproduce)\n";
    return s;
}

std::vector<comprec::MashupRecord> read_records(const std::string& path, bool jsonl) {
    return jsonl ? comprec::parse_records_jsonl(path) : comprec::parse_records(path);
}

std::string serialize_records(const std::vector<comprec::MashupRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += r.mashup_id + " | ";
        for (std::size_t i = 0; i < r.apis.size(); ++i) {
            if (i) out += ", ";
            out += r.apis[i];
        }
        out += "\n";
    }
    return out;
}

struct IngestArgs {
    std::string records, catalog, out_records, out_queries;
    bool jsonl = false;
    std::size_t min_len = 3, max_len = 6;
};

struct BuildArgs {
    std::string records, catalog, out;
    bool jsonl = false;
    std::string keyword_mode = "functional";
};

struct CompressArgs {
    std::string graph, out;
    int granularity = 4;
};

struct EmbedArgs {
    std::string graph, out;
    comprec::EmbeddingParams params;
    std::optional<std::uint64_t> seed;
};

struct QueryArgs {
    std::string supergraph, keywords, out;
    int candidates = 500;
    double timeout_secs = 30.0;
    std::int64_t max_pops = 5'000'000;
};

struct RecommendArgs {
    std::string candidates, embeddings, graph, out;
    int k = 5;
    double lambda = 0.5;
    std::string clusters = "auto";
    int swap_passes = -1;
    std::optional<std::uint64_t> seed;
};

// "auto" -> 0 (resolved later as max(2k, 10) capped by the candidate count).
int parse_clusters(const std::string& s) {
    if (s == "auto") return 0;
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 1) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw comprec::ArgumentError("--clusters expects a positive integer or `auto`");
    }
}

struct BenchArgs {
    std::string graph, supergraph, embeddings, queries, records, report;
    bool jsonl = false;
    int k = 5;
    double lambda = 0.5;
    int candidates = 500;
    std::string clusters = "auto";
    int swap_passes = -1;
    double timeout_secs = 30.0;
    std::int64_t max_pops = 5'000'000;
    std::optional<std::uint64_t> seed;
    bool no_recommend = false;
};

void run_ingest(const IngestArgs& a) {
    auto catalog = comprec::parse_catalog(a.catalog);
    auto records = read_records(a.records, a.jsonl);
    // Resolve everything up front so broken references fail the ingest.
    auto queries = comprec::generate_queries(records, catalog, a.min_len, a.max_len);
    std::cout << "catalog entries: " << catalog.size() << "\n"
              << "records: " << records.size() << "\n"
              << "queries in [" << a.min_len << ", " << a.max_len
              << "]: " << queries.size() << "\n";
    if (!a.out_records.empty())
        comprec::detail::write_file(a.out_records, serialize_records(records));
    if (!a.out_queries.empty()) comprec::save_queries(queries, a.out_queries);
}

void run_build(const BuildArgs& a) {
    auto catalog = comprec::parse_catalog(a.catalog);
    auto records = read_records(a.records, a.jsonl);
    auto mode = a.keyword_mode == "all" ? comprec::KeywordMode::all_categories
                                        : comprec::KeywordMode::functional_only;
    auto g = comprec::build_graph(records, catalog, mode);
    comprec::save_graph(g, a.out);
    std::cout << "graph: " << g.nodes.size() << " nodes, " << g.edges.size() << " edges, hash "
              << comprec::hash_to_hex(comprec::content_hash(g)) << "\n";
}

void run_compress(const CompressArgs& a) {
    auto g = comprec::load_graph(a.graph);
    auto sg = comprec::compress(g, a.granularity);
    comprec::save_supergraph(sg, a.out);
    std::cout << "supergraph: " << sg.supernodes.size() << " supernodes, "
              << sg.superedges.size() << " superedges (p=" << a.granularity << ")\n";
}

void run_embed(EmbedArgs a) {
    auto g = comprec::load_graph(a.graph);
    a.params.seed = pick_seed(a.seed);
    auto model = comprec::train_embeddings(g, a.params);
    comprec::save_embeddings(model, a.out);
    std::cout << "embeddings: " << model.node_count() << " nodes x " << model.dimension
              << " dims (seed " << a.params.seed << ")\n";
}

void run_query(const QueryArgs& a) {
    auto sg = comprec::load_supergraph(a.supergraph);
    auto keywords = comprec::detail::split_trimmed(a.keywords, ',');
    comprec::SolveBudget budget;
    budget.max_pops = a.max_pops;
    budget.wall_time_secs = a.timeout_secs;
    auto trees = comprec::solve_mgst(sg, keywords, a.candidates, budget);
    comprec::CandidateSet cs;
    cs.graph_hash = comprec::content_hash(sg.original);
    cs.keywords = keywords;
    for (const auto& tree : trees)
        cs.compositions.push_back(comprec::decompress_and_prune(tree, sg, keywords));
    comprec::save_candidates(cs, sg.original, a.out);
    std::cout << "candidates: " << cs.compositions.size() << "\n";
}

void run_recommend(RecommendArgs a) {
    auto g = comprec::load_graph(a.graph);
    auto cs = comprec::load_candidates(a.candidates, g);
    auto model = comprec::load_embeddings(a.embeddings);
    const std::uint64_t ghash = comprec::content_hash(g);
    if (cs.graph_hash != ghash)
        throw comprec::ConsistencyError("candidates were computed from a different graph");
    if (model.graph_hash != ghash)
        throw comprec::ConsistencyError("embeddings were trained on a different graph");
    if (cs.compositions.empty())
        throw comprec::ArgumentError("candidate file is empty; nothing to recommend");

    const std::uint64_t seed = pick_seed(a.seed);
    std::vector<double> quals(cs.compositions.size());
    for (std::size_t i = 0; i < cs.compositions.size(); ++i)
        quals[i] = comprec::quality(g, cs.compositions[i]);
    auto quals_norm = comprec::normalize_batch(quals);
    std::vector<comprec::CompositionVector> vecs;
    vecs.reserve(cs.compositions.size());
    for (const auto& c : cs.compositions)
        vecs.push_back(comprec::composition_vector(model, c));

    int clusters = parse_clusters(a.clusters);
    int kc = clusters > 0 ? clusters : std::max(2 * a.k, 10);
    kc = std::min<int>(kc, static_cast<int>(cs.compositions.size()));
    auto matroid = comprec::quality_aware_kmeans(vecs, quals, kc, 100, seed);
    auto list = comprec::greedy_swap_select(cs.compositions, quals_norm, vecs, matroid, a.k,
                                            comprec::MmrParams{a.lambda}, a.swap_passes);

    comprec::RecommendationFile rf;
    rf.graph_hash = ghash;
    rf.keywords = cs.keywords;
    rf.k = a.k;
    rf.lambda = a.lambda;
    rf.clusters = kc;
    rf.seed = seed;
    for (std::size_t pos = 0; pos < list.items.size(); ++pos) {
        const int idx = list.items[pos];
        comprec::RecommendedItem item;
        item.nodes = cs.compositions[static_cast<std::size_t>(idx)].nodes;
        item.raw_quality = quals[static_cast<std::size_t>(idx)];
        item.norm_quality = quals_norm[static_cast<std::size_t>(idx)];
        item.cluster = matroid.cluster_of[static_cast<std::size_t>(idx)];
        std::vector<comprec::CompositionVector> rest;
        for (std::size_t q = 0; q < list.items.size(); ++q)
            if (q != pos)
                rest.push_back(vecs[static_cast<std::size_t>(list.items[q])]);
        item.mmr = comprec::mmr_score(item.norm_quality, vecs[static_cast<std::size_t>(idx)],
                                      rest, comprec::MmrParams{a.lambda});
        rf.items.push_back(std::move(item));
    }
    comprec::save_recommendations(rf, g, a.out);
    std::cout << "recommended " << rf.items.size() << " compositions\n";
}

void run_bench(BenchArgs a) {
    auto g = comprec::load_graph(a.graph);
    auto sg = comprec::load_supergraph(a.supergraph);
    auto queries = comprec::load_queries(a.queries);
    std::vector<comprec::MashupRecord> records;
    if (!a.records.empty()) records = read_records(a.records, a.jsonl);

    comprec::BenchmarkConfig cfg;
    cfg.k = a.k;
    cfg.lambda = a.lambda;
    cfg.max_candidates = a.candidates;
    cfg.k_clusters = parse_clusters(a.clusters);
    cfg.swap_passes = a.swap_passes;
    cfg.budget.max_pops = a.max_pops;
    cfg.budget.wall_time_secs = a.timeout_secs;
    cfg.seed = pick_seed(a.seed);
    cfg.recommend_stage = !a.no_recommend;

    comprec::BenchmarkReport rep;
    if (cfg.recommend_stage) {
        if (a.embeddings.empty())
            throw comprec::ArgumentError("bench needs --embeddings unless --no-recommend is set");
        auto model = comprec::load_embeddings(a.embeddings);
        rep = comprec::run_benchmark(g, sg, &model, queries, records, cfg);
    } else {
        rep = comprec::run_benchmark(g, sg, nullptr, queries, records, cfg);
    }
    if (!a.report.empty()) comprec::save_report(rep, a.report);
    std::cout << comprec::report_table(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diverse, compatible API composition recommendation"};
    app.require_subcommand(1);
    app.set_config("--config")->envname(env("config"));

    IngestArgs ingest;
    auto* ci = app.add_subcommand("ingest", "validate records/catalog, emit queries");
    ci->add_option("--records", ingest.records, "records file")->required()->envname(env("records"));
    ci->add_option("--catalog", ingest.catalog, "catalog file")->required()->envname(env("catalog"));
    ci->add_flag("--jsonl", ingest.jsonl, "records are JSON objects, one per line")->envname(env("jsonl"));
    ci->add_option("--out-records", ingest.out_records, "write normalized records")->envname(env("out-records"));
    ci->add_option("--out-queries", ingest.out_queries, "write generated queries")->envname(env("out-queries"));
    ci->add_option("--min-len", ingest.min_len, "minimum query length")->envname(env("min-len"));
    ci->add_option("--max-len", ingest.max_len, "maximum query length")->envname(env("max-len"));
    ci->callback([&] { run_ingest(ingest); });

    BuildArgs build;
    auto* cb = app.add_subcommand("build", "build the association graph");
    cb->add_option("--records", build.records, "records file")->required()->envname(env("records"));
    cb->add_option("--catalog", build.catalog, "catalog file")->required()->envname(env("catalog"));
    cb->add_flag("--jsonl", build.jsonl, "records are JSON objects, one per line")->envname(env("jsonl"));
    cb->add_option("--keyword-mode", build.keyword_mode, "functional | all")
        ->check(CLI::IsMember({"functional", "all"}))
        ->envname(env("keyword-mode"));
    cb->add_option("--out", build.out, "graph file to write")->required()->envname(env("out"));
    cb->callback([&] { run_build(build); });

    CompressArgs comp;
    auto* cc = app.add_subcommand("compress", "compress the graph into a supergraph");
    cc->add_option("--graph", comp.graph, "graph file")->required()->envname(env("graph"));
    cc->add_option("--granularity", comp.granularity, "max ancestors per supernode")
        ->envname(env("granularity"));
    cc->add_option("--out", comp.out, "supergraph file to write")->required()->envname(env("out"));
    cc->callback([&] { run_compress(comp); });

    EmbedArgs emb;
    auto* ce = app.add_subcommand("embed", "train node embeddings on the graph");
    ce->add_option("--graph", emb.graph, "graph file")->required()->envname(env("graph"));
    ce->add_option("--dim", emb.params.dimension, "embedding dimension")->envname(env("dim"));
    ce->add_option("--walks", emb.params.walks_per_node, "walks per node")->envname(env("walks"));
    ce->add_option("--walk-length", emb.params.walk_length, "walk length")->envname(env("walk-length"));
    ce->add_option("--window", emb.params.window, "skip-gram window")->envname(env("window"));
    ce->add_option("--return-param", emb.params.return_param, "walk return bias p")->envname(env("return-param"));
    ce->add_option("--inout-param", emb.params.inout_param, "walk in-out bias q")->envname(env("inout-param"));
    ce->add_option("--negative", emb.params.negative_samples, "negative samples")->envname(env("negative"));
    ce->add_option("--epochs", emb.params.epochs, "training epochs")->envname(env("epochs"));
    ce->add_option("--learning-rate", emb.params.learning_rate, "initial learning rate")->envname(env("learning-rate"));
    ce->add_option("--seed", emb.seed, "RNG seed (random if omitted)")->envname(env("seed"));
    ce->add_option("--out", emb.out, "embedding file to write")->required()->envname(env("out"));
    ce->callback([&] { run_embed(emb); });

    QueryArgs query;
    auto* cq = app.add_subcommand("query", "find candidate compositions for keywords");
    cq->add_option("--supergraph", query.supergraph, "supergraph file")->required()->envname(env("supergraph"));
    cq->add_option("--keywords", query.keywords, "comma-separated query keywords")->required()->envname(env("keywords"));
    cq->add_option("--candidates", query.candidates, "max candidate compositions")->envname(env("candidates"));
    cq->add_option("--timeout-secs", query.timeout_secs, "per-query wall budget")->envname(env("timeout-secs"));
    cq->add_option("--max-pops", query.max_pops, "per-query queue-pop budget")->envname(env("max-pops"));
    cq->add_option("--out", query.out, "candidates file to write")->required()->envname(env("out"));
    cq->callback([&] { run_query(query); });

    RecommendArgs rec;
    auto* cr = app.add_subcommand("recommend", "select a diverse top-k from candidates");
    cr->add_option("--candidates", rec.candidates, "candidates file")->required()->envname(env("candidates"));
    cr->add_option("--embeddings", rec.embeddings, "embedding file")->required()->envname(env("embeddings"));
    cr->add_option("--graph", rec.graph, "graph file")->required()->envname(env("graph"));
    cr->add_option("--k", rec.k, "list size")->envname(env("k"));
    cr->add_option("--lambda", rec.lambda, "quality weight in [0,1]")->envname(env("lambda"));
    cr->add_option("--clusters", rec.clusters, "cluster count or `auto`")->envname(env("clusters"));
    cr->add_option("--swap-passes", rec.swap_passes, "swap passes (-1 = until stable)")->envname(env("swap-passes"));
    cr->add_option("--seed", rec.seed, "RNG seed (random if omitted)")->envname(env("seed"));
    cr->add_option("--out", rec.out, "recommendation file to write")->required()->envname(env("out"));
    cr->callback([&] { run_recommend(rec); });

    BenchArgs bench;
    auto* cn = app.add_subcommand("bench", "run the metric suite over a query file");
    cn->add_option("--graph", bench.graph, "graph file")->required()->envname(env("graph"));
    cn->add_option("--supergraph", bench.supergraph, "supergraph file")->required()->envname(env("supergraph"));
    cn->add_option("--embeddings", bench.embeddings, "embedding file")->envname(env("embeddings"));
    cn->add_option("--queries", bench.queries, "queries file")->required()->envname(env("queries"));
    cn->add_option("--records", bench.records, "records file (ground truth for MP)")->envname(env("records"));
    cn->add_flag("--jsonl", bench.jsonl, "records are JSON objects, one per line")->envname(env("jsonl"));
    cn->add_option("--k", bench.k, "list size")->envname(env("k"));
    cn->add_option("--lambda", bench.lambda, "quality weight in [0,1]")->envname(env("lambda"));
    cn->add_option("--candidates", bench.candidates, "max candidate compositions")->envname(env("candidates"));
    cn->add_option("--clusters", bench.clusters, "cluster count or `auto`")->envname(env("clusters"));
    cn->add_option("--swap-passes", bench.swap_passes, "swap passes (-1 = until stable)")->envname(env("swap-passes"));
    cn->add_option("--timeout-secs", bench.timeout_secs, "per-query wall budget")->envname(env("timeout-secs"));
    cn->add_option("--max-pops", bench.max_pops, "per-query queue-pop budget")->envname(env("max-pops"));
    cn->add_option("--seed", bench.seed, "RNG seed (random if omitted)")->envname(env("seed"));
    cn->add_flag("--no-recommend", bench.no_recommend, "discovery phase only (no top-k stage)")->envname(env("no-recommend"));
    cn->add_option("--report", bench.report, "report file to write")->envname(env("report"));
    cn->callback([&] { run_bench(bench); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const comprec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
