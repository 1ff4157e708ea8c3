#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "comprec/io.hpp"
#include "fixtures.hpp"

using namespace comprec;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() {
    const char* p = std::getenv("COMPREC_CLI");
    return p ? p : "";
}

RunResult run_cli(const std::string& args) {
    RunResult res;
    std::string cmd = std::string(cli_path()) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

bool have_cli() { return cli_path()[0] != '\0'; }

}  // namespace

TEST_CASE("cli: full pipeline over the fixture corpus") {
    if (!have_cli()) {
        MESSAGE("COMPREC_CLI not set; skipping");
        return;
    }
    fixtures::TempDir tmp;
    auto catalog = tmp.write("catalog.txt", fixtures::catalog_text(fixtures::fig_catalog()));
    auto records = tmp.write("records.txt", fixtures::records_text(fixtures::fig_records()));

    auto ingest = run_cli("ingest --records " + records + " --catalog " + catalog +
                          " --out-queries " + tmp.file("q.queries"));
    CHECK(ingest.exit_code == 0);

    auto build = run_cli("build --records " + records + " --catalog " + catalog +
                         " --keyword-mode all --out " + tmp.file("g.graph"));
    REQUIRE(build.exit_code == 0);

    auto comp = run_cli("compress --graph " + tmp.file("g.graph") +
                        " --granularity 1 --out " + tmp.file("g.sgraph"));
    REQUIRE(comp.exit_code == 0);

    auto embed = run_cli("embed --graph " + tmp.file("g.graph") +
                         " --dim 16 --walks 4 --walk-length 8 --window 3 --epochs 2"
                         " --seed 7 --out " + tmp.file("g.emb"));
    REQUIRE(embed.exit_code == 0);

    auto query = run_cli("query --supergraph " + tmp.file("g.sgraph") +
                         " --keywords k1,k2,k9 --candidates 20 --out " + tmp.file("c.cands"));
    REQUIRE(query.exit_code == 0);

    auto rec = run_cli("recommend --candidates " + tmp.file("c.cands") + " --embeddings " +
                       tmp.file("g.emb") + " --graph " + tmp.file("g.graph") +
                       " --k 3 --lambda 0.5 --seed 5 --out " + tmp.file("top.topk"));
    REQUIRE(rec.exit_code == 0);

    // Every recommended composition covers the query and is connected.
    auto g = load_graph(tmp.file("g.graph"));
    auto rf = load_recommendations(tmp.file("top.topk"), g);
    REQUIRE(rf.items.size() == 3);
    for (const auto& item : rf.items) {
        std::set<std::string> kws;
        for (NodeId v : item.nodes)
            for (const auto& kw : g.node(v).keywords) kws.insert(kw);
        CHECK(kws.count("k1"));
        CHECK(kws.count("k2"));
        CHECK(kws.count("k9"));
    }

    auto bench = run_cli("bench --graph " + tmp.file("g.graph") + " --supergraph " +
                         tmp.file("g.sgraph") + " --embeddings " + tmp.file("g.emb") +
                         " --queries " + tmp.file("q.queries") + " --records " + records +
                         " --k 3 --candidates 20 --seed 5 --report " + tmp.file("b.report"));
    REQUIRE(bench.exit_code == 0);
    auto rep = load_report(tmp.file("b.report"));
    CHECK(rep.rows.size() == 4);
}

TEST_CASE("cli: unsatisfiable keywords exit 1 and name the keyword") {
    if (!have_cli()) return;
    fixtures::TempDir tmp;
    auto catalog = tmp.write("catalog.txt", fixtures::catalog_text(fixtures::fig_catalog()));
    auto records = tmp.write("records.txt", fixtures::records_text(fixtures::fig_records()));
    REQUIRE(run_cli("build --records " + records + " --catalog " + catalog +
                    " --keyword-mode all --out " + tmp.file("g.graph"))
                .exit_code == 0);
    REQUIRE(run_cli("compress --graph " + tmp.file("g.graph") + " --granularity 1 --out " +
                    tmp.file("g.sgraph"))
                .exit_code == 0);
    auto bad = run_cli("query --supergraph " + tmp.file("g.sgraph") +
                       " --keywords k1,doesnotexist --out " + tmp.file("c.cands"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("doesnotexist") != std::string::npos);
}

TEST_CASE("cli: infeasible recommendation exits 1") {
    if (!have_cli()) return;
    fixtures::TempDir tmp;
    auto catalog = tmp.write("catalog.txt", fixtures::catalog_text(fixtures::fig_catalog()));
    auto records = tmp.write("records.txt", fixtures::records_text(fixtures::fig_records()));
    REQUIRE(run_cli("build --records " + records + " --catalog " + catalog +
                    " --keyword-mode all --out " + tmp.file("g.graph"))
                .exit_code == 0);
    REQUIRE(run_cli("compress --graph " + tmp.file("g.graph") + " --granularity 1 --out " +
                    tmp.file("g.sgraph"))
                .exit_code == 0);
    REQUIRE(run_cli("embed --graph " + tmp.file("g.graph") +
                    " --dim 8 --walks 2 --walk-length 6 --window 2 --epochs 1 --seed 3"
                    " --out " + tmp.file("g.emb"))
                .exit_code == 0);
    REQUIRE(run_cli("query --supergraph " + tmp.file("g.sgraph") +
                    " --keywords k1,k2,k9 --candidates 20 --out " + tmp.file("c.cands"))
                .exit_code == 0);
    // Cap the matroid at 3 clusters but ask for 5 items.
    auto rec = run_cli("recommend --candidates " + tmp.file("c.cands") + " --embeddings " +
                       tmp.file("g.emb") + " --graph " + tmp.file("g.graph") +
                       " --k 5 --clusters 3 --seed 5 --out " + tmp.file("top.topk"));
    CHECK(rec.exit_code == 1);
    CHECK(rec.output.find("clusters") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
    if (!have_cli()) return;
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("build --records only").exit_code == 2);
    CHECK(run_cli("query --keywords a").exit_code == 2);  // missing required flags
}

TEST_CASE("cli: deterministic commands re-produce byte-identical artifacts") {
    if (!have_cli()) return;
    fixtures::TempDir tmp;
    auto catalog = tmp.write("catalog.txt", fixtures::catalog_text(fixtures::fig_catalog()));
    auto records = tmp.write("records.txt", fixtures::records_text(fixtures::fig_records()));
    for (int round : {1, 2}) {
        std::string suffix = std::to_string(round);
        REQUIRE(run_cli("build --records " + records + " --catalog " + catalog +
                        " --keyword-mode all --out " + tmp.file("g" + suffix + ".graph"))
                    .exit_code == 0);
        REQUIRE(run_cli("compress --graph " + tmp.file("g" + suffix + ".graph") +
                        " --granularity 4 --out " + tmp.file("s" + suffix + ".sgraph"))
                    .exit_code == 0);
        REQUIRE(run_cli("embed --graph " + tmp.file("g" + suffix + ".graph") +
                        " --dim 8 --walks 2 --walk-length 6 --window 2 --epochs 1 --seed 11"
                        " --out " + tmp.file("e" + suffix + ".emb"))
                    .exit_code == 0);
        REQUIRE(run_cli("query --supergraph " + tmp.file("s" + suffix + ".sgraph") +
                        " --keywords k1,k2,k9 --candidates 10 --out " +
                        tmp.file("c" + suffix + ".cands"))
                    .exit_code == 0);
        REQUIRE(run_cli("recommend --candidates " + tmp.file("c" + suffix + ".cands") +
                        " --embeddings " + tmp.file("e" + suffix + ".emb") + " --graph " +
                        tmp.file("g" + suffix + ".graph") + " --k 2 --seed 13 --out " +
                        tmp.file("t" + suffix + ".topk"))
                    .exit_code == 0);
    }
    for (const char* name : {"g", "s", "e", "c", "t"}) {
        std::string ext = name[0] == 'g'   ? ".graph"
                          : name[0] == 's' ? ".sgraph"
                          : name[0] == 'e' ? ".emb"
                          : name[0] == 'c' ? ".cands"
                                           : ".topk";
        CHECK(detail::read_file(tmp.file(std::string(name) + "1" + ext)) ==
              detail::read_file(tmp.file(std::string(name) + "2" + ext)));
    }
}

TEST_CASE("cli: jsonl ingestion matches the pipe format") {
    if (!have_cli()) return;
    fixtures::TempDir tmp;
    auto catalog = tmp.write("catalog.txt", fixtures::catalog_text(fixtures::fig_catalog()));
    std::string jsonl;
    for (const auto& r : fixtures::fig_records()) {
        jsonl += "{\"mashup_id\": \"" + r.mashup_id + "\", \"apis\": [";
        for (std::size_t i = 0; i < r.apis.size(); ++i) {
            if (i) jsonl += ", ";
            jsonl += "\"" + r.apis[i] + "\"";
        }
        jsonl += "]}\n";
    }
    auto records_jsonl = tmp.write("records.jsonl", jsonl);
    auto records_txt = tmp.write("records.txt", fixtures::records_text(fixtures::fig_records()));
    REQUIRE(run_cli("build --records " + records_jsonl + " --catalog " + catalog +
                    " --jsonl --keyword-mode all --out " + tmp.file("gj.graph"))
                .exit_code == 0);
    REQUIRE(run_cli("build --records " + records_txt + " --catalog " + catalog +
                    " --keyword-mode all --out " + tmp.file("gt.graph"))
                .exit_code == 0);
    CHECK(detail::read_file(tmp.file("gj.graph")) == detail::read_file(tmp.file("gt.graph")));
}
