#pragma once

// Persisted artifact formats. All text formats are canonical (sorted ids,
// fixed field order, %.17g doubles), so serialize -> parse -> serialize is
// byte-identical. Every derived artifact embeds the content hash of the
// graph it was computed from; loaders verify and downstream stages compare.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "comprec/compress.hpp"
#include "comprec/corpus.hpp"
#include "comprec/detail/hash.hpp"
#include "comprec/embedding.hpp"
#include "comprec/errors.hpp"
#include "comprec/evaluate.hpp"
#include "comprec/graph.hpp"
#include "comprec/steiner.hpp"

namespace comprec {
namespace detail {

inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline double parse_double(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad number: " + s, lineno);
    }
}

inline long long parse_int(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer: " + s, lineno);
    }
}

inline std::uint64_t parse_hash(const std::string& s, std::size_t lineno) {
    if (s.size() != 16) throw ParseError("bad hash: " + s, lineno);
    std::uint64_t v = 0;
    for (char c : s) {
        v <<= 4;
        if (c >= '0' && c <= '9')
            v |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v |= static_cast<std::uint64_t>(c - 'a' + 10);
        else
            throw ParseError("bad hash: " + s, lineno);
    }
    return v;
}

inline void check_token(const std::string& s) {
    for (char c : s)
        if (c == '\t' || c == '\n' || c == '\r' || c == ',')
            throw IoError("token contains a reserved character: " + s);
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        check_token(tokens[i]);
        if (i) out += ',';
        out += tokens[i];
    }
    return out;
}

inline std::vector<std::string> split_plain(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        std::string tok = s.substr(start, pos == std::string::npos ? std::string::npos
                                                                   : pos - start);
        if (!tok.empty()) out.push_back(std::move(tok));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::string next() {
        std::string line;
        if (!std::getline(in_, line)) throw ParseError("unexpected end of file", lineno_);
        ++lineno_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    // Expects `<tag> <rest>` and returns rest.
    std::string expect(const std::string& tag) {
        std::string line = next();
        if (line.rfind(tag + " ", 0) != 0)
            throw ParseError("expected `" + tag + " ...`, got: " + line, lineno_);
        return line.substr(tag.size() + 1);
    }

    void expect_exact(const std::string& want) {
        std::string line = next();
        if (line != want)
            throw ParseError("expected `" + want + "`, got: " + line, lineno_);
    }

    std::size_t lineno() const { return lineno_; }

private:
    std::istream& in_;
    std::size_t lineno_ = 0;
};

inline std::vector<std::string> fields(const std::string& line, std::size_t want,
                                       std::size_t lineno) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos
                                                                  : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.size() != want)
        throw ParseError("expected " + std::to_string(want) + " fields, got " +
                             std::to_string(out.size()),
                         lineno);
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

// ---- graph ----------------------------------------------------------------

inline std::string serialize_graph(const AssociationGraph& g) {
    std::string out = "comprec-graph v1\n";
    out += "hash " + hash_to_hex(content_hash(g)) + "\n";
    out += "nodes " + std::to_string(g.nodes.size()) + "\n";
    for (const auto& n : g.nodes) {
        detail::check_token(n.api_id);
        out += "node\t" + std::to_string(n.id) + "\t" + n.api_id + "\t" +
               std::to_string(n.times_used) + "\t" + detail::join_tokens(n.keywords) + "\n";
    }
    out += "edges " + std::to_string(g.edges.size()) + "\n";
    for (const auto& e : g.edges)
        out += "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " " +
               std::to_string(e.co_invocations) + "\n";
    out += "end\n";
    return out;
}

inline AssociationGraph parse_graph_body(detail::LineReader& r) {
    AssociationGraph g;
    std::uint64_t declared = detail::parse_hash(r.expect("hash"), r.lineno());
    long long n = detail::parse_int(r.expect("nodes"), r.lineno());
    for (long long i = 0; i < n; ++i) {
        auto f = detail::fields(r.next(), 5, r.lineno());
        if (f[0] != "node") throw ParseError("expected node row", r.lineno());
        ApiNode node;
        node.id = static_cast<NodeId>(detail::parse_int(f[1], r.lineno()));
        if (node.id != static_cast<NodeId>(i))
            throw ParseError("node ids must be dense and ascending", r.lineno());
        node.api_id = f[2];
        node.times_used = static_cast<int>(detail::parse_int(f[3], r.lineno()));
        node.keywords = detail::split_plain(f[4], ',');
        if (node.keywords.empty()) throw ParseError("node without keywords", r.lineno());
        g.api_index.emplace(node.api_id, node.id);
        g.nodes.push_back(std::move(node));
    }
    if (g.api_index.size() != g.nodes.size())
        throw ParseError("duplicate api_id in graph file", r.lineno());
    long long m = detail::parse_int(r.expect("edges"), r.lineno());
    for (long long i = 0; i < m; ++i) {
        std::string line = r.next();
        ApiEdge e;
        unsigned uu, vv;
        int cc;
        if (std::sscanf(line.c_str(), "edge %u %u %d", &uu, &vv, &cc) != 3)
            throw ParseError("bad edge row: " + line, r.lineno());
        e.u = static_cast<NodeId>(uu);
        e.v = static_cast<NodeId>(vv);
        e.co_invocations = cc;
        if (e.u >= e.v || e.v >= static_cast<NodeId>(g.nodes.size()) || e.co_invocations < 1)
            throw ParseError("invalid edge: " + line, r.lineno());
        g.edge_counts_[AssociationGraph::pair_key(e.u, e.v)] = e.co_invocations;
        g.edges.push_back(e);
    }
    r.expect_exact("end");

    g.adjacency.assign(g.nodes.size(), {});
    for (const auto& e : g.edges) {
        g.adjacency[static_cast<std::size_t>(e.u)].push_back(e.v);
        g.adjacency[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    for (const auto& node : g.nodes)
        for (const auto& kw : node.keywords) g.keyword_index[kw].push_back(node.id);
    for (auto& [kw, ids] : g.keyword_index) std::sort(ids.begin(), ids.end());

    if (content_hash(g) != declared)
        throw ConsistencyError("graph file hash mismatch (corrupt or edited file)");
    return g;
}

inline void save_graph(const AssociationGraph& g, const std::string& path) {
    detail::write_file(path, serialize_graph(g));
}

inline AssociationGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    detail::LineReader r(in);
    r.expect_exact("comprec-graph v1");
    return parse_graph_body(r);
}

// ---- supergraph -------------------------------------------------------------

inline std::string serialize_supergraph(const SuperGraph& sg) {
    std::string out = "comprec-supergraph v1\n";
    out += "granularity " + std::to_string(sg.granularity) + "\n";
    out += serialize_graph(sg.original);
    out += "supernodes " + std::to_string(sg.supernodes.size()) + "\n";
    for (const auto& sv : sg.supernodes) {
        out += "snode " + std::to_string(sv.id) + " ";
        for (std::size_t i = 0; i < sv.ancestors.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(sv.ancestors[i]);
        }
        out += "\n";
    }
    out += "superedges " + std::to_string(sg.superedges.size()) + "\n";
    for (const auto& [a, b] : sg.superedges)
        out += "sedge " + std::to_string(a) + " " + std::to_string(b) + "\n";
    out += "end\n";
    return out;
}

inline SuperGraph load_supergraph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    detail::LineReader r(in);
    r.expect_exact("comprec-supergraph v1");
    SuperGraph sg;
    sg.granularity = static_cast<int>(detail::parse_int(r.expect("granularity"), r.lineno()));
    r.expect_exact("comprec-graph v1");
    sg.original = parse_graph_body(r);
    const AssociationGraph& g = sg.original;

    long long sn = detail::parse_int(r.expect("supernodes"), r.lineno());
    sg.owner.assign(g.nodes.size(), -1);
    for (long long i = 0; i < sn; ++i) {
        std::string rest = r.expect("snode");
        std::size_t sp = rest.find(' ');
        if (sp == std::string::npos) throw ParseError("bad snode row", r.lineno());
        long long sid = detail::parse_int(rest.substr(0, sp), r.lineno());
        if (sid != i) throw ParseError("supernode ids must be dense", r.lineno());
        SuperNode sv;
        sv.id = static_cast<SuperId>(sid);
        for (const auto& tok : detail::split_plain(rest.substr(sp + 1), ',')) {
            NodeId v = static_cast<NodeId>(detail::parse_int(tok, r.lineno()));
            if (v < 0 || static_cast<std::size_t>(v) >= g.nodes.size() ||
                sg.owner[static_cast<std::size_t>(v)] != -1)
                throw ParseError("bad ancestor id in snode row", r.lineno());
            sg.owner[static_cast<std::size_t>(v)] = sv.id;
            sv.ancestors.push_back(v);
            const auto& kws = g.nodes[static_cast<std::size_t>(v)].keywords;
            sv.keywords.insert(sv.keywords.end(), kws.begin(), kws.end());
        }
        if (sv.ancestors.empty()) throw ParseError("empty supernode", r.lineno());
        sv.weight = static_cast<int>(sv.ancestors.size());
        std::sort(sv.keywords.begin(), sv.keywords.end());
        sv.keywords.erase(std::unique(sv.keywords.begin(), sv.keywords.end()),
                          sv.keywords.end());
        sg.supernodes.push_back(std::move(sv));
    }
    for (SuperId o : sg.owner)
        if (o < 0) throw ParseError("node not covered by any supernode", r.lineno());

    long long sm = detail::parse_int(r.expect("superedges"), r.lineno());
    for (long long i = 0; i < sm; ++i) {
        std::string line = r.next();
        unsigned a, b;
        if (std::sscanf(line.c_str(), "sedge %u %u", &a, &b) != 2)
            throw ParseError("bad sedge row: " + line, r.lineno());
        if (a >= b || b >= sg.supernodes.size())
            throw ParseError("invalid superedge: " + line, r.lineno());
        sg.superedges.emplace_back(static_cast<SuperId>(a), static_cast<SuperId>(b));
    }
    r.expect_exact("end");

    sg.adjacency.assign(sg.supernodes.size(), {});
    for (const auto& [a, b] : sg.superedges) {
        sg.adjacency[static_cast<std::size_t>(a)].push_back(b);
        sg.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nbrs : sg.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return sg;
}

inline void save_supergraph(const SuperGraph& sg, const std::string& path) {
    detail::write_file(path, serialize_supergraph(sg));
}

// ---- embeddings (binary) ----------------------------------------------------

inline void save_embeddings(const EmbeddingModel& model, const std::string& path) {
    std::string out = "comprec-emb v1\n";
    out += "graphhash " + hash_to_hex(model.graph_hash) + "\n";
    out += "dimension " + std::to_string(model.dimension) + "\n";
    out += "nodes " + std::to_string(model.node_count()) + "\n";
    const auto& p = model.params;
    out += "params " + std::to_string(p.walks_per_node) + " " + std::to_string(p.walk_length) +
           " " + std::to_string(p.window) + " " + detail::fmt_double(p.return_param) + " " +
           detail::fmt_double(p.inout_param) + " " + std::to_string(p.negative_samples) + " " +
           std::to_string(p.epochs) + " " + detail::fmt_double(p.learning_rate) + " " +
           std::to_string(p.seed) + "\n";
    out += "data\n";
    out.append(reinterpret_cast<const char*>(model.data.data()),
               model.data.size() * sizeof(float));
    detail::write_file(path, out);
}

inline EmbeddingModel load_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    detail::LineReader r(in);
    r.expect_exact("comprec-emb v1");
    EmbeddingModel model;
    model.graph_hash = detail::parse_hash(r.expect("graphhash"), r.lineno());
    model.dimension = static_cast<int>(detail::parse_int(r.expect("dimension"), r.lineno()));
    long long n = detail::parse_int(r.expect("nodes"), r.lineno());
    {
        std::string rest = r.expect("params");
        auto toks = detail::split_plain(rest, ' ');
        if (toks.size() != 9) throw ParseError("bad params row", r.lineno());
        auto& p = model.params;
        p.dimension = model.dimension;
        p.walks_per_node = static_cast<int>(detail::parse_int(toks[0], r.lineno()));
        p.walk_length = static_cast<int>(detail::parse_int(toks[1], r.lineno()));
        p.window = static_cast<int>(detail::parse_int(toks[2], r.lineno()));
        p.return_param = detail::parse_double(toks[3], r.lineno());
        p.inout_param = detail::parse_double(toks[4], r.lineno());
        p.negative_samples = static_cast<int>(detail::parse_int(toks[5], r.lineno()));
        p.epochs = static_cast<int>(detail::parse_int(toks[6], r.lineno()));
        p.learning_rate = detail::parse_double(toks[7], r.lineno());
        p.seed = static_cast<std::uint64_t>(detail::parse_int(toks[8], r.lineno()));
    }
    r.expect_exact("data");
    if (model.dimension < 1 || n < 0) throw ParseError("bad embedding header", r.lineno());
    model.data.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(model.dimension));
    in.read(reinterpret_cast<char*>(model.data.data()),
            static_cast<std::streamsize>(model.data.size() * sizeof(float)));
    if (in.gcount() !=
        static_cast<std::streamsize>(model.data.size() * sizeof(float)))
        throw ParseError("embedding data truncated", r.lineno());
    return model;
}

// ---- queries ----------------------------------------------------------------

inline std::string serialize_queries(const std::vector<Query>& queries) {
    std::string out = "comprec-queries v1\n";
    for (const auto& q : queries) {
        out += "query\t" + detail::join_tokens(q.keywords) + "\t";
        if (q.source_mashup) {
            detail::check_token(*q.source_mashup);
            out += *q.source_mashup;
        } else {
            out += "-";
        }
        out += "\n";
    }
    out += "end\n";
    return out;
}

inline std::vector<Query> load_queries(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    detail::LineReader r(in);
    r.expect_exact("comprec-queries v1");
    std::vector<Query> out;
    while (true) {
        std::string line = r.next();
        if (line == "end") break;
        auto f = detail::fields(line, 3, r.lineno());
        if (f[0] != "query") throw ParseError("expected query row", r.lineno());
        Query q;
        q.keywords = detail::split_plain(f[1], ',');
        if (q.keywords.empty()) throw ParseError("query without keywords", r.lineno());
        if (f[2] != "-") q.source_mashup = f[2];
        out.push_back(std::move(q));
    }
    return out;
}

inline void save_queries(const std::vector<Query>& queries, const std::string& path) {
    detail::write_file(path, serialize_queries(queries));
}

// ---- candidate compositions ---------------------------------------------------

struct CandidateSet {
    std::uint64_t graph_hash = 0;
    std::vector<std::string> keywords;
    std::vector<CandidateComposition> compositions;
};

inline std::string serialize_candidates(const CandidateSet& cs, const AssociationGraph& g) {
    std::string out = "comprec-candidates v1\n";
    out += "graphhash " + hash_to_hex(cs.graph_hash) + "\n";
    out += "keywords " + detail::join_tokens(cs.keywords) + "\n";
    out += "count " + std::to_string(cs.compositions.size()) + "\n";
    for (const auto& c : cs.compositions) {
        std::vector<std::string> apis;
        apis.reserve(c.nodes.size());
        for (NodeId v : c.nodes) apis.push_back(g.node(v).api_id);
        out += "cand\t" + detail::join_tokens(apis) + "\t" + std::to_string(c.nodes.size()) +
               "\t" + detail::join_tokens(c.covered_keywords) + "\n";
    }
    out += "end\n";
    return out;
}

inline CandidateSet load_candidates(const std::string& path, const AssociationGraph& g) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    detail::LineReader r(in);
    r.expect_exact("comprec-candidates v1");
    CandidateSet cs;
    cs.graph_hash = detail::parse_hash(r.expect("graphhash"), r.lineno());
    cs.keywords = detail::split_plain(r.expect("keywords"), ',');
    long long n = detail::parse_int(r.expect("count"), r.lineno());
    for (long long i = 0; i < n; ++i) {
        auto f = detail::fields(r.next(), 4, r.lineno());
        if (f[0] != "cand") throw ParseError("expected cand row", r.lineno());
        CandidateComposition c;
        for (const auto& api : detail::split_plain(f[1], ',')) {
            auto it = g.api_index.find(api);
            if (it == g.api_index.end())
                throw ReferenceError("candidate references API missing from graph: " + api);
            c.nodes.push_back(it->second);
        }
        if (c.nodes.size() != static_cast<std::size_t>(detail::parse_int(f[2], r.lineno())))
            throw ParseError("candidate size field disagrees with API list", r.lineno());
        c.covered_keywords = detail::split_plain(f[3], ',');
        cs.compositions.push_back(std::move(c));
    }
    r.expect_exact("end");
    return cs;
}

inline void save_candidates(const CandidateSet& cs, const AssociationGraph& g,
                            const std::string& path) {
    detail::write_file(path, serialize_candidates(cs, g));
}

// ---- top-k recommendation list -------------------------------------------------

struct RecommendedItem {
    std::vector<NodeId> nodes;
    double raw_quality = 0.0;
    double norm_quality = 0.0;
    int cluster = 0;
    double mmr = 0.0;
};

struct RecommendationFile {
    std::uint64_t graph_hash = 0;
    std::vector<std::string> keywords;
    int k = 0;
    double lambda = 0.5;
    int clusters = 0;
    std::uint64_t seed = 0;
    std::vector<RecommendedItem> items;
};

inline std::string serialize_recommendations(const RecommendationFile& rf,
                                             const AssociationGraph& g) {
    std::string out = "comprec-topk v1\n";
    out += "graphhash " + hash_to_hex(rf.graph_hash) + "\n";
    out += "keywords " + detail::join_tokens(rf.keywords) + "\n";
    out += "k " + std::to_string(rf.k) + "\n";
    out += "lambda " + detail::fmt_double(rf.lambda) + "\n";
    out += "clusters " + std::to_string(rf.clusters) + "\n";
    out += "seed " + std::to_string(rf.seed) + "\n";
    out += "count " + std::to_string(rf.items.size()) + "\n";
    for (std::size_t i = 0; i < rf.items.size(); ++i) {
        const auto& it = rf.items[i];
        std::vector<std::string> apis;
        apis.reserve(it.nodes.size());
        for (NodeId v : it.nodes) apis.push_back(g.node(v).api_id);
        out += "item\t" + std::to_string(i + 1) + "\t" + detail::join_tokens(apis) + "\t" +
               detail::fmt_double(it.raw_quality) + "\t" + detail::fmt_double(it.norm_quality) +
               "\t" + std::to_string(it.cluster) + "\t" + detail::fmt_double(it.mmr) + "\n";
    }
    out += "end\n";
    return out;
}

inline RecommendationFile load_recommendations(const std::string& path,
                                               const AssociationGraph& g) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    detail::LineReader r(in);
    r.expect_exact("comprec-topk v1");
    RecommendationFile rf;
    rf.graph_hash = detail::parse_hash(r.expect("graphhash"), r.lineno());
    rf.keywords = detail::split_plain(r.expect("keywords"), ',');
    rf.k = static_cast<int>(detail::parse_int(r.expect("k"), r.lineno()));
    rf.lambda = detail::parse_double(r.expect("lambda"), r.lineno());
    rf.clusters = static_cast<int>(detail::parse_int(r.expect("clusters"), r.lineno()));
    rf.seed = static_cast<std::uint64_t>(detail::parse_int(r.expect("seed"), r.lineno()));
    long long n = detail::parse_int(r.expect("count"), r.lineno());
    for (long long i = 0; i < n; ++i) {
        auto f = detail::fields(r.next(), 7, r.lineno());
        if (f[0] != "item") throw ParseError("expected item row", r.lineno());
        if (detail::parse_int(f[1], r.lineno()) != i + 1)
            throw ParseError("item ranks must be 1..count", r.lineno());
        RecommendedItem item;
        for (const auto& api : detail::split_plain(f[2], ',')) {
            auto it = g.api_index.find(api);
            if (it == g.api_index.end())
                throw ReferenceError("recommendation references API missing from graph: " + api);
            item.nodes.push_back(it->second);
        }
        item.raw_quality = detail::parse_double(f[3], r.lineno());
        item.norm_quality = detail::parse_double(f[4], r.lineno());
        item.cluster = static_cast<int>(detail::parse_int(f[5], r.lineno()));
        item.mmr = detail::parse_double(f[6], r.lineno());
        rf.items.push_back(std::move(item));
    }
    r.expect_exact("end");
    return rf;
}

inline void save_recommendations(const RecommendationFile& rf, const AssociationGraph& g,
                                 const std::string& path) {
    detail::write_file(path, serialize_recommendations(rf, g));
}

// ---- benchmark report ----------------------------------------------------------

inline std::string serialize_report(const BenchmarkReport& rep) {
    std::string out = "comprec-report v1\n";
    out += "config\tk " + std::to_string(rep.k) + "\tlambda " + detail::fmt_double(rep.lambda) +
           "\tgranularity " + std::to_string(rep.granularity) + "\tcandidates " +
           std::to_string(rep.max_candidates) + "\tclusters " + std::to_string(rep.k_clusters) +
           "\tseed " + std::to_string(rep.seed) + "\tgraphhash " + hash_to_hex(rep.graph_hash) +
           "\n";
    out += "rows " + std::to_string(rep.rows.size()) + "\n";
    for (const auto& row : rep.rows) {
        out += "row\t" + detail::join_tokens(row.keywords) + "\t" +
               std::to_string(row.candidate_count) + "\t" + std::to_string(row.list_size) +
               "\t" + detail::fmt_double(row.mp) + "\t" + detail::fmt_double(row.mid) + "\t" +
               detail::fmt_double(row.ms) + "\t" + detail::fmt_double(row.mq) + "\t" +
               detail::fmt_double(row.mq_norm) + "\t" + detail::fmt_double(row.tc) + "\t" +
               (row.success ? "1" : "0") + "\n";
    }
    out += "summary\tmp " + detail::fmt_double(rep.mp) + "\tmq " + detail::fmt_double(rep.mq) +
           "\tmqnorm " + detail::fmt_double(rep.mq_norm) + "\tmid " +
           detail::fmt_double(rep.mid) + "\tcoverage " + detail::fmt_double(rep.coverage) +
           "\tsr " + detail::fmt_double(rep.sr) + "\tms " + detail::fmt_double(rep.ms) +
           "\ttc " + detail::fmt_double(rep.mean_tc) + "\n";
    out += "end\n";
    return out;
}

inline BenchmarkReport load_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    detail::LineReader r(in);
    r.expect_exact("comprec-report v1");
    BenchmarkReport rep;

    auto kv = [&](const std::string& field, const std::string& key,
                  std::size_t lineno) -> std::string {
        if (field.rfind(key + " ", 0) != 0)
            throw ParseError("expected `" + key + "`, got: " + field, lineno);
        return field.substr(key.size() + 1);
    };

    {
        auto f = detail::fields(r.next(), 8, r.lineno());
        if (f[0] != "config") throw ParseError("expected config row", r.lineno());
        rep.k = static_cast<int>(detail::parse_int(kv(f[1], "k", r.lineno()), r.lineno()));
        rep.lambda = detail::parse_double(kv(f[2], "lambda", r.lineno()), r.lineno());
        rep.granularity = static_cast<int>(
            detail::parse_int(kv(f[3], "granularity", r.lineno()), r.lineno()));
        rep.max_candidates = static_cast<int>(
            detail::parse_int(kv(f[4], "candidates", r.lineno()), r.lineno()));
        rep.k_clusters = static_cast<int>(
            detail::parse_int(kv(f[5], "clusters", r.lineno()), r.lineno()));
        rep.seed = static_cast<std::uint64_t>(
            detail::parse_int(kv(f[6], "seed", r.lineno()), r.lineno()));
        rep.graph_hash = detail::parse_hash(kv(f[7], "graphhash", r.lineno()), r.lineno());
    }
    long long n = detail::parse_int(r.expect("rows"), r.lineno());
    for (long long i = 0; i < n; ++i) {
        auto f = detail::fields(r.next(), 11, r.lineno());
        if (f[0] != "row") throw ParseError("expected row", r.lineno());
        QueryMetrics row;
        row.keywords = detail::split_plain(f[1], ',');
        row.candidate_count = static_cast<int>(detail::parse_int(f[2], r.lineno()));
        row.list_size = static_cast<int>(detail::parse_int(f[3], r.lineno()));
        row.mp = detail::parse_double(f[4], r.lineno());
        row.mid = detail::parse_double(f[5], r.lineno());
        row.ms = detail::parse_double(f[6], r.lineno());
        row.mq = detail::parse_double(f[7], r.lineno());
        row.mq_norm = detail::parse_double(f[8], r.lineno());
        row.tc = detail::parse_double(f[9], r.lineno());
        row.success = f[10] == "1";
        rep.rows.push_back(std::move(row));
    }
    {
        auto f = detail::fields(r.next(), 9, r.lineno());
        if (f[0] != "summary") throw ParseError("expected summary row", r.lineno());
        rep.mp = detail::parse_double(kv(f[1], "mp", r.lineno()), r.lineno());
        rep.mq = detail::parse_double(kv(f[2], "mq", r.lineno()), r.lineno());
        rep.mq_norm = detail::parse_double(kv(f[3], "mqnorm", r.lineno()), r.lineno());
        rep.mid = detail::parse_double(kv(f[4], "mid", r.lineno()), r.lineno());
        rep.coverage = detail::parse_double(kv(f[5], "coverage", r.lineno()), r.lineno());
        rep.sr = detail::parse_double(kv(f[6], "sr", r.lineno()), r.lineno());
        rep.ms = detail::parse_double(kv(f[7], "ms", r.lineno()), r.lineno());
        rep.mean_tc = detail::parse_double(kv(f[8], "tc", r.lineno()), r.lineno());
    }
    r.expect_exact("end");
    return rep;
}

inline void save_report(const BenchmarkReport& rep, const std::string& path) {
    detail::write_file(path, serialize_report(rep));
}

// Human-readable summary table for terminals.
inline std::string report_table(const BenchmarkReport& rep) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "k=%d lambda=%.2f p=%d candidates=%d queries=%zu\n"
                  "  %-10s %-10s %-10s %-10s %-10s %-10s %-10s %-10s\n"
                  "  %-10.4f %-10.4f %-10.4f %-10.4f %-10.4f %-10.4f %-10.4f %-10.4f\n",
                  rep.k, rep.lambda, rep.granularity, rep.max_candidates, rep.rows.size(),
                  "MP", "MQ", "MQ(norm)", "MID", "Coverage", "SR", "MS", "TC(s)", rep.mp,
                  rep.mq, rep.mq_norm, rep.mid, rep.coverage, rep.sr, rep.ms, rep.mean_tc);
    return buf;
}

}  // namespace comprec
