#pragma once

// The API association graph: one node per API seen in the records, one
// undirected edge per API pair co-used in at least one record. Nodes carry
// keywords and usage counts, edges carry co-invocation counts.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "comprec/corpus.hpp"
#include "comprec/detail/hash.hpp"
#include "comprec/errors.hpp"

namespace comprec {

using NodeId = std::int32_t;

enum class KeywordMode {
    functional_only,  // first category keyword per API
    all_categories,   // every category keyword per API
};

struct ApiNode {
    NodeId id = 0;
    std::string api_id;
    std::vector<std::string> keywords;  // sorted, unique, non-empty
    int times_used = 0;                 // records containing this API
};

struct ApiEdge {
    NodeId u = 0;  // u < v
    NodeId v = 0;
    int co_invocations = 0;  // records containing both endpoints
};

struct AssociationGraph {
    std::vector<ApiNode> nodes;
    std::vector<ApiEdge> edges;                  // sorted by (u, v)
    std::vector<std::vector<NodeId>> adjacency;  // sorted neighbor lists
    std::unordered_map<std::string, std::vector<NodeId>> keyword_index;
    std::unordered_map<std::string, NodeId> api_index;

    std::size_t node_count() const { return nodes.size(); }

    const ApiNode& node(NodeId id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= nodes.size())
            throw RangeError("node id out of range: " + std::to_string(id));
        return nodes[static_cast<std::size_t>(id)];
    }

    bool has_edge(NodeId u, NodeId v) const { return edge_counts_.count(pair_key(u, v)) != 0; }

    // Internal pair-count map, rebuilt alongside edges.
    std::unordered_map<std::uint64_t, int> edge_counts_;
    static std::uint64_t pair_key(NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
               static_cast<std::uint32_t>(v);
    }
};

// Times(v): how many records contain the API.
inline int times(const AssociationGraph& g, NodeId v) { return g.node(v).times_used; }

// Times(u, v): how many records contain both APIs; 0 for non-adjacent pairs.
inline int times_pair(const AssociationGraph& g, NodeId u, NodeId v) {
    g.node(u);
    g.node(v);
    if (u == v) throw RangeError("times_pair: self-pair forbidden");
    auto it = g.edge_counts_.find(AssociationGraph::pair_key(u, v));
    return it == g.edge_counts_.end() ? 0 : it->second;
}

inline AssociationGraph build_graph(const std::vector<MashupRecord>& records,
                                    const std::vector<CatalogEntry>& catalog,
                                    KeywordMode mode = KeywordMode::functional_only) {
    std::unordered_map<std::string, const CatalogEntry*> by_id;
    for (const auto& e : catalog) by_id[e.api_id] = &e;

    AssociationGraph g;
    auto node_of = [&](const std::string& api) -> NodeId {
        auto it = g.api_index.find(api);
        if (it != g.api_index.end()) return it->second;
        auto cat = by_id.find(api);
        if (cat == by_id.end())
            throw ReferenceError("record references API missing from catalog: " + api);
        ApiNode n;
        n.id = static_cast<NodeId>(g.nodes.size());
        n.api_id = api;
        if (mode == KeywordMode::functional_only) {
            n.keywords = {functional_keyword(*cat->second)};
        } else {
            n.keywords = cat->second->category_keywords;
            std::sort(n.keywords.begin(), n.keywords.end());
            n.keywords.erase(std::unique(n.keywords.begin(), n.keywords.end()),
                             n.keywords.end());
        }
        g.api_index.emplace(api, n.id);
        g.nodes.push_back(std::move(n));
        return g.nodes.back().id;
    };

    for (const auto& rec : records) {
        std::vector<NodeId> ids;
        ids.reserve(rec.apis.size());
        for (const auto& api : rec.apis) ids.push_back(node_of(api));
        for (NodeId id : ids) g.nodes[static_cast<std::size_t>(id)].times_used += 1;
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j)
                g.edge_counts_[AssociationGraph::pair_key(ids[i], ids[j])] += 1;
    }

    g.edges.reserve(g.edge_counts_.size());
    for (const auto& [key, count] : g.edge_counts_) {
        ApiEdge e;
        e.u = static_cast<NodeId>(key >> 32);
        e.v = static_cast<NodeId>(key & 0xffffffffULL);
        e.co_invocations = count;
        g.edges.push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const ApiEdge& a, const ApiEdge& b) {
                  return a.u != b.u ? a.u < b.u : a.v < b.v;
              });

    g.adjacency.assign(g.nodes.size(), {});
    for (const auto& e : g.edges) {
        g.adjacency[static_cast<std::size_t>(e.u)].push_back(e.v);
        g.adjacency[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());

    for (const auto& n : g.nodes)
        for (const auto& kw : n.keywords) g.keyword_index[kw].push_back(n.id);
    for (auto& [kw, ids] : g.keyword_index) std::sort(ids.begin(), ids.end());

    return g;
}

// Hash over the canonical content (nodes with counts and keywords, edges
// with counts). Derived artifacts embed this value so downstream stages can
// refuse mismatched inputs.
inline std::uint64_t content_hash(const AssociationGraph& g) {
    Fnv1a64 h;
    auto num = [&](long long v) { h.update(std::to_string(v)).update("\x1f"); };
    auto str = [&](const std::string& s) { h.update(s).update("\x1f"); };
    num(static_cast<long long>(g.nodes.size()));
    for (const auto& n : g.nodes) {
        str(n.api_id);
        num(n.times_used);
        for (const auto& kw : n.keywords) str(kw);
        h.update("\x1e");
    }
    num(static_cast<long long>(g.edges.size()));
    for (const auto& e : g.edges) {
        num(e.u);
        num(e.v);
        num(e.co_invocations);
    }
    return h.digest();
}

// Per query keyword, the (possibly empty) set of nodes carrying it. An empty
// set signals an unsatisfiable keyword; the caller decides what to do.
inline std::unordered_map<std::string, std::vector<NodeId>> keyword_cover_sets(
    const AssociationGraph& g, const Query& q) {
    std::unordered_map<std::string, std::vector<NodeId>> cover;
    for (const auto& kw : q.keywords) {
        auto it = g.keyword_index.find(kw);
        cover[kw] = it == g.keyword_index.end() ? std::vector<NodeId>{} : it->second;
    }
    return cover;
}

}  // namespace comprec
