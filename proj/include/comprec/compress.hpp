#pragma once

// Reachability-preserving graph compression. Supernodes absorb up to p
// connected original nodes; superedges mirror original edges across
// supernode boundaries, so connectivity between supernodes matches
// connectivity between their ancestor sets exactly.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "comprec/errors.hpp"
#include "comprec/graph.hpp"

namespace comprec {

using SuperId = std::int32_t;

struct SuperNode {
    SuperId id = 0;
    std::vector<NodeId> ancestors;      // ascending, induce a connected subgraph
    int weight = 0;                     // |ancestors|
    std::vector<std::string> keywords;  // union of ancestor keywords, sorted unique
};

struct SuperGraph {
    AssociationGraph original;
    int granularity = 1;
    std::vector<SuperNode> supernodes;
    std::vector<std::pair<SuperId, SuperId>> superedges;  // (si < sj), sorted
    std::vector<std::vector<SuperId>> adjacency;          // sorted neighbor lists
    std::vector<SuperId> owner;                           // node_id -> super_id

    std::size_t supernode_count() const { return supernodes.size(); }
};

inline SuperId owner_of(const SuperGraph& sg, NodeId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= sg.owner.size())
        throw RangeError("node id out of range: " + std::to_string(v));
    return sg.owner[static_cast<std::size_t>(v)];
}

// Deterministic rule: seeds are taken in ascending node id; each step absorbs
// the smallest-id unused neighbor of the current set.
inline SuperGraph compress(const AssociationGraph& g, int p) {
    if (p < 1) throw ArgumentError("compression granularity must be >= 1");

    SuperGraph sg;
    sg.original = g;
    sg.granularity = p;
    const std::size_t n = g.nodes.size();
    sg.owner.assign(n, -1);

    std::vector<char> used(n, 0);
    for (NodeId seed = 0; static_cast<std::size_t>(seed) < n; ++seed) {
        if (used[static_cast<std::size_t>(seed)]) continue;
        std::vector<NodeId> members{seed};
        used[static_cast<std::size_t>(seed)] = 1;
        std::set<NodeId> frontier;  // unused neighbors of the member set
        for (NodeId nb : g.adjacency[static_cast<std::size_t>(seed)])
            if (!used[static_cast<std::size_t>(nb)]) frontier.insert(nb);
        while (static_cast<int>(members.size()) < p && !frontier.empty()) {
            NodeId pick = *frontier.begin();
            frontier.erase(frontier.begin());
            members.push_back(pick);
            used[static_cast<std::size_t>(pick)] = 1;
            for (NodeId nb : g.adjacency[static_cast<std::size_t>(pick)])
                if (!used[static_cast<std::size_t>(nb)]) frontier.insert(nb);
        }
        SuperNode sv;
        sv.id = static_cast<SuperId>(sg.supernodes.size());
        std::sort(members.begin(), members.end());
        sv.weight = static_cast<int>(members.size());
        for (NodeId m : members) {
            sg.owner[static_cast<std::size_t>(m)] = sv.id;
            const auto& kws = g.nodes[static_cast<std::size_t>(m)].keywords;
            sv.keywords.insert(sv.keywords.end(), kws.begin(), kws.end());
        }
        sv.ancestors = std::move(members);
        std::sort(sv.keywords.begin(), sv.keywords.end());
        sv.keywords.erase(std::unique(sv.keywords.begin(), sv.keywords.end()),
                          sv.keywords.end());
        sg.supernodes.push_back(std::move(sv));
    }

    std::set<std::pair<SuperId, SuperId>> se;
    for (const auto& e : g.edges) {
        SuperId a = sg.owner[static_cast<std::size_t>(e.u)];
        SuperId b = sg.owner[static_cast<std::size_t>(e.v)];
        if (a == b) continue;  // intra-supernode edges are implied by ancestor connectivity
        se.insert({std::min(a, b), std::max(a, b)});
    }
    sg.superedges.assign(se.begin(), se.end());

    sg.adjacency.assign(sg.supernodes.size(), {});
    for (const auto& [a, b] : sg.superedges) {
        sg.adjacency[static_cast<std::size_t>(a)].push_back(b);
        sg.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nbrs : sg.adjacency) std::sort(nbrs.begin(), nbrs.end());

    return sg;
}

}  // namespace comprec
