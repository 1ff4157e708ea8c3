#pragma once

// Minimum group Steiner tree search over the supergraph.
//
// Best-first dynamic programming over states keyed by (root supernode,
// covered-keyword mask). A state stores the concrete supernode set of its
// tree, so weights stay exact even when merged subtrees overlap. Transitions:
//   grow   — extend a tree rooted at sv to a neighbouring root su
//   merge  — combine two trees sharing the root whose masks each add keywords
// Full-coverage states are emitted in pop order (ascending weight), at most
// one per root supernode.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "comprec/compress.hpp"
#include "comprec/detail/bitset.hpp"
#include "comprec/errors.hpp"
#include "comprec/graph.hpp"

namespace comprec {

inline constexpr std::size_t kMaxQueryKeywords = 16;

struct SteinerTree {
    SuperId root = 0;
    std::uint32_t covered = 0;  // bit i <=> query keyword i covered
    int weight = 0;             // sum of supernode weights
    std::vector<SuperId> supernodes;                     // ascending
    std::vector<std::pair<SuperId, SuperId>> superedges; // a spanning tree of the set
};

struct CandidateComposition {
    std::vector<NodeId> nodes;                  // ascending, connected in the original graph
    std::vector<std::string> covered_keywords;  // the query keywords
    std::size_t size() const { return nodes.size(); }
};

struct SolveBudget {
    std::int64_t max_pops = 5'000'000;
    double wall_time_secs = 30.0;
};

namespace detail {

constexpr std::int32_t kInfWeight = INT32_MAX;

struct DpEntry {
    std::int32_t weight = kInfWeight;
    bool settled = false;
    NodeBitset set;  // supernodes of the tree this entry describes
};

// State table keyed by root * mask_count + mask. Dense array when that
// product is small enough, hashed otherwise (long queries on big graphs).
class DpTable {
public:
    DpTable(std::size_t roots, std::size_t mask_count)
        : roots_(roots), mask_count_(mask_count) {
        if (roots_ * mask_count_ <= (1u << 22)) {
            dense_.resize(roots_ * mask_count_);
        } else {
            sparse_.reserve(1 << 16);
            sparse_masks_.resize(roots_);
        }
    }

    DpEntry* find(std::size_t root, std::uint32_t mask) {
        if (!dense_.empty()) {
            DpEntry& e = dense_[root * mask_count_ + mask];
            return e.weight == kInfWeight ? nullptr : &e;
        }
        auto it = sparse_.find(key(root, mask));
        return it == sparse_.end() ? nullptr : &it->second;
    }

    DpEntry& slot(std::size_t root, std::uint32_t mask) {
        if (!dense_.empty()) return dense_[root * mask_count_ + mask];
        auto [it, inserted] = sparse_.try_emplace(key(root, mask));
        if (inserted) sparse_masks_[root].push_back(mask);
        return it->second;
    }

    // Visits every stored mask for one root.
    template <typename Fn>
    void for_each_mask(std::size_t root, Fn&& fn) {
        if (!dense_.empty()) {
            for (std::uint32_t m = 1; m < mask_count_; ++m) {
                DpEntry& e = dense_[root * mask_count_ + m];
                if (e.weight != kInfWeight) fn(m, e);
            }
            return;
        }
        for (std::uint32_t m : sparse_masks_[root]) {
            auto it = sparse_.find(key(root, m));
            if (it != sparse_.end() && it->second.weight != kInfWeight) fn(m, it->second);
        }
    }

private:
    static std::uint64_t key(std::size_t root, std::uint32_t mask) {
        return (static_cast<std::uint64_t>(root) << 20) | mask;
    }
    std::size_t roots_;
    std::size_t mask_count_;
    std::vector<DpEntry> dense_;
    std::unordered_map<std::uint64_t, DpEntry> sparse_;
    std::vector<std::vector<std::uint32_t>> sparse_masks_;
};

// Queue key packs (weight, root, mask) so a single integer compare gives a
// deterministic ascending order.
inline std::uint64_t pack_key(std::int64_t weight, std::size_t root, std::uint32_t mask) {
    return (static_cast<std::uint64_t>(weight) << 40) |
           (static_cast<std::uint64_t>(root) << 16) | mask;
}

}  // namespace detail

inline std::vector<SteinerTree> solve_mgst(const SuperGraph& sg,
                                           const std::vector<std::string>& query_keywords,
                                           int max_candidates = 500,
                                           const SolveBudget& budget = {}) {
    const std::size_t l = query_keywords.size();
    if (l == 0) throw ArgumentError("query has no keywords");
    if (l > kMaxQueryKeywords)
        throw ArgumentError("query has more than 16 keywords");
    if (max_candidates < 1) throw ArgumentError("max_candidates must be >= 1");
    {
        std::unordered_set<std::string> distinct(query_keywords.begin(), query_keywords.end());
        if (distinct.size() != l) throw ArgumentError("query keywords must be distinct");
    }

    const std::size_t sn = sg.supernode_count();
    const std::uint32_t full = (1u << l) - 1;
    const std::uint32_t mask_count = full + 1;

    // Keyword mask per supernode, from the original graph's keyword index.
    std::vector<std::uint32_t> sv_mask(sn, 0);
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < l; ++i) {
        auto it = sg.original.keyword_index.find(query_keywords[i]);
        if (it == sg.original.keyword_index.end() || it->second.empty()) {
            missing.push_back(query_keywords[i]);
            continue;
        }
        for (NodeId v : it->second)
            sv_mask[static_cast<std::size_t>(sg.owner[static_cast<std::size_t>(v)])] |=
                (1u << i);
    }
    if (!missing.empty()) {
        std::string msg = "no node covers keyword(s):";
        for (const auto& k : missing) msg += " " + k;
        throw UnsatisfiableKeywordError(msg, missing);
    }

    detail::DpTable table(sn, mask_count);
    std::priority_queue<std::uint64_t, std::vector<std::uint64_t>, std::greater<>> queue;
    std::vector<char> emitted(sn, 0);
    std::vector<SteinerTree> results;

    for (std::size_t sv = 0; sv < sn; ++sv) {
        std::uint32_t mask = sv_mask[sv];
        if (mask == 0) continue;
        detail::DpEntry& e = table.slot(sv, mask);
        std::int32_t w = sg.supernodes[sv].weight;
        if (w < e.weight) {
            e.weight = w;
            e.set = NodeBitset(sn);
            e.set.set(sv);
            queue.push(detail::pack_key(w, sv, mask));
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::int64_t pops = 0;
    bool budget_hit = false;

    while (!queue.empty()) {
        if (static_cast<int>(results.size()) >= max_candidates) break;
        if (++pops > budget.max_pops) {
            budget_hit = true;
            break;
        }
        if ((pops & 1023) == 0) {
            double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
            if (elapsed > budget.wall_time_secs) {
                budget_hit = true;
                break;
            }
        }

        std::uint64_t key = queue.top();
        queue.pop();
        const std::int32_t weight = static_cast<std::int32_t>(key >> 40);
        const std::size_t root = static_cast<std::size_t>((key >> 16) & 0xffffff);
        const std::uint32_t mask = static_cast<std::uint32_t>(key & 0xffff);

        detail::DpEntry* entry = table.find(root, mask);
        if (entry == nullptr || entry->settled || entry->weight != weight) continue;
        entry->settled = true;
        // Copy out: slot() below may rehash the sparse table and move entries.
        const NodeBitset set0 = entry->set;

        if (mask == full) {
            if (!emitted[root]) {
                emitted[root] = 1;
                SteinerTree tree;
                tree.root = static_cast<SuperId>(root);
                tree.covered = mask;
                tree.weight = weight;
                set0.for_each(
                    [&](std::size_t s) { tree.supernodes.push_back(static_cast<SuperId>(s)); });
                // Spanning tree of the set, BFS from the root.
                std::unordered_set<SuperId> in_set(tree.supernodes.begin(),
                                                   tree.supernodes.end());
                std::unordered_set<SuperId> visited{tree.root};
                std::vector<SuperId> frontier{tree.root};
                while (!frontier.empty()) {
                    std::vector<SuperId> next;
                    for (SuperId s : frontier) {
                        for (SuperId nb : sg.adjacency[static_cast<std::size_t>(s)]) {
                            if (!in_set.count(nb) || visited.count(nb)) continue;
                            visited.insert(nb);
                            tree.superedges.emplace_back(s, nb);
                            next.push_back(nb);
                        }
                    }
                    frontier = std::move(next);
                }
                results.push_back(std::move(tree));
            }
            continue;
        }

        // Grow: carry this tree to each neighbouring root.
        for (SuperId su : sg.adjacency[root]) {
            const std::size_t nsu = static_cast<std::size_t>(su);
            const bool inside = set0.test(nsu);
            const std::int32_t nw = weight + (inside ? 0 : sg.supernodes[nsu].weight);
            detail::DpEntry& target = table.slot(nsu, mask);
            if (nw < target.weight) {
                target.weight = nw;
                target.set = set0;
                if (!inside) target.set.set(nsu);
                target.settled = false;
                queue.push(detail::pack_key(nw, nsu, mask));
            }
        }

        // Merge with every stored state at the same root whose mask adds
        // keywords (table scan, so already-settled states stay mergeable).
        // Overlapping masks are allowed: supernodes can carry several query
        // keywords at once, and demanding disjoint splits would make some
        // covers unreachable. Union weights stay exact because states carry
        // their supernode sets.
        std::vector<std::pair<std::uint32_t, std::int32_t>> merges;
        table.for_each_mask(root, [&](std::uint32_t m2, detail::DpEntry& other) {
            const std::uint32_t uni = m2 | mask;
            if (uni == mask || uni == m2) return;  // nothing new on one side
            // Union weight = w1 + w2 - weight of shared supernodes.
            std::int32_t shared = 0;
            set0.for_each_common(other.set, [&](std::size_t s) {
                shared += sg.supernodes[s].weight;
            });
            merges.emplace_back(m2, static_cast<std::int32_t>(weight + other.weight - shared));
        });
        for (const auto& [m2, wu] : merges) {
            detail::DpEntry& target = table.slot(root, mask | m2);
            if (wu < target.weight) {
                const detail::DpEntry* other = table.find(root, m2);
                target.weight = wu;
                target.set = set0;
                target.set.union_with(other->set);
                target.settled = false;
                queue.push(detail::pack_key(wu, root, mask | m2));
            }
        }
    }

    if (budget_hit && results.empty())
        throw SolveTimeoutError("search budget exhausted before any covering tree was found");
    return results;
}

// Expands a tree's supernodes to their ancestor nodes, then repeatedly drops
// nodes that are redundant for coverage, committing a removal only when the
// induced subgraph stays connected and still covers every query keyword.
// Removal order: ascending times(v), ties by node id.
inline CandidateComposition decompress_and_prune(
    const SteinerTree& tree, const SuperGraph& sg,
    const std::vector<std::string>& query_keywords) {
    const AssociationGraph& g = sg.original;

    std::vector<NodeId> nodes;
    for (SuperId s : tree.supernodes) {
        const auto& anc = sg.supernodes[static_cast<std::size_t>(s)].ancestors;
        nodes.insert(nodes.end(), anc.begin(), anc.end());
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::unordered_set<std::string> query(query_keywords.begin(), query_keywords.end());
    auto contribution = [&](NodeId v) {
        std::vector<std::string> c;
        for (const auto& kw : g.nodes[static_cast<std::size_t>(v)].keywords)
            if (query.count(kw)) c.push_back(kw);
        return c;
    };

    std::unordered_set<NodeId> alive(nodes.begin(), nodes.end());
    auto covers_all_without = [&](NodeId skip) {
        std::unordered_set<std::string> seen;
        for (NodeId v : alive) {
            if (v == skip) continue;
            for (const auto& kw : contribution(v)) seen.insert(kw);
        }
        return seen.size() == query.size();
    };
    auto connected_without = [&](NodeId skip) {
        if (alive.size() <= 1) return true;
        NodeId start = -1;
        for (NodeId v : alive)
            if (v != skip) {
                start = v;
                break;
            }
        if (start < 0) return false;
        std::unordered_set<NodeId> visited{start};
        std::vector<NodeId> stack{start};
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (NodeId nb : g.adjacency[static_cast<std::size_t>(v)]) {
                if (nb == skip || !alive.count(nb) || visited.count(nb)) continue;
                visited.insert(nb);
                stack.push_back(nb);
            }
        }
        return visited.size() == alive.size() - 1;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<NodeId> order(alive.begin(), alive.end());
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            int ta = g.nodes[static_cast<std::size_t>(a)].times_used;
            int tb = g.nodes[static_cast<std::size_t>(b)].times_used;
            return ta != tb ? ta < tb : a < b;
        });
        for (NodeId v : order) {
            if (alive.size() == 1) break;
            if (!covers_all_without(v)) continue;
            if (!connected_without(v)) continue;
            alive.erase(v);
            changed = true;
        }
    }

    CandidateComposition comp;
    comp.nodes.assign(alive.begin(), alive.end());
    std::sort(comp.nodes.begin(), comp.nodes.end());
    comp.covered_keywords = query_keywords;
    return comp;
}

struct BruteForceResult {
    bool found = false;
    int size = 0;
    std::vector<NodeId> witness;
};

// Exhaustive oracle: smallest connected node subset covering every query
// keyword, enumerated in ascending subset size. Test-grade, |V| <= max_nodes.
inline BruteForceResult brute_force_mgst(const AssociationGraph& g,
                                         const std::vector<std::string>& query_keywords,
                                         int max_nodes = 14) {
    const int n = static_cast<int>(g.nodes.size());
    if (n > max_nodes) throw ArgumentError("graph too large for brute force");
    const std::size_t l = query_keywords.size();
    if (l == 0 || l > kMaxQueryKeywords) throw ArgumentError("bad query size");

    std::vector<std::uint32_t> node_mask(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < l; ++i) {
        auto it = g.keyword_index.find(query_keywords[i]);
        if (it == g.keyword_index.end()) return {};  // uncoverable -> none
        for (NodeId v : it->second) node_mask[static_cast<std::size_t>(v)] |= (1u << i);
    }
    const std::uint32_t full = (1u << l) - 1;

    auto connected = [&](std::uint32_t subset) {
        int start = std::countr_zero(subset);
        std::uint32_t visited = 1u << start;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (NodeId nb : g.adjacency[static_cast<std::size_t>(v)]) {
                std::uint32_t bit = 1u << nb;
                if ((subset & bit) && !(visited & bit)) {
                    visited |= bit;
                    stack.push_back(nb);
                }
            }
        }
        return visited == subset;
    };

    for (int size = 1; size <= n; ++size) {
        // All subsets of this popcount, ascending numeric order.
        for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
            if (std::popcount(subset) != size) continue;
            std::uint32_t covered = 0;
            for (std::uint32_t rest = subset; rest;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                covered |= node_mask[static_cast<std::size_t>(v)];
            }
            if (covered != full || !connected(subset)) continue;
            BruteForceResult r;
            r.found = true;
            r.size = size;
            for (std::uint32_t rest = subset; rest;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                r.witness.push_back(v);
            }
            return r;
        }
    }
    return {};
}

}  // namespace comprec
