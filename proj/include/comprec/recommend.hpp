#pragma once

// Top-k selection: quality-aware k-means defines a partition matroid over
// the candidate compositions, then a greedy fill plus swap search picks a
// diverse list whose members come from pairwise distinct clusters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "comprec/errors.hpp"
#include "comprec/scoring.hpp"

namespace comprec {

struct PartitionMatroid {
    std::vector<int> cluster_of;  // candidate index -> cluster id
    int k_clusters = 0;
};

struct RecommendationList {
    std::vector<int> items;  // candidate indices, at most one per cluster
};

// One committed swap, for instrumentation: the challenger's score beat the
// incumbent's against the identical remainder list.
struct SwapEvent {
    int in_candidate = 0;
    int out_candidate = 0;
    double in_score = 0.0;
    double out_score = 0.0;
};

struct SelectionTrace {
    std::vector<SwapEvent> swaps;
    int passes = 0;
};

inline bool is_independent(const std::vector<int>& s, const PartitionMatroid& m) {
    std::unordered_set<int> seen;
    for (int idx : s) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= m.cluster_of.size())
            throw RangeError("candidate index out of range: " + std::to_string(idx));
        if (!seen.insert(m.cluster_of[static_cast<std::size_t>(idx)]).second) return false;
    }
    return true;
}

namespace detail {

inline double cosine_distance(const CompositionVector& a, const std::vector<double>& center) {
    double dot = 0.0;
    for (std::size_t d = 0; d < a.values.size(); ++d) dot += a.values[d] * center[d];
    return 1.0 - dot;
}

}  // namespace detail

// K-means on cosine distance with quality-greedy farthest-point seeding:
// the first center is the highest-quality candidate; each further center is
// the candidate with maximal distance to its nearest chosen center, ties
// broken by higher quality then lower index. Lloyd iterations run until the
// assignment stops changing or max_iters; empty clusters are re-seeded with
// the point farthest from its assigned center.
inline PartitionMatroid quality_aware_kmeans(const std::vector<CompositionVector>& vectors,
                                             const std::vector<double>& qualities,
                                             int k_clusters, int max_iters = 100,
                                             std::uint64_t /*seed*/ = 0) {
    const std::size_t n = vectors.size();
    if (n == 0) throw ArgumentError("no candidates to cluster");
    if (qualities.size() != n) throw ArgumentError("qualities and vectors misaligned");
    if (k_clusters < 1 || static_cast<std::size_t>(k_clusters) > n)
        throw ArgumentError("k_clusters must be in [1, candidate count]");
    const std::size_t k = static_cast<std::size_t>(k_clusters);
    const std::size_t dim = vectors[0].values.size();

    auto better_tiebreak = [&](std::size_t a, std::size_t b) {
        // prefer higher quality, then lower index
        if (qualities[a] != qualities[b]) return qualities[a] > qualities[b];
        return a < b;
    };

    std::vector<std::vector<double>> centers;
    std::vector<char> is_center(n, 0);
    {
        std::size_t first = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (better_tiebreak(i, first)) first = i;
        centers.push_back(vectors[first].values);
        is_center[first] = 1;
    }
    std::vector<double> min_dist(n);
    while (centers.size() < k) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = detail::cosine_distance(vectors[i], centers[0]);
            for (std::size_t c = 1; c < centers.size(); ++c)
                best = std::min(best, detail::cosine_distance(vectors[i], centers[c]));
            min_dist[i] = best;
        }
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_center[i]) continue;
            if (pick == n || min_dist[i] > min_dist[pick] ||
                (min_dist[i] == min_dist[pick] && better_tiebreak(i, pick)))
                pick = i;
        }
        centers.push_back(vectors[pick].values);
        is_center[pick] = 1;
    }

    std::vector<int> assign(n, -1);
    auto assign_all = [&]() {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            // Nearest center; ties keep the current cluster (stops duplicate
            // vectors from oscillating and emptying a re-seeded cluster),
            // otherwise the lowest cluster id wins.
            int best = 0;
            double bd = detail::cosine_distance(vectors[i], centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                double d = detail::cosine_distance(vectors[i], centers[c]);
                if (d < bd || (d == bd && static_cast<int>(c) == assign[i])) {
                    bd = d;
                    best = static_cast<int>(c);
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        return changed;
    };

    assign_all();
    for (int iter = 0; iter < max_iters; ++iter) {
        // Re-seed any empty cluster with the point farthest from its center.
        std::vector<int> count(k, 0);
        for (std::size_t i = 0; i < n; ++i) count[static_cast<std::size_t>(assign[i])] += 1;
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] > 0) continue;
            std::size_t far = n;
            double far_dist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (count[static_cast<std::size_t>(assign[i])] <= 1) continue;
                double d = detail::cosine_distance(
                    vectors[i], centers[static_cast<std::size_t>(assign[i])]);
                if (d > far_dist) {
                    far_dist = d;
                    far = i;
                }
            }
            if (far == n) continue;
            count[static_cast<std::size_t>(assign[far])] -= 1;
            assign[far] = static_cast<int>(c);
            count[c] = 1;
            centers[c] = vectors[far].values;
        }

        // Spherical center update: normalized mean of the members.
        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            auto& s = sums[static_cast<std::size_t>(assign[i])];
            for (std::size_t d = 0; d < dim; ++d) s[d] += vectors[i].values[d];
        }
        for (std::size_t c = 0; c < k; ++c) {
            double norm2 = 0.0;
            for (double x : sums[c]) norm2 += x * x;
            if (norm2 > 0.0) {
                double inv = 1.0 / std::sqrt(norm2);
                for (double& x : sums[c]) x *= inv;
                centers[c] = std::move(sums[c]);
            }
            // Degenerate mean keeps the previous center.
        }

        if (!assign_all()) break;
    }

    PartitionMatroid m;
    m.cluster_of = std::move(assign);
    m.k_clusters = k_clusters;
    return m;
}

namespace detail {

inline std::vector<int> quality_order(const std::vector<double>& qualities_norm) {
    std::vector<int> order(qualities_norm.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double qa = qualities_norm[static_cast<std::size_t>(a)];
        const double qb = qualities_norm[static_cast<std::size_t>(b)];
        return qa != qb ? qa > qb : a < b;
    });
    return order;
}

}  // namespace detail

// Aggregate MMR objective of a list: each member's lambda-weighted quality
// minus its maximum similarity to the rest of the list.
inline double list_mmr_potential(const std::vector<double>& qualities_norm,
                                 const std::vector<CompositionVector>& vectors,
                                 const MmrParams& params, const std::vector<int>& list) {
    double total = 0.0;
    for (std::size_t i = 0; i < list.size(); ++i) {
        double max_sim = 0.0;
        bool first = true;
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (i == j) continue;
            double s = similarity(vectors[static_cast<std::size_t>(list[i])],
                                  vectors[static_cast<std::size_t>(list[j])]);
            if (first || s > max_sim) {
                max_sim = s;
                first = false;
            }
        }
        total += params.lambda * qualities_norm[static_cast<std::size_t>(list[i])] -
                 (1.0 - params.lambda) * max_sim;
    }
    return total;
}

// One swap pass over every candidate in descending normalized quality: a
// candidate replaces a list member when its cluster stays unique in the
// remainder and its MMR score against that remainder strictly beats the
// member's. A committed swap must also strictly raise the list's aggregate
// MMR potential; the pairwise test alone admits endless A/B oscillation,
// while the potential can only climb through finitely many list states.
// Mutates `list` in place and returns the number of swaps.
inline int swap_pass(const std::vector<double>& qualities_norm,
                     const std::vector<CompositionVector>& vectors,
                     const PartitionMatroid& matroid, const MmrParams& params,
                     std::vector<int>& list, SelectionTrace* trace = nullptr) {
    const std::size_t n = qualities_norm.size();
    if (vectors.size() != n || matroid.cluster_of.size() != n)
        throw ArgumentError("candidate inputs misaligned");
    params.validate();

    auto mmr_against = [&](int idx, const std::vector<int>& others) {
        std::vector<CompositionVector> vecs;
        vecs.reserve(others.size());
        for (int o : others) vecs.push_back(vectors[static_cast<std::size_t>(o)]);
        return mmr_score(qualities_norm[static_cast<std::size_t>(idx)],
                         vectors[static_cast<std::size_t>(idx)], vecs, params);
    };

    int swaps = 0;
    std::unordered_set<int> in_list(list.begin(), list.end());
    double potential = list_mmr_potential(qualities_norm, vectors, params, list);
    for (int challenger : detail::quality_order(qualities_norm)) {
        if (in_list.count(challenger)) continue;
        const int c = matroid.cluster_of[static_cast<std::size_t>(challenger)];
        for (std::size_t pos = 0; pos < list.size(); ++pos) {
            const int incumbent = list[pos];
            std::vector<int> remainder;
            remainder.reserve(list.size() - 1);
            bool cluster_clash = false;
            for (std::size_t q = 0; q < list.size(); ++q) {
                if (q == pos) continue;
                remainder.push_back(list[q]);
                if (matroid.cluster_of[static_cast<std::size_t>(list[q])] == c)
                    cluster_clash = true;
            }
            if (cluster_clash) continue;
            const double in_score = mmr_against(challenger, remainder);
            const double out_score = mmr_against(incumbent, remainder);
            if (in_score <= out_score) continue;
            std::vector<int> swapped = list;
            swapped[pos] = challenger;
            const double new_potential =
                list_mmr_potential(qualities_norm, vectors, params, swapped);
            if (new_potential <= potential) continue;
            list = std::move(swapped);
            potential = new_potential;
            in_list.erase(incumbent);
            in_list.insert(challenger);
            if (trace)
                trace->swaps.push_back(SwapEvent{challenger, incumbent, in_score, out_score});
            ++swaps;
            break;  // next challenger
        }
    }
    return swaps;
}

// Greedy fill by descending normalized quality (one item per fresh cluster),
// then swap passes repeated until a full pass commits nothing, so the output
// is swap-stable. swap_passes >= 0 caps the number of passes instead.
inline RecommendationList greedy_swap_select(const std::vector<CandidateComposition>& candidates,
                                             const std::vector<double>& qualities_norm,
                                             const std::vector<CompositionVector>& vectors,
                                             const PartitionMatroid& matroid, int k,
                                             const MmrParams& params, int swap_passes = -1,
                                             SelectionTrace* trace = nullptr) {
    const std::size_t n = candidates.size();
    if (n == 0) throw ArgumentError("no candidates to select from");
    if (qualities_norm.size() != n || vectors.size() != n ||
        matroid.cluster_of.size() != n)
        throw ArgumentError("candidate inputs misaligned");
    if (k < 1) throw ArgumentError("k must be >= 1");
    params.validate();
    if (matroid.k_clusters < k)
        throw InfeasibleError("matroid has fewer clusters than k");

    // Phase 1: best quality per fresh cluster until the list holds k items.
    std::vector<int> list;
    std::unordered_set<int> used_clusters;
    for (int idx : detail::quality_order(qualities_norm)) {
        if (static_cast<int>(list.size()) == k) break;
        int c = matroid.cluster_of[static_cast<std::size_t>(idx)];
        if (used_clusters.insert(c).second) list.push_back(idx);
    }
    if (static_cast<int>(list.size()) < k)
        throw InfeasibleError("fewer than k distinct clusters among candidates");

    // Phase 2.
    const int max_passes = swap_passes >= 0 ? swap_passes : 1000;
    int passes = 0;
    while (passes < max_passes) {
        ++passes;
        if (swap_pass(qualities_norm, vectors, matroid, params, list, trace) == 0) break;
    }
    if (trace) trace->passes = passes;

    RecommendationList out;
    out.items = std::move(list);
    return out;
}

}  // namespace comprec
