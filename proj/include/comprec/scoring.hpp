#pragma once

// Composition quality from historical usage counts, batch min-max
// normalization, and the quality-vs-similarity MMR score.

#include <algorithm>
#include <vector>

#include "comprec/embedding.hpp"
#include "comprec/errors.hpp"
#include "comprec/graph.hpp"
#include "comprec/steiner.hpp"

namespace comprec {

struct MmrParams {
    double lambda = 0.5;  // in [0, 1]; higher emphasizes quality

    void validate() const {
        if (lambda < 0.0 || lambda > 1.0) throw ArgumentError("lambda must be in [0, 1]");
    }
};

// Quality(T) = sum of member usage counts / |T|
//            + sum of co-invocation counts over member pairs adjacent in G / |T|^2.
// The pair sum runs over all unordered member pairs joined by a graph edge;
// a tree has no canonical node sequence to walk.
inline double quality(const AssociationGraph& g, const CandidateComposition& t) {
    if (t.nodes.empty()) throw ArgumentError("composition is empty");
    double node_sum = 0.0;
    for (NodeId v : t.nodes) node_sum += times(g, v);
    double pair_sum = 0.0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < t.nodes.size(); ++j)
            pair_sum += times_pair(g, t.nodes[i], t.nodes[j]);
    const double size = static_cast<double>(t.nodes.size());
    return node_sum / size + pair_sum / (size * size);
}

// Min-max over the batch; a constant batch maps to all ones.
inline std::vector<double> normalize_batch(const std::vector<double>& qualities) {
    if (qualities.empty()) throw ArgumentError("cannot normalize an empty batch");
    auto [mn_it, mx_it] = std::minmax_element(qualities.begin(), qualities.end());
    const double mn = *mn_it, mx = *mx_it;
    std::vector<double> out(qualities.size());
    if (mx == mn) {
        std::fill(out.begin(), out.end(), 1.0);
    } else {
        for (std::size_t i = 0; i < qualities.size(); ++i)
            out[i] = (qualities[i] - mn) / (mx - mn);
    }
    return out;
}

// lambda * quality - (1 - lambda) * max similarity to the current list;
// the max over an empty list is 0, so the first pick is quality-driven.
inline double mmr_score(double t_norm_quality, const CompositionVector& t_vector,
                        const std::vector<CompositionVector>& current_list_vectors,
                        const MmrParams& params) {
    params.validate();
    double max_sim = 0.0;
    bool first = true;
    for (const auto& s : current_list_vectors) {
        double sim = similarity(t_vector, s);
        if (first || sim > max_sim) {
            max_sim = sim;
            first = false;
        }
    }
    if (current_list_vectors.empty()) max_sim = 0.0;
    return params.lambda * t_norm_quality - (1.0 - params.lambda) * max_sim;
}

}  // namespace comprec
