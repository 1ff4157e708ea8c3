#pragma once

// Random-walk node embeddings over the uncompressed association graph:
// second-order biased walks (return / in-out parameters) feeding skip-gram
// with negative sampling. Deterministic for a fixed seed: one RNG stream,
// sequential walk generation and updates, no dynamic window shrinking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "comprec/detail/rng.hpp"
#include "comprec/errors.hpp"
#include "comprec/graph.hpp"
#include "comprec/steiner.hpp"

namespace comprec {

struct EmbeddingParams {
    int dimension = 128;
    int walks_per_node = 10;
    int walk_length = 80;
    int window = 10;
    double return_param = 1.0;  // node2vec p
    double inout_param = 1.0;   // node2vec q
    int negative_samples = 5;
    int epochs = 5;
    double learning_rate = 0.025;
    std::uint64_t seed = 1;

    void validate() const {
        if (dimension < 2) throw ArgumentError("embedding dimension must be >= 2");
        if (walks_per_node < 1 || walk_length < 1 || window < 1 ||
            negative_samples < 1 || epochs < 1)
            throw ArgumentError("embedding counts must be >= 1");
        if (learning_rate <= 0) throw ArgumentError("learning rate must be > 0");
        if (return_param <= 0 || inout_param <= 0)
            throw ArgumentError("walk bias parameters must be > 0");
    }
};

struct EmbeddingModel {
    int dimension = 0;
    std::uint64_t graph_hash = 0;
    EmbeddingParams params;
    std::vector<float> data;  // node-major, node_count x dimension

    std::size_t node_count() const {
        return dimension == 0 ? 0 : data.size() / static_cast<std::size_t>(dimension);
    }

    std::span<const float> vector_of(NodeId v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= node_count())
            throw RangeError("node id out of range in embedding model: " + std::to_string(v));
        return std::span<const float>(
            data.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(dimension),
            static_cast<std::size_t>(dimension));
    }
};

struct CompositionVector {
    std::vector<double> values;  // unit Euclidean norm
};

namespace detail {

inline double sigmoid(double x) {
    if (x > 12.0) return 1.0;
    if (x < -12.0) return 0.0;
    return 1.0 / (1.0 + std::exp(-x));
}

// One second-order biased walk. With p = q = 1 this is a plain uniform walk.
inline std::vector<NodeId> biased_walk(const AssociationGraph& g, NodeId start,
                                       const EmbeddingParams& params, SplitMix64& rng) {
    std::vector<NodeId> walk{start};
    NodeId prev = -1;
    NodeId cur = start;
    std::vector<double> weights;
    while (static_cast<int>(walk.size()) < params.walk_length) {
        const auto& nbrs = g.adjacency[static_cast<std::size_t>(cur)];
        if (nbrs.empty()) break;
        NodeId next;
        if (prev < 0 || (params.return_param == 1.0 && params.inout_param == 1.0)) {
            next = nbrs[static_cast<std::size_t>(rng.next_below(nbrs.size()))];
        } else {
            weights.resize(nbrs.size());
            double total = 0.0;
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                double w;
                if (nbrs[i] == prev)
                    w = 1.0 / params.return_param;
                else if (g.has_edge(nbrs[i], prev))
                    w = 1.0;
                else
                    w = 1.0 / params.inout_param;
                weights[i] = w;
                total += w;
            }
            next = nbrs[weighted_pick(rng, weights, total)];
        }
        walk.push_back(next);
        prev = cur;
        cur = next;
    }
    return walk;
}

}  // namespace detail

inline EmbeddingModel train_embeddings(const AssociationGraph& g,
                                       const EmbeddingParams& params = {}) {
    params.validate();
    const std::size_t n = g.nodes.size();
    if (n == 0) throw ArgumentError("cannot train embeddings on an empty graph");
    const std::size_t dim = static_cast<std::size_t>(params.dimension);

    SplitMix64 rng(params.seed);

    EmbeddingModel model;
    model.dimension = params.dimension;
    model.graph_hash = content_hash(g);
    model.params = params;
    model.data.resize(n * dim);
    for (float& x : model.data) x = (rng.next_float() - 0.5f) / static_cast<float>(dim);
    std::vector<float> context(n * dim, 0.0f);

    // Walk corpus, node-major then repeat; isolated nodes yield length-1
    // walks that produce no training pairs and keep their initial vectors.
    std::vector<std::vector<NodeId>> walks;
    walks.reserve(n * static_cast<std::size_t>(params.walks_per_node));
    for (int r = 0; r < params.walks_per_node; ++r)
        for (std::size_t v = 0; v < n; ++v)
            walks.push_back(detail::biased_walk(g, static_cast<NodeId>(v), params, rng));

    // Negative-sampling distribution: walk-corpus unigram counts ^ 0.75.
    std::vector<double> noise(n, 0.0);
    for (const auto& walk : walks)
        for (NodeId v : walk) noise[static_cast<std::size_t>(v)] += 1.0;
    std::vector<double> noise_cdf(n, 0.0);
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        total += std::pow(noise[v], 0.75);
        noise_cdf[v] = total;
    }
    auto sample_noise = [&]() -> NodeId {
        double x = rng.next_double() * total;
        auto it = std::lower_bound(noise_cdf.begin(), noise_cdf.end(), x);
        return static_cast<NodeId>(it - noise_cdf.begin());
    };

    std::size_t total_centers = 0;
    for (const auto& walk : walks) total_centers += walk.size();
    total_centers *= static_cast<std::size_t>(params.epochs);

    std::vector<float> grad(dim);
    std::size_t processed = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        for (const auto& walk : walks) {
            for (std::size_t i = 0; i < walk.size(); ++i) {
                ++processed;
                double frac = static_cast<double>(processed) / static_cast<double>(total_centers);
                float lr = static_cast<float>(
                    std::max(params.learning_rate * (1.0 - frac), params.learning_rate * 1e-4));
                const std::size_t center = static_cast<std::size_t>(walk[i]);
                float* vc = model.data.data() + center * dim;
                const std::size_t lo = i >= static_cast<std::size_t>(params.window)
                                           ? i - static_cast<std::size_t>(params.window)
                                           : 0;
                const std::size_t hi =
                    std::min(walk.size(), i + static_cast<std::size_t>(params.window) + 1);
                for (std::size_t j = lo; j < hi; ++j) {
                    if (j == i) continue;
                    std::fill(grad.begin(), grad.end(), 0.0f);
                    for (int s = 0; s <= params.negative_samples; ++s) {
                        std::size_t target;
                        float label;
                        if (s == 0) {
                            target = static_cast<std::size_t>(walk[j]);
                            label = 1.0f;
                        } else {
                            target = static_cast<std::size_t>(sample_noise());
                            if (target == static_cast<std::size_t>(walk[j])) continue;
                            label = 0.0f;
                        }
                        float* uo = context.data() + target * dim;
                        double dot = 0.0;
                        for (std::size_t d = 0; d < dim; ++d) dot += vc[d] * uo[d];
                        float gcoef = (label - static_cast<float>(detail::sigmoid(dot))) * lr;
                        for (std::size_t d = 0; d < dim; ++d) {
                            grad[d] += gcoef * uo[d];
                            uo[d] += gcoef * vc[d];
                        }
                    }
                    for (std::size_t d = 0; d < dim; ++d) vc[d] += grad[d];
                }
            }
        }
    }
    return model;
}

// Mean of the member vectors, scaled to unit norm.
inline CompositionVector composition_vector(const EmbeddingModel& model,
                                            const CandidateComposition& comp) {
    if (comp.nodes.empty()) throw ArgumentError("composition is empty");
    const std::size_t dim = static_cast<std::size_t>(model.dimension);
    std::vector<double> mean(dim, 0.0);
    for (NodeId v : comp.nodes) {
        auto vec = model.vector_of(v);
        for (std::size_t d = 0; d < dim; ++d) mean[d] += vec[d];
    }
    for (double& x : mean) x /= static_cast<double>(comp.nodes.size());
    double norm2 = 0.0;
    for (double x : mean) norm2 += x * x;
    if (norm2 == 0.0)
        throw DegenerateVectorError("composition mean vector is exactly zero");
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : mean) x *= inv;
    return CompositionVector{std::move(mean)};
}

// Cosine of two composition vectors; both are unit norm, so the plain dot
// product is the cosine.
inline double similarity(const CompositionVector& a, const CompositionVector& b) {
    if (a.values.size() != b.values.size())
        throw ArgumentError("composition vectors have different dimensions");
    double dot = 0.0;
    for (std::size_t d = 0; d < a.values.size(); ++d) dot += a.values[d] * b.values[d];
    return dot;
}

}  // namespace comprec
