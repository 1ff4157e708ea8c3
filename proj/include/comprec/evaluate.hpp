#pragma once

// Benchmark metrics and drivers: precision, Hamming inter-list diversity,
// catalog coverage, success rate, mean size/quality/time, plus the per-query
// pipeline runner used for benchmarks, the compression ablation, and lambda
// sweeps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "comprec/compress.hpp"
#include "comprec/embedding.hpp"
#include "comprec/errors.hpp"
#include "comprec/graph.hpp"
#include "comprec/recommend.hpp"
#include "comprec/scoring.hpp"
#include "comprec/steiner.hpp"

namespace comprec {

// |recommended ∩ truth| / |recommended|.
inline double precision(const std::vector<NodeId>& recommended,
                        const std::vector<NodeId>& truth) {
    if (recommended.empty()) throw ArgumentError("precision of an empty composition");
    std::unordered_set<NodeId> t(truth.begin(), truth.end());
    std::size_t hit = 0;
    for (NodeId v : recommended) hit += t.count(v);
    return static_cast<double>(hit) / static_cast<double>(recommended.size());
}

// 1 - |A ∩ B| / (|A| + |B|); 0.5 for identical sets, 1 for disjoint ones.
inline double hamming_diversity(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    if (a.empty() || b.empty()) throw ArgumentError("hamming diversity of an empty composition");
    std::unordered_set<NodeId> sa(a.begin(), a.end());
    std::size_t inter = 0;
    for (NodeId v : b) inter += sa.count(v);
    return 1.0 - static_cast<double>(inter) / static_cast<double>(sa.size() + b.size());
}

inline double coverage(const std::unordered_set<NodeId>& all_recommended,
                       std::size_t total_nodes) {
    if (total_nodes < 1) throw ArgumentError("coverage needs a non-empty catalog");
    return static_cast<double>(all_recommended.size()) / static_cast<double>(total_nodes);
}

struct QueryResult {
    Query query;
    std::vector<std::vector<NodeId>> recommendations;  // node sets in list order
    std::vector<double> rec_qualities;                 // raw Quality per recommendation
    std::vector<double> rec_qualities_norm;            // batch-normalized
    std::optional<std::vector<NodeId>> truth;          // source mashup's API set
    double wall_time_secs = 0.0;
    int candidate_count = 0;
    std::vector<int> candidate_sizes;  // discovery-phase composition sizes
};

// A query succeeds when discovery produced a composition shorter than twice
// the query length (strict inequality).
inline double success_rate(const std::vector<QueryResult>& results) {
    if (results.empty()) return 0.0;
    std::size_t ok = 0;
    for (const auto& r : results) {
        const int bound = 2 * static_cast<int>(r.query.keywords.size());
        for (int s : r.candidate_sizes)
            if (s < bound) {
                ++ok;
                break;
            }
    }
    return static_cast<double>(ok) / static_cast<double>(results.size());
}

inline double mean_size(const std::vector<QueryResult>& results) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : results)
        for (const auto& comp : r.recommendations) {
            sum += static_cast<double>(comp.size());
            ++count;
        }
    if (count == 0) throw ArgumentError("no compositions to average");
    return sum / static_cast<double>(count);
}

inline double mean_quality(const std::vector<QueryResult>& results,
                           const AssociationGraph& g) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : results)
        for (const auto& comp : r.recommendations) {
            CandidateComposition c;
            c.nodes = comp;
            sum += quality(g, c);
            ++count;
        }
    if (count == 0) throw ArgumentError("no compositions to average");
    return sum / static_cast<double>(count);
}

inline double mean_time(const std::vector<QueryResult>& results) {
    if (results.empty()) throw ArgumentError("no query results to average");
    double sum = 0.0;
    for (const auto& r : results) sum += r.wall_time_secs;
    return sum / static_cast<double>(results.size());
}

struct BenchmarkConfig {
    int k = 5;
    double lambda = 0.5;
    int max_candidates = 500;
    int k_clusters = 0;  // 0 = auto: max(2k, 10), clamped to the candidate count
    int swap_passes = -1;
    SolveBudget budget;
    std::uint64_t seed = 1;
    bool recommend_stage = true;  // false: discovery only (ablation mode)
};

struct QueryMetrics {
    std::vector<std::string> keywords;
    int candidate_count = 0;
    int list_size = 0;
    double mp = -1.0;   // -1: no ground truth or empty list
    double mid = -1.0;  // -1: fewer than two list items
    double ms = 0.0;    // mean composition size in this query's list
    double mq = 0.0;    // mean raw quality in this query's list
    double mq_norm = 0.0;
    double tc = 0.0;
    bool success = false;

    bool operator==(const QueryMetrics&) const = default;
};

struct BenchmarkReport {
    // config echo
    int k = 0;
    double lambda = 0.0;
    int granularity = 0;
    int max_candidates = 0;
    int k_clusters = 0;
    std::uint64_t seed = 0;
    std::uint64_t graph_hash = 0;

    std::vector<QueryMetrics> rows;

    double mp = 0.0;
    double mq = 0.0;
    double mq_norm = 0.0;
    double mid = 0.0;
    double coverage = 0.0;
    double sr = 0.0;
    double ms = 0.0;
    double mean_tc = 0.0;
};

namespace detail {

inline int distinct_clusters(const PartitionMatroid& m) {
    std::unordered_set<int> c(m.cluster_of.begin(), m.cluster_of.end());
    return static_cast<int>(c.size());
}

}  // namespace detail

// Runs the full per-query pipeline over immutable artifacts and aggregates
// the metric suite. Unsatisfiable or timed-out queries contribute empty
// result rows rather than failing the run.
inline BenchmarkReport run_benchmark(const AssociationGraph& g, const SuperGraph& sg,
                                     const EmbeddingModel* model,
                                     const std::vector<Query>& queries,
                                     const std::vector<MashupRecord>& truth_records,
                                     const BenchmarkConfig& cfg) {
    const std::uint64_t ghash = content_hash(g);
    if (content_hash(sg.original) != ghash)
        throw ConsistencyError("supergraph was built from a different graph");
    if (cfg.recommend_stage) {
        if (model == nullptr) throw ArgumentError("recommend stage needs an embedding model");
        if (model->graph_hash != ghash)
            throw ConsistencyError("embedding model was trained on a different graph");
    }

    std::unordered_map<std::string, std::vector<NodeId>> truth_by_mashup;
    for (const auto& rec : truth_records) {
        std::vector<NodeId> ids;
        for (const auto& api : rec.apis) {
            auto it = g.api_index.find(api);
            if (it != g.api_index.end()) ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        truth_by_mashup[rec.mashup_id] = std::move(ids);
    }

    BenchmarkReport report;
    report.k = cfg.k;
    report.lambda = cfg.lambda;
    report.granularity = sg.granularity;
    report.max_candidates = cfg.max_candidates;
    report.k_clusters = cfg.k_clusters;
    report.seed = cfg.seed;
    report.graph_hash = ghash;

    std::vector<QueryResult> results;
    results.reserve(queries.size());
    std::unordered_set<NodeId> all_recommended;

    for (const auto& q : queries) {
        QueryResult res;
        res.query = q;
        const auto t0 = std::chrono::steady_clock::now();

        std::vector<CandidateComposition> candidates;
        try {
            auto trees = solve_mgst(sg, q.keywords, cfg.max_candidates, cfg.budget);
            candidates.reserve(trees.size());
            for (const auto& tree : trees)
                candidates.push_back(decompress_and_prune(tree, sg, q.keywords));
        } catch (const UnsatisfiableKeywordError&) {
        } catch (const SolveTimeoutError&) {
        }
        res.candidate_count = static_cast<int>(candidates.size());
        for (const auto& c : candidates)
            res.candidate_sizes.push_back(static_cast<int>(c.size()));

        if (!candidates.empty()) {
            std::vector<double> quals(candidates.size());
            for (std::size_t i = 0; i < candidates.size(); ++i)
                quals[i] = quality(g, candidates[i]);
            std::vector<double> quals_norm = normalize_batch(quals);

            if (cfg.recommend_stage) {
                std::vector<CompositionVector> vecs;
                vecs.reserve(candidates.size());
                for (const auto& c : candidates)
                    vecs.push_back(composition_vector(*model, c));
                int kc = cfg.k_clusters > 0 ? cfg.k_clusters
                                            : std::max(2 * cfg.k, 10);
                kc = std::min<int>(kc, static_cast<int>(candidates.size()));
                PartitionMatroid matroid =
                    quality_aware_kmeans(vecs, quals, kc, 100, cfg.seed);
                int k_eff = std::min(cfg.k, detail::distinct_clusters(matroid));
                if (k_eff >= 1) {
                    RecommendationList list =
                        greedy_swap_select(candidates, quals_norm, vecs, matroid, k_eff,
                                           MmrParams{cfg.lambda}, cfg.swap_passes);
                    for (int idx : list.items) {
                        res.recommendations.push_back(
                            candidates[static_cast<std::size_t>(idx)].nodes);
                        res.rec_qualities.push_back(quals[static_cast<std::size_t>(idx)]);
                        res.rec_qualities_norm.push_back(
                            quals_norm[static_cast<std::size_t>(idx)]);
                    }
                }
            } else {
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    res.recommendations.push_back(candidates[i].nodes);
                    res.rec_qualities.push_back(quals[i]);
                    res.rec_qualities_norm.push_back(quals_norm[i]);
                }
            }
        }

        res.wall_time_secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        if (q.source_mashup) {
            auto it = truth_by_mashup.find(*q.source_mashup);
            if (it != truth_by_mashup.end()) res.truth = it->second;
        }
        for (const auto& comp : res.recommendations)
            all_recommended.insert(comp.begin(), comp.end());
        results.push_back(std::move(res));
    }

    // Per-query metric rows.
    double mp_sum = 0.0;
    std::size_t mp_n = 0;
    double mid_sum = 0.0;
    std::size_t mid_n = 0;
    double size_sum = 0.0, qual_sum = 0.0, qual_norm_sum = 0.0;
    std::size_t comp_n = 0;

    for (const auto& r : results) {
        QueryMetrics row;
        row.keywords = r.query.keywords;
        row.candidate_count = r.candidate_count;
        row.list_size = static_cast<int>(r.recommendations.size());
        row.tc = r.wall_time_secs;
        const int bound = 2 * static_cast<int>(r.query.keywords.size());
        for (int s : r.candidate_sizes)
            if (s < bound) {
                row.success = true;
                break;
            }

        if (!r.recommendations.empty()) {
            double s = 0.0, ql = 0.0, qn = 0.0;
            for (std::size_t i = 0; i < r.recommendations.size(); ++i) {
                s += static_cast<double>(r.recommendations[i].size());
                ql += r.rec_qualities[i];
                qn += r.rec_qualities_norm[i];
            }
            row.ms = s / static_cast<double>(r.recommendations.size());
            row.mq = ql / static_cast<double>(r.recommendations.size());
            row.mq_norm = qn / static_cast<double>(r.recommendations.size());
            size_sum += s;
            qual_sum += ql;
            qual_norm_sum += qn;
            comp_n += r.recommendations.size();

            if (r.truth) {
                double p = 0.0;
                for (const auto& comp : r.recommendations) p += precision(comp, *r.truth);
                row.mp = p / static_cast<double>(r.recommendations.size());
                mp_sum += row.mp;
                ++mp_n;
            }
            if (r.recommendations.size() >= 2) {
                double h = 0.0;
                std::size_t pairs = 0;
                for (std::size_t i = 0; i < r.recommendations.size(); ++i)
                    for (std::size_t j = i + 1; j < r.recommendations.size(); ++j) {
                        h += hamming_diversity(r.recommendations[i], r.recommendations[j]);
                        ++pairs;
                    }
                row.mid = h / static_cast<double>(pairs);
                mid_sum += row.mid;
                ++mid_n;
            }
        }
        report.rows.push_back(std::move(row));
    }

    report.mp = mp_n ? mp_sum / static_cast<double>(mp_n) : 0.0;
    report.mid = mid_n ? mid_sum / static_cast<double>(mid_n) : 0.0;
    report.ms = comp_n ? size_sum / static_cast<double>(comp_n) : 0.0;
    report.mq = comp_n ? qual_sum / static_cast<double>(comp_n) : 0.0;
    report.mq_norm = comp_n ? qual_norm_sum / static_cast<double>(comp_n) : 0.0;
    report.sr = success_rate(results);
    report.coverage = coverage(all_recommended, g.node_count());
    report.mean_tc = results.empty() ? 0.0 : mean_time(results);
    return report;
}

// Paired discovery-phase runs over the same graph and queries at different
// compression granularities.
struct AblationReport {
    std::vector<int> granularities;
    std::vector<BenchmarkReport> reports;  // aligned with granularities
};

inline AblationReport run_ablation(const AssociationGraph& g,
                                   const std::vector<Query>& queries,
                                   const std::vector<int>& granularities,
                                   BenchmarkConfig cfg) {
    cfg.recommend_stage = false;
    AblationReport out;
    for (int p : granularities) {
        SuperGraph sg = compress(g, p);
        out.granularities.push_back(p);
        out.reports.push_back(run_benchmark(g, sg, nullptr, queries, {}, cfg));
    }
    return out;
}

// Same pipeline at several lambda values; `mq_standardized` rescales the
// runs' MQ to [0, 1] across the sweep for display.
struct LambdaSweep {
    std::vector<double> lambdas;
    std::vector<BenchmarkReport> reports;
    std::vector<double> mq_standardized;
};

inline LambdaSweep run_lambda_sweep(const AssociationGraph& g, const SuperGraph& sg,
                                    const EmbeddingModel& model,
                                    const std::vector<Query>& queries,
                                    const std::vector<MashupRecord>& truth_records,
                                    const std::vector<double>& lambdas,
                                    BenchmarkConfig cfg) {
    LambdaSweep sweep;
    std::vector<double> mqs;
    for (double lam : lambdas) {
        cfg.lambda = lam;
        sweep.lambdas.push_back(lam);
        sweep.reports.push_back(run_benchmark(g, sg, &model, queries, truth_records, cfg));
        mqs.push_back(sweep.reports.back().mq);
    }
    if (!mqs.empty()) sweep.mq_standardized = normalize_batch(mqs);
    return sweep;
}

}  // namespace comprec
