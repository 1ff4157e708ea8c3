#pragma once

// Shared test fixtures: the eight-record co-usage fixture, random corpus
// generators, and temp-file helpers.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "comprec/compress.hpp"
#include "comprec/corpus.hpp"
#include "comprec/detail/rng.hpp"
#include "comprec/graph.hpp"

namespace fixtures {

using namespace comprec;

// Eight historical records over eight APIs. Under all-category keywords the
// query {k1, k2, k9} has cover sets {v1}, {v2}, {v5, v6}, and v3/v4/v7/v8
// carry none of the query keywords (bridging nodes).
inline std::vector<CatalogEntry> fig_catalog() {
    return {
        {"v1", {"k1", "k3"}}, {"v2", {"k2", "k4"}}, {"v3", {"k5"}},
        {"v4", {"k6"}},       {"v5", {"k9", "k7"}}, {"v6", {"k9", "k8"}},
        {"v7", {"k10"}},      {"v8", {"k5"}},
    };
}

inline std::vector<MashupRecord> fig_records() {
    return {
        {"R1", {"v1", "v3", "v4"}}, {"R2", {"v4", "v2", "v3"}},
        {"R3", {"v1", "v2"}},       {"R4", {"v2", "v4", "v7"}},
        {"R5", {"v5", "v4"}},       {"R6", {"v4", "v7"}},
        {"R7", {"v6", "v4"}},       {"R8", {"v3", "v6", "v8", "v7"}},
    };
}

inline AssociationGraph fig_graph(KeywordMode mode = KeywordMode::all_categories) {
    return build_graph(fig_records(), fig_catalog(), mode);
}

inline NodeId nid(const AssociationGraph& g, const std::string& api) {
    return g.api_index.at(api);
}

struct Corpus {
    std::vector<CatalogEntry> catalog;
    std::vector<MashupRecord> records;
};

// Random corpus over n_apis APIs named a0..a{n-1}, each carrying one
// functional keyword from a pool w0..w{kw_pool-1}. With `chain` set the
// records include a path a0-a1-...-a{n-1}, which keeps the graph connected
// and every API used.
inline Corpus random_corpus(SplitMix64& rng, int n_apis, int extra_records, int kw_pool,
                            int min_size, int max_size, bool chain) {
    Corpus c;
    for (int i = 0; i < n_apis; ++i)
        c.catalog.push_back(CatalogEntry{
            "a" + std::to_string(i),
            {"w" + std::to_string(rng.next_below(static_cast<std::uint64_t>(kw_pool)))}});
    int rec = 0;
    if (chain) {
        for (int i = 1; i < n_apis; ++i)
            c.records.push_back(MashupRecord{"m" + std::to_string(rec++),
                                             {"a" + std::to_string(i - 1),
                                              "a" + std::to_string(i)}});
    }
    for (int r = 0; r < extra_records; ++r) {
        int size = min_size + static_cast<int>(rng.next_below(
                                  static_cast<std::uint64_t>(max_size - min_size + 1)));
        std::vector<std::string> apis;
        std::vector<char> used(static_cast<std::size_t>(n_apis), 0);
        for (int t = 0; t < size; ++t) {
            int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_apis)));
            if (used[static_cast<std::size_t>(a)]) continue;
            used[static_cast<std::size_t>(a)] = 1;
            apis.push_back("a" + std::to_string(a));
        }
        if (apis.size() < 2) continue;
        c.records.push_back(MashupRecord{"m" + std::to_string(rec++), std::move(apis)});
    }
    return c;
}

// Large synthetic corpus shaped like real mashup ecosystems: APIs live in
// functional communities, most of a mashup's members come from one community
// (with occasional cross-community bridges), and every record's members are
// pairwise compatible by construction. Co-usage neighborhoods therefore come
// out dense rather than tree-like. Records are added until the co-usage
// graph reaches the requested number of distinct edges.
inline Corpus sized_corpus(SplitMix64& rng, int n_apis, int target_edges, int kw_pool,
                           int min_size, int max_size, int community_size = 20) {
    Corpus c;
    // Functional keywords cluster by community: each community owns a
    // five-keyword palette, so a keyword's cover set is local to exactly one
    // community and a mashup's keywords co-locate unless it bridges.
    for (int i = 0; i < n_apis; ++i) {
        int community = i / community_size;
        int kw = (community * 5 + static_cast<int>(rng.next_below(5))) % kw_pool;
        c.catalog.push_back(
            CatalogEntry{"a" + std::to_string(i), {"w" + std::to_string(kw)}});
    }
    const int communities = (n_apis + community_size - 1) / community_size;
    auto community_member = [&](int community) {
        int lo = community * community_size;
        int span = std::min(community_size, n_apis - lo);
        return lo + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(span)));
    };

    std::set<std::pair<int, int>> edges;
    int rec = 0;
    // Cycle keeps the graph connected and every API used at least once.
    for (int i = 0; i < n_apis; ++i) {
        int j = (i + 1) % n_apis;
        c.records.push_back(
            MashupRecord{"m" + std::to_string(rec++),
                         {"a" + std::to_string(i), "a" + std::to_string(j)}});
        edges.insert({std::min(i, j), std::max(i, j)});
    }
    while (static_cast<int>(edges.size()) < target_edges) {
        int size = min_size + static_cast<int>(rng.next_below(
                                  static_cast<std::uint64_t>(max_size - min_size + 1)));
        int home = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(communities)));
        std::vector<int> ids;
        auto add = [&](int a) {
            for (int b : ids)
                if (a == b) return;
            ids.push_back(a);
        };
        for (int t = 0; t < size; ++t) {
            if (rng.next_below(10) == 0)
                add(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_apis))));
            else
                add(community_member(home));
        }
        if (ids.size() < 2) continue;
        std::vector<std::string> apis;
        for (int a : ids) apis.push_back("a" + std::to_string(a));
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j)
                edges.insert({std::min(ids[i], ids[j]), std::max(ids[i], ids[j])});
        c.records.push_back(MashupRecord{"m" + std::to_string(rec++), std::move(apis)});
    }
    return c;
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            path_ = base / ("comprec_test_" + std::to_string(::getpid()) + "_" +
                            std::to_string(counter()++) + "_" + std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(path_, ec)) break;
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }

    std::string write(const std::string& name, const std::string& content) const {
        std::string p = file(name);
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }

private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::filesystem::path path_;
};

inline std::string catalog_text(const std::vector<CatalogEntry>& catalog) {
    std::string out;
    for (const auto& e : catalog) {
        out += e.api_id + " | ";
        for (std::size_t i = 0; i < e.category_keywords.size(); ++i) {
            if (i) out += ", ";
            out += e.category_keywords[i];
        }
        out += "\n";
    }
    return out;
}

inline std::string records_text(const std::vector<MashupRecord>& records) {
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

}  // namespace fixtures
