#pragma once

// Ingestion of historical mashup/API records: catalog and record parsing,
// functional keyword extraction, and evaluation query generation.

#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "comprec/errors.hpp"

#include <json.hpp>

namespace comprec {

struct CatalogEntry {
    std::string api_id;
    std::vector<std::string> category_keywords;  // non-empty, first = primary function
};

struct MashupRecord {
    std::string mashup_id;
    std::vector<std::string> apis;  // ordered, no duplicates
};

struct Query {
    std::vector<std::string> keywords;          // distinct
    std::optional<std::string> source_mashup;   // ground truth for precision
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_trimmed(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        std::string tok = trim(s.substr(start, pos == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : pos - start));
        if (!tok.empty()) out.push_back(std::move(tok));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    return in;
}

}  // namespace detail

// Catalog format: one entry per line, `api_id | kw1, kw2, ...`.
// Blank lines and lines starting with '#' are skipped.
inline std::vector<CatalogEntry> parse_catalog(const std::string& path) {
    auto in = detail::open_or_throw(path);
    std::vector<CatalogEntry> entries;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t bar = t.find('|');
        if (bar == std::string::npos)
            throw ParseError("catalog entry missing '|' separator", lineno);
        std::string api_id = detail::trim(std::string_view(t).substr(0, bar));
        auto keywords = detail::split_trimmed(std::string_view(t).substr(bar + 1), ',');
        if (api_id.empty()) throw ParseError("catalog entry has empty api_id", lineno);
        if (keywords.empty())
            throw ParseError("catalog entry has no category keywords", lineno);
        if (!seen.insert(api_id).second)
            throw DuplicateKeyError("duplicate api_id in catalog: " + api_id);
        entries.push_back(CatalogEntry{std::move(api_id), std::move(keywords)});
    }
    return entries;
}

// Records format: one mashup per line, `mashup_id | api_id1, api_id2, ...`.
inline std::vector<MashupRecord> parse_records(const std::string& path) {
    auto in = detail::open_or_throw(path);
    std::vector<MashupRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t bar = t.find('|');
        if (bar == std::string::npos)
            throw ParseError("record missing '|' separator", lineno);
        std::string mashup_id = detail::trim(std::string_view(t).substr(0, bar));
        auto apis = detail::split_trimmed(std::string_view(t).substr(bar + 1), ',');
        if (mashup_id.empty()) throw ParseError("record has empty mashup_id", lineno);
        if (apis.empty()) throw ParseError("record lists no APIs", lineno);
        std::unordered_set<std::string> in_record;
        for (const auto& a : apis)
            if (!in_record.insert(a).second)
                throw DuplicateKeyError("duplicate API '" + a + "' in mashup " + mashup_id);
        if (!seen.insert(mashup_id).second)
            throw DuplicateKeyError("duplicate mashup_id: " + mashup_id);
        records.push_back(MashupRecord{std::move(mashup_id), std::move(apis)});
    }
    return records;
}

// Structured alternative: one JSON object per line with fields
// `mashup_id` and `apis` (array of strings).
inline std::vector<MashupRecord> parse_records_jsonl(const std::string& path) {
    auto in = detail::open_or_throw(path);
    std::vector<MashupRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(t);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON record: ") + e.what(), lineno);
        }
        if (!obj.is_object() || !obj.contains("mashup_id") || !obj.contains("apis"))
            throw ParseError("record object needs `mashup_id` and `apis` fields", lineno);
        MashupRecord rec;
        rec.mashup_id = obj["mashup_id"].get<std::string>();
        for (const auto& a : obj["apis"]) rec.apis.push_back(a.get<std::string>());
        if (rec.apis.empty()) throw ParseError("record lists no APIs", lineno);
        std::unordered_set<std::string> in_record;
        for (const auto& a : rec.apis)
            if (!in_record.insert(a).second)
                throw DuplicateKeyError("duplicate API '" + a + "' in mashup " + rec.mashup_id);
        if (!seen.insert(rec.mashup_id).second)
            throw DuplicateKeyError("duplicate mashup_id: " + rec.mashup_id);
        records.push_back(std::move(rec));
    }
    return records;
}

// The first category keyword of an API is taken as its primary function.
inline const std::string& functional_keyword(const CatalogEntry& entry) {
    return entry.category_keywords.front();
}

// One query per mashup whose functional-keyword union has a size in
// [min_len, max_len]; mashups outside the range are skipped. Keywords keep
// first-appearance order; the union is a set (no multiplicity).
inline std::vector<Query> generate_queries(const std::vector<MashupRecord>& records,
                                           const std::vector<CatalogEntry>& catalog,
                                           std::size_t min_len = 3,
                                           std::size_t max_len = 6) {
    std::unordered_map<std::string, const CatalogEntry*> by_id;
    for (const auto& e : catalog) by_id[e.api_id] = &e;
    std::vector<Query> queries;
    for (const auto& rec : records) {
        std::vector<std::string> kws;
        std::unordered_set<std::string> seen;
        for (const auto& api : rec.apis) {
            auto it = by_id.find(api);
            if (it == by_id.end())
                throw ReferenceError("mashup " + rec.mashup_id +
                                     " references unknown API: " + api);
            const std::string& kw = functional_keyword(*it->second);
            if (seen.insert(kw).second) kws.push_back(kw);
        }
        if (kws.size() < min_len || kws.size() > max_len) continue;
        queries.push_back(Query{std::move(kws), rec.mashup_id});
    }
    return queries;
}

}  // namespace comprec
