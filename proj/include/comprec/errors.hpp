#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace comprec {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; message carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

struct DuplicateKeyError : Error {
    using Error::Error;
};

// An identifier did not resolve against the catalog / graph.
struct ReferenceError : Error {
    using Error::Error;
};

struct ArgumentError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

// One or more query keywords are carried by no node at all.
struct UnsatisfiableKeywordError : Error {
    UnsatisfiableKeywordError(const std::string& what, std::vector<std::string> kws)
        : Error(what), keywords(std::move(kws)) {}
    std::vector<std::string> keywords;
};

// Search budget exhausted before any full-coverage tree was found.
struct SolveTimeoutError : Error {
    using Error::Error;
};

// Top-k selection cannot reach k items under the matroid.
struct InfeasibleError : Error {
    using Error::Error;
};

// Mean vector of a composition is exactly zero; no direction to normalize.
struct DegenerateVectorError : Error {
    using Error::Error;
};

// Artifacts built from different inputs were combined.
struct ConsistencyError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace comprec
