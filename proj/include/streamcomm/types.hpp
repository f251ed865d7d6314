#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace streamcomm {

// Per-record metadata used by the metadata similarity metrics.
// followers/followees are nullopt when the source record carried no
// relational data; an empty set means the data was present and empty.
struct Metadata {
    std::string user_id;
    std::set<std::string> hashtags;
    std::set<std::string> mentions;
    std::optional<std::set<std::string>> followers;
    std::optional<std::set<std::string>> followees;
};

// One raw input record as read off the wire, before preprocessing.
struct RawRecord {
    std::string id;
    std::string user_id;
    std::int64_t timestamp = 0;  // epoch seconds
    std::string text;
    bool verified = false;
    std::optional<std::vector<std::string>> hashtags;
    std::optional<std::vector<std::string>> mentions;
    std::optional<std::set<std::string>> followers;
    std::optional<std::set<std::string>> followees;
};

// A preprocessed record: lowercased token set plus metadata, discretized
// into a time window (epoch).
struct Document {
    std::string id;
    std::string user_id;
    std::int64_t timestamp = 0;
    std::set<std::string> tokens;
    Metadata metadata;
    std::int64_t epoch = 0;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_no(line) {}
    std::size_t line_no;
};

struct SchemaError : ParseError {
    using ParseError::ParseError;
};

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrderingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace streamcomm
