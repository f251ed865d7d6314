#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "streamcomm/types.hpp"

namespace streamcomm {

struct PreprocessConfig {
    std::set<std::string> stopwords;  // defaults to the built-in English list
    int min_token_length = 1;
    bool strip_urls = true;

    PreprocessConfig();
};

const std::set<std::string>& default_stopwords();

struct FilterConfig {
    bool exclude_verified = true;
    int min_hashtags = 0;
    int min_mentions = 0;
};

// Fixed-width time discretization: epoch = floor((timestamp - origin) / width).
struct WindowSpec {
    std::int64_t origin = 0;
    std::int64_t width = 900;  // seconds
};

// Parse one JSON Lines record. Unknown fields are ignored; absent optional
// fields stay nullopt. Throws ParseError on malformed JSON and SchemaError
// on missing/mistyped required fields, both carrying the line number.
RawRecord parse_record(const std::string& line, std::size_t line_no = 0);

// Lowercase, strip URLs, tokenize, pull #hashtags and @mentions into
// metadata, drop stopwords, and discretize the timestamp into an epoch.
// Throws WindowError if the timestamp precedes the window origin.
Document preprocess(const RawRecord& r, const PreprocessConfig& cfg,
                    const WindowSpec& w);

bool passes_filters(const RawRecord& r, const FilterConfig& f);

struct IngestStats {
    std::size_t read = 0;
    std::size_t filtered_out = 0;
    std::size_t emitted = 0;
};

// Read JSON Lines from `in`, applying filters and preprocessing; invokes
// `sink` for each surviving document in arrival order.
template <typename Sink>
IngestStats ingest_stream(std::istream& in, const PreprocessConfig& pre,
                          const FilterConfig& filt, const WindowSpec& w,
                          Sink&& sink);

std::set<std::string> load_stopwords(std::istream& in);

}  // namespace streamcomm

#include <istream>

namespace streamcomm {

template <typename Sink>
IngestStats ingest_stream(std::istream& in, const PreprocessConfig& pre,
                          const FilterConfig& filt, const WindowSpec& w,
                          Sink&& sink) {
    IngestStats stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ++stats.read;
        RawRecord r = parse_record(line, line_no);
        if (!passes_filters(r, filt)) {
            ++stats.filtered_out;
            continue;
        }
        sink(preprocess(r, pre, w));
        ++stats.emitted;
    }
    return stats;
}

}  // namespace streamcomm
