#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "streamcomm/ingest.hpp"
#include "streamcomm/types.hpp"

namespace streamcomm {

// Per-topic lifetime and arrival schedule. A topic emits records in epochs
// [birth_epoch, death_epoch]; death_epoch unset means the topic outlives
// the run.
struct TopicSchedule {
    std::int64_t birth_epoch = 0;
    std::optional<std::int64_t> death_epoch;
    double rate = 10.0;  // Poisson arrivals per epoch
};

struct ScenarioConfig {
    int topics = 4;
    int guests = 40;               // user pool, split across topics
    int vocab_per_topic = 50;
    double vocab_overlap = 0.0;    // fraction of each topic vocab shared
    int tokens_per_doc = 8;
    int epochs = 4;
    double arrival_rate = 10.0;    // default when schedule is empty
    std::optional<int> docs_per_epoch;  // fixed-count mode, split over topics
    std::vector<TopicSchedule> schedule;  // optional, one entry per topic
    std::optional<int> capacity;  // seating-mode table size, for engine runs
    double hashtag_prob = 0.5;
    int hashtags_per_topic = 2;
    double mention_prob = 0.3;
    WindowSpec window;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TruthEntry {
    std::string id;
    std::int64_t epoch = 0;
    int topic = 0;
};

struct LabeledStream {
    std::vector<RawRecord> records;  // timestamp-ordered
    std::vector<TruthEntry> truth;   // aligned with records
    // topic -> epoch -> epochs left before the topic's death (scheduled
    // topics only)
    std::map<int, std::map<std::int64_t, std::int64_t>> remaining_lifetime;
};

// Deterministic given cfg.seed. Throws std::invalid_argument on bad config.
LabeledStream generate_stream(const ScenarioConfig& cfg);

}  // namespace streamcomm
