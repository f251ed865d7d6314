#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "streamcomm/engine.hpp"

namespace streamcomm {

// One matched cluster pair across consecutive epochs.
struct MatchLink {
    int prev_id = 0;
    int next_id = 0;
    double jaccard = 0.0;
};

struct EpochMatching {
    std::int64_t prev_epoch = 0;
    std::int64_t next_epoch = 0;
    std::vector<MatchLink> links;
};

// Match clusters of consecutive snapshots by Jaccard similarity of member
// user sets. A cluster may take part in several links, which is what makes
// merges and splits visible. Throws OrderingError unless
// next.epoch == prev.epoch + 1.
EpochMatching match_epochs(const EpochSnapshot& prev, const EpochSnapshot& next,
                           double theta_match);

enum class EventKind { Birth, Growth, Contraction, Merge, Split, Death, Fade };

const char* event_kind_name(EventKind k);

struct CommunityEvent {
    EventKind kind;
    std::int64_t epoch = 0;       // epoch the event is observed in
    std::vector<int> clusters;    // involved cluster ids
    double magnitude = 0.0;
};

// Lifecycle events for one transition. Growth/contraction apply to 1-1
// matches whose relative size change exceeds size_band; fade detection
// needs history across transitions and lives in TimelineTracker.
std::vector<CommunityEvent> detect_events(const EpochMatching& matching,
                                          const EpochSnapshot& prev,
                                          const EpochSnapshot& next,
                                          double size_band = 0.2);

// A matched community chain across epochs.
struct CommunityChain {
    std::vector<std::pair<std::int64_t, int>> steps;  // (epoch, cluster id)
    int consecutive_contractions = 0;
};

struct CommunityTimeline {
    std::vector<CommunityChain> chains;
    std::vector<CommunityEvent> events;
};

// Consumes snapshots in epoch order, accumulating chains and events.
// A chain contracting in two consecutive transitions additionally raises
// a Fade event (the operational definition of fading away).
class TimelineTracker {
public:
    explicit TimelineTracker(double theta_match = 0.3, double size_band = 0.2,
                             int fade_after = 2);

    void observe(const EpochSnapshot& snapshot);
    const CommunityTimeline& timeline() const { return timeline_; }

private:
    double theta_match_;
    double size_band_;
    int fade_after_;
    bool has_prev_ = false;
    EpochSnapshot prev_;
    std::map<int, std::size_t> chain_of_;  // prev cluster id -> chain index
    CommunityTimeline timeline_;
};

// Ranking heuristic for remaining community lifetime: age * ln(1 + size).
double longevity_score(std::size_t size, std::size_t age);

}  // namespace streamcomm
