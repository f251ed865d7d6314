#include "streamcomm/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace streamcomm {

namespace {

std::set<std::string> user_set(const Cluster& c) {
    std::set<std::string> out;
    for (const auto& d : c.members) out.insert(d.user_id);
    return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& big = a.size() <= b.size() ? b : a;
    for (const auto& x : small) inter += big.count(x);
    return static_cast<double>(inter) /
           static_cast<double>(a.size() + b.size() - inter);
}

}  // namespace

EpochMatching match_epochs(const EpochSnapshot& prev, const EpochSnapshot& next,
                           double theta_match) {
    if (theta_match <= 0.0 || theta_match > 1.0)
        throw std::invalid_argument("theta_match must be in (0,1]");
    if (next.epoch != prev.epoch + 1)
        throw OrderingError("match_epochs: snapshots are not consecutive (" +
                            std::to_string(prev.epoch) + " -> " +
                            std::to_string(next.epoch) + ")");
    EpochMatching m;
    m.prev_epoch = prev.epoch;
    m.next_epoch = next.epoch;
    std::vector<std::set<std::string>> next_users;
    next_users.reserve(next.clusters.size());
    for (const auto& c : next.clusters) next_users.push_back(user_set(c));
    for (const auto& pc : prev.clusters) {
        auto pu = user_set(pc);
        for (std::size_t j = 0; j < next.clusters.size(); ++j) {
            double jac = jaccard(pu, next_users[j]);
            if (jac >= theta_match)
                m.links.push_back({pc.id, next.clusters[j].id, jac});
        }
    }
    return m;
}

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::Birth: return "birth";
        case EventKind::Growth: return "growth";
        case EventKind::Contraction: return "contraction";
        case EventKind::Merge: return "merge";
        case EventKind::Split: return "split";
        case EventKind::Death: return "death";
        case EventKind::Fade: return "fade";
    }
    return "?";
}

std::vector<CommunityEvent> detect_events(const EpochMatching& matching,
                                          const EpochSnapshot& prev,
                                          const EpochSnapshot& next,
                                          double size_band) {
    std::map<int, std::vector<int>> succ;  // prev id -> next ids
    std::map<int, std::vector<int>> pred;  // next id -> prev ids
    for (const auto& link : matching.links) {
        succ[link.prev_id].push_back(link.next_id);
        pred[link.next_id].push_back(link.prev_id);
    }
    std::map<int, std::size_t> prev_size, next_size;
    for (const auto& c : prev.clusters) prev_size[c.id] = c.size;
    for (const auto& c : next.clusters) next_size[c.id] = c.size;

    std::vector<CommunityEvent> events;
    for (const auto& c : prev.clusters) {
        auto it = succ.find(c.id);
        if (it == succ.end()) {
            events.push_back({EventKind::Death, next.epoch, {c.id},
                              static_cast<double>(c.size)});
        } else if (it->second.size() >= 2) {
            CommunityEvent e{EventKind::Split, next.epoch, {c.id},
                             static_cast<double>(it->second.size())};
            e.clusters.insert(e.clusters.end(), it->second.begin(),
                              it->second.end());
            events.push_back(std::move(e));
        }
    }
    for (const auto& c : next.clusters) {
        auto it = pred.find(c.id);
        if (it == pred.end()) {
            events.push_back({EventKind::Birth, next.epoch, {c.id},
                              static_cast<double>(c.size)});
        } else if (it->second.size() >= 2) {
            CommunityEvent e{EventKind::Merge, next.epoch, it->second,
                             static_cast<double>(it->second.size())};
            e.clusters.push_back(c.id);
            events.push_back(std::move(e));
        }
    }
    // growth/contraction on unique 1-1 matches only
    for (const auto& link : matching.links) {
        if (succ[link.prev_id].size() != 1 || pred[link.next_id].size() != 1)
            continue;
        double before = static_cast<double>(prev_size[link.prev_id]);
        double after = static_cast<double>(next_size[link.next_id]);
        if (before <= 0.0) continue;
        double change = (after - before) / before;
        if (change > size_band)
            events.push_back({EventKind::Growth, next.epoch,
                              {link.prev_id, link.next_id}, change});
        else if (change < -size_band)
            events.push_back({EventKind::Contraction, next.epoch,
                              {link.prev_id, link.next_id}, -change});
    }
    return events;
}

TimelineTracker::TimelineTracker(double theta_match, double size_band,
                                 int fade_after)
    : theta_match_(theta_match), size_band_(size_band), fade_after_(fade_after) {
    if (fade_after_ < 1) throw std::invalid_argument("fade_after must be >= 1");
}

void TimelineTracker::observe(const EpochSnapshot& snapshot) {
    if (!has_prev_) {
        for (const auto& c : snapshot.clusters) {
            chain_of_[c.id] = timeline_.chains.size();
            timeline_.chains.push_back({{{snapshot.epoch, c.id}}, 0});
        }
        prev_ = snapshot;
        has_prev_ = true;
        return;
    }

    EpochMatching matching = match_epochs(prev_, snapshot, theta_match_);
    std::vector<CommunityEvent> events =
        detect_events(matching, prev_, snapshot, size_band_);

    std::map<int, std::vector<int>> succ, pred;
    for (const auto& link : matching.links) {
        succ[link.prev_id].push_back(link.next_id);
        pred[link.next_id].push_back(link.prev_id);
    }
    std::set<int> contracted;  // next ids that contracted this transition
    for (const auto& e : events)
        if (e.kind == EventKind::Contraction) contracted.insert(e.clusters[1]);

    std::map<int, std::size_t> next_chain_of;
    for (const auto& c : snapshot.clusters) {
        auto pit = pred.find(c.id);
        bool unique_match = pit != pred.end() && pit->second.size() == 1 &&
                            succ[pit->second[0]].size() == 1;
        if (unique_match) {
            std::size_t idx = chain_of_.at(pit->second[0]);
            CommunityChain& chain = timeline_.chains[idx];
            chain.steps.emplace_back(snapshot.epoch, c.id);
            if (contracted.count(c.id)) {
                if (++chain.consecutive_contractions >= fade_after_)
                    events.push_back(
                        {EventKind::Fade, snapshot.epoch, {c.id},
                         static_cast<double>(chain.consecutive_contractions)});
            } else {
                chain.consecutive_contractions = 0;
            }
            next_chain_of[c.id] = idx;
        } else {
            next_chain_of[c.id] = timeline_.chains.size();
            timeline_.chains.push_back({{{snapshot.epoch, c.id}}, 0});
        }
    }

    timeline_.events.insert(timeline_.events.end(), events.begin(), events.end());
    chain_of_ = std::move(next_chain_of);
    prev_ = snapshot;
}

double longevity_score(std::size_t size, std::size_t age) {
    return static_cast<double>(age) *
           std::log1p(static_cast<double>(size));
}

}  // namespace streamcomm
