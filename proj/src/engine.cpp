#include "streamcomm/engine.hpp"

#include <algorithm>
#include <cmath>

namespace streamcomm {

void EngineConfig::validate() const {
    if (max_clusters < 1) throw std::invalid_argument("max_clusters must be >= 1");
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("tau must be in [0,1]");
    if (capacity && *capacity < 1)
        throw std::invalid_argument("capacity must be >= 1");
    if (weights.alpha < 0.0 || weights.alpha > 1.0)
        throw std::invalid_argument("alpha must be in [0,1]");
    for (const auto& [m, w] : weights.metadata_weights)
        if (w < 0.0) throw std::invalid_argument("metadata weights must be >= 0");
    if (order_slack < 0) throw std::invalid_argument("order_slack must be >= 0");
}

std::map<std::string, double> LiveCluster::centroid() const {
    std::map<std::string, double> out;
    double n2 = 0.0;
    for (const auto& [tok, v] : sum) n2 += v * v;
    if (n2 <= 0.0) return out;
    double inv = 1.0 / std::sqrt(n2);
    for (const auto& [tok, v] : sum) out[tok] = v * inv;
    return out;
}

std::vector<std::string> Cluster::member_doc_ids() const {
    std::vector<std::string> out;
    out.reserve(members.size());
    for (const auto& d : members) out.push_back(d.id);
    return out;
}

std::vector<std::string> Cluster::member_user_ids() const {
    std::vector<std::string> out;
    out.reserve(members.size());
    for (const auto& d : members) out.push_back(d.user_id);
    return out;
}

double doc_cluster_sim(const Document& d, const LiveCluster& c) {
    if (c.members.empty()) throw StateError("doc_cluster_sim: empty cluster");
    if (d.tokens.empty() || c.norm_sq <= 0.0) return 0.0;
    double dot = 0.0;
    for (const auto& tok : d.tokens) {
        auto it = c.sum.find(tok);
        if (it != c.sum.end()) dot += it->second;
    }
    double cosv = dot / (std::sqrt(static_cast<double>(d.tokens.size())) *
                         std::sqrt(c.norm_sq));
    return std::clamp(cosv, 0.0, 1.0);
}

void update_centroid(LiveCluster& c, const Document& d) {
    if (!d.tokens.empty()) {
        double w = 1.0 / std::sqrt(static_cast<double>(d.tokens.size()));
        double dot = 0.0;  // sum of existing coordinates over d's support
        for (const auto& tok : d.tokens) {
            double& e = c.sum[tok];
            dot += e;
            e += w;
        }
        // ||s+v||^2 = ||s||^2 + 2 s.v + ||v||^2, with v the unit doc vector
        c.norm_sq += 2.0 * w * dot + 1.0;
    }
    c.members.push_back(d);
}

SeedOutcome seed_pair(std::vector<LiveCluster>& clusters, const Document& a,
                      const Document& b, const EngineConfig& cfg, int& next_id) {
    int slots = cfg.max_clusters - static_cast<int>(clusters.size());
    if (slots <= 0) throw StateError("seed_pair: cluster bound already reached");

    auto open_cluster = [&]() -> LiveCluster& {
        LiveCluster c;
        c.id = next_id++;
        clusters.push_back(std::move(c));
        return clusters.back();
    };

    bool similar = pair_sim(a, b, cfg.weights, cfg.variant) >= cfg.tau;
    bool fits_two = !cfg.capacity || *cfg.capacity >= 2;

    SeedOutcome out;
    if (similar && fits_two) {
        LiveCluster& c = open_cluster();
        update_centroid(c, a);
        update_centroid(c, b);
        out.created = 1;
    } else if (slots >= 2) {
        update_centroid(open_cluster(), a);
        update_centroid(open_cluster(), b);
        out.created = 2;
    } else {
        update_centroid(open_cluster(), a);
        out.created = 1;
        out.deferred = b;
    }
    return out;
}

int assign(const Document& d, const std::vector<LiveCluster>& clusters,
           const EngineConfig& cfg) {
    if (clusters.empty()) throw StateError("assign: no clusters exist");
    int best = -1;
    double best_sim = -1.0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (cfg.capacity &&
            clusters[i].size() >= static_cast<std::size_t>(*cfg.capacity))
            continue;
        double s = doc_cluster_sim(d, clusters[i]);
        if (s > best_sim) {
            best_sim = s;
            best = static_cast<int>(i);
        }
    }
    return best;
}

double objective(const EpochSnapshot& snapshot) {
    double j = 0.0;
    for (const auto& c : snapshot.clusters) {
        for (const auto& d : c.members) {
            double cosv = 0.0;
            if (!d.tokens.empty()) {
                double dot = 0.0;
                for (const auto& tok : d.tokens) {
                    auto it = c.centroid.find(tok);
                    if (it != c.centroid.end()) dot += it->second;
                }
                cosv = dot / std::sqrt(static_cast<double>(d.tokens.size()));
            }
            j += 1.0 - cosv;
        }
    }
    return j;
}

ClusterEngine::ClusterEngine(EngineConfig cfg)
    : cfg_(std::move(cfg)), rng_(cfg_.seed) {
    cfg_.validate();
}

void ClusterEngine::push(const Document& d) {
    if (max_ts_ && d.timestamp < *max_ts_ - cfg_.order_slack)
        throw OrderingError("timestamp " + std::to_string(d.timestamp) +
                            " out of order beyond slack");
    if (!max_ts_ || d.timestamp > *max_ts_) max_ts_ = d.timestamp;
    if (!epoch_) epoch_ = d.epoch;
    if (d.epoch < *epoch_)
        throw OrderingError("document epoch " + std::to_string(d.epoch) +
                            " precedes current epoch " + std::to_string(*epoch_));
    while (d.epoch > *epoch_) close_epoch();
    feed(d);
}

void ClusterEngine::feed(const Document& d) {
    if (static_cast<int>(clusters_.size()) < cfg_.max_clusters) {
        seed_buffer_.push_back(d);
        if (seed_buffer_.size() == 4) {  // the scenario's four-guest seed group
            std::shuffle(seed_buffer_.begin(), seed_buffer_.end(), rng_);
            drain_seed_buffer();
        }
    } else {
        place(d);
    }
}

void ClusterEngine::place(const Document& d) {
    int idx = assign(d, clusters_, cfg_);
    if (idx < 0)
        overflow_.push_back(d);  // every cluster full; replay next epoch
    else
        update_centroid(clusters_[idx], d);
}

void ClusterEngine::drain_seed_buffer() {
    std::size_t i = 0;
    while (i + 1 < seed_buffer_.size() &&
           static_cast<int>(clusters_.size()) < cfg_.max_clusters) {
        SeedOutcome r =
            seed_pair(clusters_, seed_buffer_[i], seed_buffer_[i + 1], cfg_, next_id_);
        if (r.deferred) place(*r.deferred);
        i += 2;
    }
    for (; i < seed_buffer_.size(); ++i) {
        const Document& d = seed_buffer_[i];
        if (clusters_.empty()) {
            // lone document in an otherwise empty epoch
            LiveCluster c;
            c.id = next_id_++;
            update_centroid(c, d);
            clusters_.push_back(std::move(c));
        } else {
            place(d);
        }
    }
    seed_buffer_.clear();
}

Cluster ClusterEngine::freeze(const LiveCluster& c) const {
    Cluster out;
    out.id = c.id;
    out.epoch = *epoch_;
    out.members = c.members;
    out.centroid = c.centroid();
    out.size = c.members.size();
    return out;
}

void ClusterEngine::close_epoch() {
    drain_seed_buffer();
    EpochSnapshot snap;
    snap.epoch = *epoch_;
    snap.clusters.reserve(clusters_.size());
    for (const auto& c : clusters_) {
        snap.clusters.push_back(freeze(c));
        snap.item_count += c.size();
    }
    snap.overflow_count = overflow_.size();
    snap.objective = objective(snap);
    out_.push_back(std::move(snap));

    clusters_.clear();
    next_id_ = 0;
    ++*epoch_;
    std::vector<Document> replay = std::move(overflow_);
    overflow_.clear();
    for (const auto& d : replay) feed(d);
}

std::vector<EpochSnapshot> ClusterEngine::take_snapshots() {
    std::vector<EpochSnapshot> out = std::move(out_);
    out_.clear();
    return out;
}

std::vector<EpochSnapshot> ClusterEngine::finish() {
    if (epoch_) {
        close_epoch();
        while (!clusters_.empty() || !seed_buffer_.empty() || !overflow_.empty())
            close_epoch();
    }
    return take_snapshots();
}

std::vector<EpochSnapshot> run_stream(const std::vector<Document>& docs,
                                      const EngineConfig& cfg) {
    ClusterEngine engine(cfg);
    std::vector<EpochSnapshot> out;
    for (const auto& d : docs) {
        engine.push(d);
        auto ready = engine.take_snapshots();
        out.insert(out.end(), std::make_move_iterator(ready.begin()),
                   std::make_move_iterator(ready.end()));
    }
    auto rest = engine.finish();
    out.insert(out.end(), std::make_move_iterator(rest.begin()),
               std::make_move_iterator(rest.end()));
    return out;
}

}  // namespace streamcomm
