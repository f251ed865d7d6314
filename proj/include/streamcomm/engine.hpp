#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamcomm/ingest.hpp"
#include "streamcomm/similarity.hpp"
#include "streamcomm/types.hpp"

namespace streamcomm {

struct EngineConfig {
    int max_clusters = 8;              // M, the heuristic cluster bound
    double tau = 0.3;                  // pair-similarity threshold for seeding
    std::optional<int> capacity;       // per-cluster member cap (seating mode)
    SimWeights weights;
    ContSimVariant variant = ContSimVariant::Intersection;
    std::uint64_t seed = 0;
    std::int64_t order_slack = 0;      // tolerated timestamp backstep, seconds

    void validate() const;
};

// Default member cap when seating mode is enabled.
constexpr int kSeatingCapacity = 6;

// A cluster under construction. The centroid is maintained as the raw sum
// of member unit token vectors; `centroid()` normalizes on demand.
struct LiveCluster {
    int id = 0;
    std::vector<Document> members;
    std::unordered_map<std::string, double> sum;  // sum of unit vectors
    double norm_sq = 0.0;                         // ||sum||^2, incremental

    std::size_t size() const { return members.size(); }
    std::map<std::string, double> centroid() const;  // unit length
};

// Frozen cluster inside an epoch snapshot.
struct Cluster {
    int id = 0;
    std::int64_t epoch = 0;
    std::vector<Document> members;
    std::map<std::string, double> centroid;  // unit length when nonempty
    std::size_t size = 0;

    std::vector<std::string> member_doc_ids() const;
    std::vector<std::string> member_user_ids() const;
};

struct EpochSnapshot {
    std::int64_t epoch = 0;
    std::vector<Cluster> clusters;
    double objective = 0.0;
    std::size_t item_count = 0;
    std::size_t overflow_count = 0;  // documents buffered to the next epoch
};

// Cosine of d's unit token vector against the cluster centroid, clipped
// to [0,1]. Throws StateError on an empty cluster.
double doc_cluster_sim(const Document& d, const LiveCluster& c);

// Add d to c and fold its unit vector into the centroid sum.
void update_centroid(LiveCluster& c, const Document& d);

struct SeedOutcome {
    int created = 0;                    // clusters created (1 or 2)
    std::optional<Document> deferred;   // odd document at the M-1 boundary
};

// Seed from one random pair: similar pairs share a new cluster, dissimilar
// pairs get singletons; with a single slot left the second document is
// deferred to assignment. Throws StateError when no slot remains.
SeedOutcome seed_pair(std::vector<LiveCluster>& clusters, const Document& a,
                      const Document& b, const EngineConfig& cfg, int& next_id);

// Index of the most similar cluster (ties to the lowest id). Full clusters
// are skipped in capacity mode; returns -1 when every cluster is full.
// Throws StateError when no clusters exist.
int assign(const Document& d, const std::vector<LiveCluster>& clusters,
           const EngineConfig& cfg);

// Sum over assigned documents of (1 - cos(d, centroid)), recomputed from
// the snapshot's members and centroids.
double objective(const EpochSnapshot& snapshot);

// Single-pass streaming clusterer. Feed documents in timestamp order via
// push(); snapshots are emitted at every epoch boundary and collected
// until taken. finish() flushes the last epoch and replays any documents
// buffered by full clusters.
class ClusterEngine {
public:
    explicit ClusterEngine(EngineConfig cfg);

    void push(const Document& d);
    std::vector<EpochSnapshot> take_snapshots();
    std::vector<EpochSnapshot> finish();

    const EngineConfig& config() const { return cfg_; }

private:
    void feed(const Document& d);
    void place(const Document& d);
    void drain_seed_buffer();
    void close_epoch();
    Cluster freeze(const LiveCluster& c) const;

    EngineConfig cfg_;
    std::mt19937_64 rng_;
    std::vector<LiveCluster> clusters_;
    std::vector<Document> seed_buffer_;
    std::vector<Document> overflow_;
    std::vector<EpochSnapshot> out_;
    std::optional<std::int64_t> epoch_;
    std::optional<std::int64_t> max_ts_;
    int next_id_ = 0;
};

// Convenience wrapper: run a whole in-memory stream through the engine.
std::vector<EpochSnapshot> run_stream(const std::vector<Document>& docs,
                                      const EngineConfig& cfg);

}  // namespace streamcomm
