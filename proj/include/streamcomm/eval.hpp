#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "streamcomm/graph.hpp"
#include "streamcomm/types.hpp"

namespace streamcomm {

struct TfidfModel {
    std::map<std::string, int> vocabulary;    // token -> column index
    std::map<std::string, double> idf;
    std::vector<std::string> doc_ids;         // row order
    std::vector<std::map<int, double>> vectors;  // sparse, unit length
};

// Smoothed tf-idf: idf(t) = ln((1+N)/(1+df(t))) + 1, vectors L2-normalized.
// Throws std::domain_error on an empty corpus.
TfidfModel tfidf(const std::vector<Document>& corpus);

struct Partition {
    std::map<std::string, int> assignment;  // item id -> label in [0, k)
    int k = 0;
};

struct BatchResult {
    Partition partition;
    int iterations = 0;
    double objective = 0.0;
    std::vector<double> objective_history;  // one entry per iteration
    bool converged = false;
};

// Spherical centroid iteration over cosine distance with careful
// (distance-squared weighted) seeding; stops when assignments settle or
// after max_iter passes. Deterministic given the seed.
BatchResult batch_cluster(const TfidfModel& model, int k, int max_iter = 300,
                          std::uint64_t seed = 0);

// Mean silhouette over items; dist(i,j) is any symmetric pairwise distance.
// Singleton-cluster items contribute 0. Throws std::domain_error with
// fewer than two clusters.
double silhouette(const std::vector<int>& labels,
                  const std::function<double(std::size_t, std::size_t)>& dist);

// Weighted Newman modularity of a node partition.
// Throws std::domain_error on an empty graph or uncovered nodes.
double modularity(const WeightedGraph& g,
                  const std::map<std::string, int>& labels);

// Fraction of items whose cluster's majority truth label matches.
// Throws std::domain_error on mismatched item sets.
double purity(const Partition& partition, const Partition& truth);

// Cosine distance between two sparse unit vectors.
double cosine_distance(const std::map<int, double>& a,
                       const std::map<int, double>& b);

}  // namespace streamcomm
