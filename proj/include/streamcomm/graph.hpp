#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "streamcomm/similarity.hpp"
#include "streamcomm/types.hpp"

namespace streamcomm {

// Undirected user graph with similarity weights in [0,1]. Edge keys are
// stored with the lexicographically smaller endpoint first.
class WeightedGraph {
public:
    void add_node(const std::string& u) { nodes_.insert(u); }
    // Keeps the maximum weight seen for a pair. Self-loops are rejected.
    void add_edge(const std::string& u, const std::string& v, double w);

    const std::set<std::string>& nodes() const { return nodes_; }
    const std::map<std::pair<std::string, std::string>, double>& edges() const {
        return edges_;
    }
    double total_weight() const;
    bool empty() const { return nodes_.empty(); }

private:
    std::set<std::string> nodes_;
    std::map<std::pair<std::string, std::string>, double> edges_;
};

// Pairwise similarity over one epoch's documents; documents of the same
// user never produce an edge, and multiple documents per user pair keep
// the maximum weight. Edges below edge_threshold are omitted.
WeightedGraph build_graph(const std::vector<Document>& docs,
                          double edge_threshold, const SimWeights& weights,
                          ContSimVariant variant = ContSimVariant::Intersection);

struct IntensityReport {
    std::string community_id;
    double w_ig = 0.0;        // intra-community edge weight
    double w_og = 0.0;        // boundary edge weight
    bool fully_internal = false;  // w_og == 0 with w_ig > 0
    double intensity = 0.0;       // w_ig / w_og, unused when fully_internal

    // Sort key for cohesion rankings; FullyInternal outranks all ratios.
    double rank_key() const;
};

// Throws std::domain_error if the community contains unknown nodes.
IntensityReport intensity(const WeightedGraph& g,
                          const std::set<std::string>& community,
                          const std::string& community_id = "");

enum class GraphFormat { EdgeList, Dot };

// EdgeList: "u\tv\tweight" per edge, endpoints ordered, weight with six
// decimals. Dot: an undirected graphviz graph with weight attributes.
std::string export_graph(const WeightedGraph& g, GraphFormat format);

// Inverse of the edge-list export; nodes are recovered from endpoints.
WeightedGraph parse_edge_list(std::istream& in);

}  // namespace streamcomm
