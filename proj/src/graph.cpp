#include "streamcomm/graph.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>

namespace streamcomm {

void WeightedGraph::add_edge(const std::string& u, const std::string& v,
                             double w) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (w < 0.0 || w > 1.0)
        throw std::invalid_argument("edge weight must be in [0,1]");
    nodes_.insert(u);
    nodes_.insert(v);
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    auto [it, inserted] = edges_.emplace(std::move(key), w);
    if (!inserted && w > it->second) it->second = w;
}

double WeightedGraph::total_weight() const {
    double total = 0.0;
    for (const auto& [key, w] : edges_) total += w;
    return total;
}

WeightedGraph build_graph(const std::vector<Document>& docs,
                          double edge_threshold, const SimWeights& weights,
                          ContSimVariant variant) {
    if (edge_threshold < 0.0 || edge_threshold > 1.0)
        throw std::invalid_argument("edge threshold must be in [0,1]");
    WeightedGraph g;
    for (const auto& d : docs) g.add_node(d.user_id);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (std::size_t j = i + 1; j < docs.size(); ++j) {
            if (docs[i].user_id == docs[j].user_id) continue;
            double w = pair_sim(docs[i], docs[j], weights, variant);
            if (w >= edge_threshold && w > 0.0)
                g.add_edge(docs[i].user_id, docs[j].user_id, w);
        }
    }
    return g;
}

double IntensityReport::rank_key() const {
    return fully_internal ? std::numeric_limits<double>::infinity() : intensity;
}

IntensityReport intensity(const WeightedGraph& g,
                          const std::set<std::string>& community,
                          const std::string& community_id) {
    for (const auto& u : community)
        if (!g.nodes().count(u))
            throw std::domain_error("community contains unknown node: " + u);

    IntensityReport r;
    r.community_id = community_id;
    for (const auto& [key, w] : g.edges()) {
        bool in_a = community.count(key.first) > 0;
        bool in_b = community.count(key.second) > 0;
        if (in_a && in_b)
            r.w_ig += w;
        else if (in_a != in_b)
            r.w_og += w;
    }
    if (r.w_ig == 0.0) {
        r.intensity = 0.0;
    } else if (r.w_og == 0.0) {
        r.fully_internal = true;
    } else {
        r.intensity = r.w_ig / r.w_og;
    }
    return r;
}

namespace {

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", w);
    return buf;
}

}  // namespace

std::string export_graph(const WeightedGraph& g, GraphFormat format) {
    std::ostringstream out;
    switch (format) {
        case GraphFormat::EdgeList:
            for (const auto& [key, w] : g.edges())
                out << key.first << '\t' << key.second << '\t' << format_weight(w)
                    << '\n';
            return out.str();
        case GraphFormat::Dot: {
            out << "graph interactions {\n";
            std::set<std::string> connected;
            for (const auto& [key, w] : g.edges()) {
                connected.insert(key.first);
                connected.insert(key.second);
            }
            for (const auto& u : g.nodes())
                if (!connected.count(u)) out << "  \"" << u << "\";\n";
            for (const auto& [key, w] : g.edges())
                out << "  \"" << key.first << "\" -- \"" << key.second
                    << "\" [weight=" << format_weight(w) << "];\n";
            out << "}\n";
            return out.str();
        }
    }
    throw std::invalid_argument("unknown graph format");
}

WeightedGraph parse_edge_list(std::istream& in) {
    WeightedGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string u, v;
        double w = 0.0;
        if (!(std::getline(ss, u, '\t') && std::getline(ss, v, '\t') && ss >> w))
            throw ParseError("malformed edge-list line", line_no);
        g.add_edge(u, v, w);
    }
    return g;
}

}  // namespace streamcomm
