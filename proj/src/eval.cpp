#include "streamcomm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace streamcomm {

double cosine_distance(const std::map<int, double>& a,
                       const std::map<int, double>& b) {
    // vectors are unit length, so distance is 1 - dot
    double dot = 0.0;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& big = a.size() <= b.size() ? b : a;
    for (const auto& [idx, v] : small) {
        auto it = big.find(idx);
        if (it != big.end()) dot += v * it->second;
    }
    return 1.0 - std::clamp(dot, 0.0, 1.0);
}

TfidfModel tfidf(const std::vector<Document>& corpus) {
    if (corpus.empty()) throw std::domain_error("tfidf: empty corpus");
    TfidfModel model;
    std::map<std::string, int> df;
    for (const auto& d : corpus)
        for (const auto& tok : d.tokens) ++df[tok];
    int index = 0;
    for (const auto& [tok, count] : df) model.vocabulary[tok] = index++;
    double n = static_cast<double>(corpus.size());
    for (const auto& [tok, count] : df)
        model.idf[tok] = std::log((1.0 + n) / (1.0 + count)) + 1.0;

    model.doc_ids.reserve(corpus.size());
    model.vectors.reserve(corpus.size());
    for (const auto& d : corpus) {
        std::map<int, double> vec;
        double norm_sq = 0.0;
        for (const auto& tok : d.tokens) {
            double v = model.idf.at(tok);  // tf is 1 per set semantics
            vec[model.vocabulary.at(tok)] = v;
            norm_sq += v * v;
        }
        if (norm_sq > 0.0) {
            double inv = 1.0 / std::sqrt(norm_sq);
            for (auto& [idx, v] : vec) v *= inv;
        }
        model.doc_ids.push_back(d.id);
        model.vectors.push_back(std::move(vec));
    }
    return model;
}

namespace {

std::map<int, double> normalized_mean(const std::vector<const std::map<int, double>*>& members) {
    std::map<int, double> sum;
    for (const auto* v : members)
        for (const auto& [idx, x] : *v) sum[idx] += x;
    double norm_sq = 0.0;
    for (const auto& [idx, x] : sum) norm_sq += x * x;
    if (norm_sq > 0.0) {
        double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& [idx, x] : sum) x *= inv;
    }
    return sum;
}

// Careful seeding: the first center is drawn uniformly, later centers with
// probability proportional to squared cosine distance to the nearest
// chosen center.
std::vector<std::map<int, double>> seed_centroids(
    const std::vector<std::map<int, double>>& vectors, int k,
    std::mt19937_64& rng) {
    std::size_t n = vectors.size();
    std::vector<std::map<int, double>> centers;
    std::vector<bool> chosen(n, false);

    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    std::size_t pick = first(rng);
    centers.push_back(vectors[pick]);
    chosen[pick] = true;

    std::vector<double> best_dist(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = chosen[i] ? 0.0 : cosine_distance(vectors[i], centers.back());
            if (centers.size() == 1 || d < best_dist[i]) best_dist[i] = d;
            if (chosen[i]) best_dist[i] = 0.0;
            total += best_dist[i] * best_dist[i];
        }
        std::size_t next = n;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cum += best_dist[i] * best_dist[i];
                if (cum >= target && !chosen[i]) {
                    next = i;
                    break;
                }
            }
        }
        if (next == n) {
            // all residual distances are zero; take the first unchosen item
            for (std::size_t i = 0; i < n; ++i)
                if (!chosen[i]) {
                    next = i;
                    break;
                }
        }
        if (next == n) break;  // fewer distinct items than k
        chosen[next] = true;
        centers.push_back(vectors[next]);
    }
    while (static_cast<int>(centers.size()) < k) centers.push_back({});
    return centers;
}

}  // namespace

BatchResult batch_cluster(const TfidfModel& model, int k, int max_iter,
                          std::uint64_t seed) {
    std::size_t n = model.vectors.size();
    if (k < 1) throw std::domain_error("batch_cluster: k must be >= 1");
    if (static_cast<std::size_t>(k) > n)
        throw std::domain_error("batch_cluster: k exceeds corpus size");
    if (max_iter < 1) throw std::domain_error("batch_cluster: max_iter must be >= 1");

    std::mt19937_64 rng(seed);
    std::vector<std::map<int, double>> centers = seed_centroids(model.vectors, k, rng);
    std::vector<int> labels(n, -1);

    BatchResult result;
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        double j = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                double d = cosine_distance(model.vectors[i], centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (labels[i] != best) {
                labels[i] = best;
                changed = true;
            }
            j += best_d;
        }
        result.objective_history.push_back(j);
        result.iterations = iter + 1;
        if (!changed) {
            result.converged = true;
            break;
        }

        std::vector<std::vector<const std::map<int, double>*>> groups(k);
        for (std::size_t i = 0; i < n; ++i)
            groups[labels[i]].push_back(&model.vectors[i]);
        for (int c = 0; c < k; ++c) {
            if (!groups[c].empty()) {
                centers[c] = normalized_mean(groups[c]);
            } else {
                // relocate an empty cluster to the worst-fitting item
                std::size_t worst = 0;
                double worst_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double d = cosine_distance(model.vectors[i], centers[labels[i]]);
                    if (d > worst_d) {
                        worst_d = d;
                        worst = i;
                    }
                }
                centers[c] = model.vectors[worst];
            }
        }
    }

    result.objective = result.objective_history.back();
    result.partition.k = k;
    for (std::size_t i = 0; i < n; ++i)
        result.partition.assignment[model.doc_ids[i]] = labels[i];
    return result;
}

double silhouette(const std::vector<int>& labels,
                  const std::function<double(std::size_t, std::size_t)>& dist) {
    std::size_t n = labels.size();
    std::map<int, std::size_t> sizes;
    for (int l : labels) ++sizes[l];
    if (sizes.size() < 2)
        throw std::domain_error("silhouette: need at least two clusters");

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sizes.at(labels[i]) == 1) continue;  // singleton contributes 0
        std::map<int, double> sum_to;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            sum_to[labels[j]] += dist(i, j);
        }
        double a = sum_to[labels[i]] / static_cast<double>(sizes.at(labels[i]) - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [label, size] : sizes) {
            if (label == labels[i]) continue;
            b = std::min(b, sum_to[label] / static_cast<double>(size));
        }
        double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

double modularity(const WeightedGraph& g,
                  const std::map<std::string, int>& labels) {
    if (g.empty() || g.edges().empty())
        throw std::domain_error("modularity: empty graph");
    for (const auto& u : g.nodes())
        if (!labels.count(u))
            throw std::domain_error("modularity: node without label: " + u);

    double m = g.total_weight();
    std::map<int, double> w_in, degree;
    for (const auto& [key, w] : g.edges()) {
        int cu = labels.at(key.first);
        int cv = labels.at(key.second);
        degree[cu] += w;
        degree[cv] += w;
        if (cu == cv) w_in[cu] += w;
    }
    double q = 0.0;
    for (const auto& [c, deg] : degree) {
        double frac = deg / (2.0 * m);
        q += w_in[c] / m - frac * frac;
    }
    return q;
}

double purity(const Partition& partition, const Partition& truth) {
    if (partition.assignment.size() != truth.assignment.size())
        throw std::domain_error("purity: item sets differ in size");
    std::map<int, std::map<int, std::size_t>> counts;  // cluster -> truth -> n
    for (const auto& [id, label] : partition.assignment) {
        auto it = truth.assignment.find(id);
        if (it == truth.assignment.end())
            throw std::domain_error("purity: item missing from truth: " + id);
        ++counts[label][it->second];
    }
    std::size_t correct = 0;
    for (const auto& [label, hist] : counts) {
        std::size_t best = 0;
        for (const auto& [t, c] : hist) best = std::max(best, c);
        correct += best;
    }
    return static_cast<double>(correct) /
           static_cast<double>(partition.assignment.size());
}

}  // namespace streamcomm
