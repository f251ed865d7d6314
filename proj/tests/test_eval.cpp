#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "streamcomm/eval.hpp"

using namespace streamcomm;

namespace {

Document make_doc(std::string id, std::set<std::string> tokens) {
    Document d;
    d.id = std::move(id);
    d.user_id = "u_" + d.id;
    d.tokens = std::move(tokens);
    return d;
}

// independent oracle over the full pairwise distance matrix
double silhouette_oracle(const std::vector<int>& labels,
                         const std::vector<std::vector<double>>& d) {
    std::size_t n = labels.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t own = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (labels[j] == labels[i]) ++own;
        if (own == 1) continue;
        double a = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && labels[j] == labels[i]) a += d[i][j];
        a /= static_cast<double>(own - 1);
        double b = std::numeric_limits<double>::infinity();
        std::set<int> others(labels.begin(), labels.end());
        for (int l : others) {
            if (l == labels[i]) continue;
            double s = 0.0;
            std::size_t cnt = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (labels[j] == l) {
                    s += d[i][j];
                    ++cnt;
                }
            b = std::min(b, s / static_cast<double>(cnt));
        }
        total += (b - a) / std::max(a, b);
    }
    return total / static_cast<double>(n);
}

std::vector<Document> planted_corpus(int topics, int per_topic,
                                     std::vector<int>* truth,
                                     std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    std::vector<Document> docs;
    for (int t = 0; t < topics; ++t) {
        for (int i = 0; i < per_topic; ++i) {
            std::set<std::string> tokens;
            std::uniform_int_distribution<int> word(0, 9);
            while (tokens.size() < 4)
                tokens.insert("topic" + std::to_string(t) + "w" +
                              std::to_string(word(rng)));
            docs.push_back(
                make_doc("d" + std::to_string(t) + "_" + std::to_string(i),
                         std::move(tokens)));
            if (truth) truth->push_back(t);
        }
    }
    return docs;
}

}  // namespace

TEST_CASE("tfidf basics") {
    CHECK_THROWS_AS(tfidf({}), std::domain_error);

    // a token in every document gets idf ln(1) + 1 = 1
    std::vector<Document> corpus{make_doc("a", {"common", "rare1"}),
                                 make_doc("b", {"common", "rare2"})};
    TfidfModel m = tfidf(corpus);
    CHECK(m.idf.at("common") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.idf.at("rare1") ==
          doctest::Approx(std::log(3.0 / 2.0) + 1.0).epsilon(1e-12));

    // vectors are unit length
    for (const auto& vec : m.vectors) {
        double n2 = 0.0;
        for (const auto& [idx, v] : vec) n2 += v * v;
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    }

    // hand oracle for document "a"
    double c = 1.0, r = std::log(1.5) + 1.0;
    double norm = std::sqrt(c * c + r * r);
    CHECK(m.vectors[0].at(m.vocabulary.at("common")) ==
          doctest::Approx(c / norm).epsilon(1e-12));
    CHECK(m.vectors[0].at(m.vocabulary.at("rare1")) ==
          doctest::Approx(r / norm).epsilon(1e-12));
}

TEST_CASE("cosine_distance") {
    std::map<int, double> x{{0, 1.0}};
    std::map<int, double> y{{1, 1.0}};
    CHECK(cosine_distance(x, x) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cosine_distance(x, y) == doctest::Approx(1.0).epsilon(1e-12));
    std::map<int, double> z{{0, std::sqrt(0.5)}, {1, std::sqrt(0.5)}};
    CHECK(cosine_distance(x, z) ==
          doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("batch_cluster recovers planted topics") {
    std::vector<int> truth_labels;
    auto corpus = planted_corpus(3, 30, &truth_labels, 7);
    TfidfModel m = tfidf(corpus);
    BatchResult r = batch_cluster(m, 3, 300, 1);
    CHECK(r.converged);
    CHECK(r.iterations <= 300);

    Partition truth;
    truth.k = 3;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        truth.assignment[corpus[i].id] = truth_labels[i];
    CHECK(purity(r.partition, truth) == doctest::Approx(1.0));

    // objective never increases between iterations
    for (std::size_t i = 1; i < r.objective_history.size(); ++i)
        CHECK(r.objective_history[i] <= r.objective_history[i - 1] + 1e-9);
}

TEST_CASE("batch_cluster edge cases") {
    auto corpus = planted_corpus(2, 4, nullptr);
    TfidfModel m = tfidf(corpus);
    CHECK_THROWS_AS(batch_cluster(m, 0), std::domain_error);
    CHECK_THROWS_AS(batch_cluster(m, 9), std::domain_error);
    CHECK_THROWS_AS(batch_cluster(m, 2, 0), std::domain_error);

    // k == N puts every item in its own cluster, objective 0
    BatchResult r = batch_cluster(m, 8, 300, 3);
    CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-9));

    // deterministic given the seed
    BatchResult r2 = batch_cluster(m, 3, 300, 17);
    BatchResult r3 = batch_cluster(m, 3, 300, 17);
    CHECK(r2.partition.assignment == r3.partition.assignment);
    CHECK(r2.objective_history == r3.objective_history);
}

TEST_CASE("silhouette on two well-separated pairs") {
    // points on a line: {0, 0.1} and {10, 10.1}
    std::vector<double> pts{0.0, 0.1, 10.0, 10.1};
    std::vector<int> labels{0, 0, 1, 1};
    auto dist = [&](std::size_t i, std::size_t j) {
        return std::abs(pts[i] - pts[j]);
    };
    double s = silhouette(labels, dist);
    CHECK(s > 0.8);
    CHECK(s <= 1.0);

    SUBCASE("singletons contribute zero") {
        std::vector<int> with_single{0, 0, 1, 2};
        double s2 = silhouette(with_single, dist);
        // the two singleton points add nothing to the numerator
        CHECK(s2 < s);
    }
    SUBCASE("fewer than two clusters") {
        CHECK_THROWS_AS(silhouette({0, 0, 0, 0}, dist), std::domain_error);
    }
}

TEST_CASE("silhouette matches the matrix oracle on random data") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::uniform_int_distribution<int> label(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 30;
        std::vector<double> xs(n), ys(n);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = coord(rng);
            ys[i] = coord(rng);
            labels[i] = label(rng);
        }
        std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
        auto dist = [&](std::size_t i, std::size_t j) { return d[i][j]; };
        CHECK(silhouette(labels, dist) ==
              doctest::Approx(silhouette_oracle(labels, d)).epsilon(1e-9));
    }
}

TEST_CASE("random labels on a single blob score near zero") {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::uniform_int_distribution<int> label(0, 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        std::size_t n = 40;
        std::vector<double> xs(n), ys(n);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = coord(rng);
            ys[i] = coord(rng);
            labels[i] = label(rng);
        }
        auto dist = [&](std::size_t i, std::size_t j) {
            return std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
        };
        CHECK(std::abs(silhouette(labels, dist)) < 0.2);
    }
}

TEST_CASE("modularity of two disjoint triangles is 1/2") {
    WeightedGraph g;
    g.add_edge("a", "b", 1.0);
    g.add_edge("b", "c", 1.0);
    g.add_edge("a", "c", 1.0);
    g.add_edge("x", "y", 1.0);
    g.add_edge("y", "z", 1.0);
    g.add_edge("x", "z", 1.0);
    std::map<std::string, int> labels{{"a", 0}, {"b", 0}, {"c", 0},
                                      {"x", 1}, {"y", 1}, {"z", 1}};
    CHECK(modularity(g, labels) == doctest::Approx(0.5).epsilon(1e-12));

    SUBCASE("one community over everything scores zero") {
        std::map<std::string, int> one;
        for (const auto& u : g.nodes()) one[u] = 0;
        CHECK(modularity(g, one) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("invariant under relabeling") {
        std::map<std::string, int> relabeled{{"a", 9}, {"b", 9}, {"c", 9},
                                             {"x", 4}, {"y", 4}, {"z", 4}};
        CHECK(modularity(g, relabeled) ==
              doctest::Approx(modularity(g, labels)).epsilon(1e-12));
    }
    SUBCASE("the correct split maximizes Q over all 2-colorings") {
        const std::vector<std::string> nodes(g.nodes().begin(), g.nodes().end());
        double best = -1.0;
        for (int mask = 0; mask < 64; ++mask) {
            std::map<std::string, int> cand;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                cand[nodes[i]] = (mask >> i) & 1;
            best = std::max(best, modularity(g, cand));
        }
        CHECK(best == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(modularity(WeightedGraph{}, {}), std::domain_error);
        std::map<std::string, int> partial{{"a", 0}};
        CHECK_THROWS_AS(modularity(g, partial), std::domain_error);
    }
}

TEST_CASE("purity") {
    Partition p, t;
    p.assignment = {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}};
    t.assignment = {{"a", 5}, {"b", 5}, {"c", 6}, {"d", 6}};
    CHECK(purity(p, t) == doctest::Approx(1.0));

    t.assignment["d"] = 5;  // one item in the wrong cluster
    CHECK(purity(p, t) == doctest::Approx(0.75));

    // maximally mixed two-cluster case
    Partition mixed;
    mixed.assignment = {{"a", 0}, {"b", 1}, {"c", 0}, {"d", 1}};
    t.assignment = {{"a", 5}, {"b", 5}, {"c", 6}, {"d", 6}};
    CHECK(purity(mixed, t) == doctest::Approx(0.5));

    Partition short_truth;
    short_truth.assignment = {{"a", 0}};
    CHECK_THROWS_AS(purity(p, short_truth), std::domain_error);
    Partition wrong_ids;
    wrong_ids.assignment = {{"a", 0}, {"b", 0}, {"c", 0}, {"zzz", 0}};
    CHECK_THROWS_AS(purity(p, wrong_ids), std::domain_error);
}
