#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "streamcomm/types.hpp"

namespace streamcomm {

// The six pairwise similarity metrics used to grade cohesiveness.
// Tweet is content (token) similarity; the rest are metadata metrics.
enum class Metric { Hashtag, Mention, Follower, Followee, Friendship, Tweet };

const char* metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// Token similarity normalization. Intersection is the token-set cosine
// |a∩b| / (sqrt|a|·sqrt|b|); UnionLiteral replaces the numerator with
// |a∪b| and is kept only for fidelity experiments (its values are not
// bounded by 1).
enum class ContSimVariant { Intersection, UnionLiteral };

double cont_sim(const std::set<std::string>& a, const std::set<std::string>& b,
                ContSimVariant variant = ContSimVariant::Intersection);

// Mixing weights for the aggregate similarity. alpha blends content vs
// metadata; metadata_weights cover the five metadata metrics and are
// renormalized over whichever metrics are available on both records.
struct SimWeights {
    double alpha = 0.7;
    std::map<Metric, double> metadata_weights = {
        {Metric::Hashtag, 0.2},
        {Metric::Mention, 0.2},
        {Metric::Follower, 0.2},
        {Metric::Followee, 0.2},
        {Metric::Friendship, 0.2},
    };
};

double met_sim(const Metadata& a, const Metadata& b, const SimWeights& w);

// alpha*c + (1-alpha)*m. Throws std::domain_error if any input leaves [0,1].
double agg_sim(double c, double m, double alpha);

// Full pairwise similarity between two documents: cont_sim on tokens,
// met_sim on metadata, blended by w.alpha.
double pair_sim(const Document& a, const Document& b, const SimWeights& w,
                ContSimVariant variant = ContSimVariant::Intersection);

// Cohesiveness tiers, strongest first. Uncategorised is the floor used
// when no rule pattern matches.
enum class Tier { Highly, High, Moderate, Low, Others, Uncategorised };

const char* tier_name(Tier t);

struct TierRule {
    Tier tier;
    std::set<Metric> required;
};

// The built-in rule table: which metrics each tier requires.
const std::vector<TierRule>& default_tier_rules();

// Highest-ranked tier whose required metric set is a subset of the true
// indicators. Rules are tried in the order given (assumed strongest first).
Tier cohesiveness_tier(const std::map<Metric, bool>& indicators,
                       const std::vector<TierRule>& rules = default_tier_rules());

// Per-metric pair scores thresholded into boolean indicators.
// Metrics unavailable on either side are marked false.
std::map<Metric, bool> pair_indicators(const Document& a, const Document& b,
                                       double threshold = 0.5,
                                       ContSimVariant variant = ContSimVariant::Intersection);

// Rule table file: one rule per line, "<tier> <metric> <metric> ...",
// '#' starts a comment. Lines are ordered strongest first.
std::vector<TierRule> load_tier_rules(std::istream& in);

}  // namespace streamcomm
