#include "streamcomm/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

namespace streamcomm {

const char* metric_name(Metric m) {
    switch (m) {
        case Metric::Hashtag: return "hashtag";
        case Metric::Mention: return "mention";
        case Metric::Follower: return "follower";
        case Metric::Followee: return "followee";
        case Metric::Friendship: return "friendship";
        case Metric::Tweet: return "tweet";
    }
    return "?";
}

Metric metric_from_name(const std::string& name) {
    for (Metric m : {Metric::Hashtag, Metric::Mention, Metric::Follower,
                     Metric::Followee, Metric::Friendship, Metric::Tweet}) {
        if (name == metric_name(m)) return m;
    }
    throw std::invalid_argument("unknown metric: " + name);
}

namespace {

std::size_t intersection_size(const std::set<std::string>& a,
                              const std::set<std::string>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& big = a.size() <= b.size() ? b : a;
    std::size_t n = 0;
    for (const auto& x : small) n += big.count(x);
    return n;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t inter = intersection_size(a, b);
    std::size_t uni = a.size() + b.size() - inter;
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

bool contains(const std::set<std::string>& s, const std::string& x) {
    return s.count(x) > 0;
}

// Mutual follow, derivable only when each side exposes enough relational
// data to decide both directions.
bool friendship_available(const Metadata& a, const Metadata& b) {
    bool a_to_b_decidable = a.followees.has_value() || b.followers.has_value();
    bool b_to_a_decidable = b.followees.has_value() || a.followers.has_value();
    return a_to_b_decidable && b_to_a_decidable;
}

bool friends(const Metadata& a, const Metadata& b) {
    bool a_follows_b = (a.followees && contains(*a.followees, b.user_id)) ||
                       (b.followers && contains(*b.followers, a.user_id));
    bool b_follows_a = (b.followees && contains(*b.followees, a.user_id)) ||
                       (a.followers && contains(*a.followers, b.user_id));
    return a_follows_b && b_follows_a;
}

}  // namespace

double cont_sim(const std::set<std::string>& a, const std::set<std::string>& b,
                ContSimVariant variant) {
    if (a.empty() || b.empty()) return 0.0;
    double denom = std::sqrt(static_cast<double>(a.size())) *
                   std::sqrt(static_cast<double>(b.size()));
    if (variant == ContSimVariant::UnionLiteral) {
        std::size_t uni = a.size() + b.size() - intersection_size(a, b);
        return static_cast<double>(uni) / denom;
    }
    // the ratio is <= 1 mathematically; clamp away sqrt rounding noise
    return std::min(1.0, static_cast<double>(intersection_size(a, b)) / denom);
}

double met_sim(const Metadata& a, const Metadata& b, const SimWeights& w) {
    double total_weight = 0.0;
    double score = 0.0;
    auto take = [&](Metric m, double s) {
        auto it = w.metadata_weights.find(m);
        double wt = it == w.metadata_weights.end() ? 0.0 : it->second;
        total_weight += wt;
        score += wt * s;
    };
    take(Metric::Hashtag, jaccard(a.hashtags, b.hashtags));
    take(Metric::Mention, jaccard(a.mentions, b.mentions));
    if (a.followers && b.followers)
        take(Metric::Follower, jaccard(*a.followers, *b.followers));
    if (a.followees && b.followees)
        take(Metric::Followee, jaccard(*a.followees, *b.followees));
    if (friendship_available(a, b))
        take(Metric::Friendship, friends(a, b) ? 1.0 : 0.0);
    if (total_weight <= 0.0) return 0.0;
    return score / total_weight;
}

double agg_sim(double c, double m, double alpha) {
    if (c < 0.0 || c > 1.0 || m < 0.0 || m > 1.0 || alpha < 0.0 || alpha > 1.0)
        throw std::domain_error("agg_sim: inputs must be in [0,1]");
    return alpha * c + (1.0 - alpha) * m;
}

double pair_sim(const Document& a, const Document& b, const SimWeights& w,
                ContSimVariant variant) {
    double c = cont_sim(a.tokens, b.tokens, variant);
    if (variant == ContSimVariant::UnionLiteral) c = std::min(c, 1.0);
    return agg_sim(c, met_sim(a.metadata, b.metadata, w), w.alpha);
}

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::Highly: return "Highly";
        case Tier::High: return "High";
        case Tier::Moderate: return "Moderate";
        case Tier::Low: return "Low";
        case Tier::Others: return "Others";
        case Tier::Uncategorised: return "Uncategorised";
    }
    return "?";
}

const std::vector<TierRule>& default_tier_rules() {
    static const std::vector<TierRule> rules = {
        {Tier::Highly,
         {Metric::Hashtag, Metric::Mention, Metric::Follower, Metric::Followee,
          Metric::Friendship, Metric::Tweet}},
        {Tier::High,
         {Metric::Follower, Metric::Followee, Metric::Friendship, Metric::Tweet}},
        {Tier::Moderate, {Metric::Hashtag, Metric::Mention, Metric::Tweet}},
        {Tier::Low, {Metric::Hashtag, Metric::Mention, Metric::Follower}},
        {Tier::Others, {Metric::Mention, Metric::Follower}},
    };
    return rules;
}

Tier cohesiveness_tier(const std::map<Metric, bool>& indicators,
                       const std::vector<TierRule>& rules) {
    auto holds = [&](Metric m) {
        auto it = indicators.find(m);
        return it != indicators.end() && it->second;
    };
    for (const auto& rule : rules) {
        bool ok = std::all_of(rule.required.begin(), rule.required.end(), holds);
        if (ok) return rule.tier;
    }
    return Tier::Uncategorised;
}

std::map<Metric, bool> pair_indicators(const Document& a, const Document& b,
                                       double threshold, ContSimVariant variant) {
    const Metadata& ma = a.metadata;
    const Metadata& mb = b.metadata;
    std::map<Metric, bool> out;
    out[Metric::Tweet] = cont_sim(a.tokens, b.tokens, variant) >= threshold;
    out[Metric::Hashtag] = jaccard(ma.hashtags, mb.hashtags) >= threshold;
    out[Metric::Mention] = jaccard(ma.mentions, mb.mentions) >= threshold;
    out[Metric::Follower] = ma.followers && mb.followers &&
                            jaccard(*ma.followers, *mb.followers) >= threshold;
    out[Metric::Followee] = ma.followees && mb.followees &&
                            jaccard(*ma.followees, *mb.followees) >= threshold;
    out[Metric::Friendship] = friendship_available(ma, mb) && friends(ma, mb);
    return out;
}

std::vector<TierRule> load_tier_rules(std::istream& in) {
    std::vector<TierRule> rules;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string tier_str;
        if (!(ss >> tier_str)) continue;
        TierRule rule;
        bool found = false;
        for (Tier t : {Tier::Highly, Tier::High, Tier::Moderate, Tier::Low,
                       Tier::Others}) {
            if (tier_str == tier_name(t)) {
                rule.tier = t;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("unknown tier: " + tier_str);
        std::string metric_str;
        while (ss >> metric_str) rule.required.insert(metric_from_name(metric_str));
        rules.push_back(std::move(rule));
    }
    return rules;
}

}  // namespace streamcomm
