#include "streamcomm/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

namespace streamcomm {

void ScenarioConfig::validate() const {
    if (topics < 1) throw std::invalid_argument("topics must be >= 1");
    if (guests < topics)
        throw std::invalid_argument("need at least one guest per topic");
    if (vocab_per_topic < 1)
        throw std::invalid_argument("vocab_per_topic must be >= 1");
    if (vocab_overlap < 0.0 || vocab_overlap >= 1.0)
        throw std::invalid_argument("vocab_overlap must be in [0,1)");
    if (tokens_per_doc < 1 || tokens_per_doc > vocab_per_topic)
        throw std::invalid_argument("tokens_per_doc must be in [1, vocab_per_topic]");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (arrival_rate <= 0.0)
        throw std::invalid_argument("arrival_rate must be positive");
    if (docs_per_epoch && *docs_per_epoch < 1)
        throw std::invalid_argument("docs_per_epoch must be >= 1");
    if (!schedule.empty() && schedule.size() != static_cast<std::size_t>(topics))
        throw std::invalid_argument("schedule must have one entry per topic");
    for (const auto& s : schedule) {
        if (s.birth_epoch < 0 || s.rate <= 0.0 ||
            (s.death_epoch && *s.death_epoch < s.birth_epoch))
            throw std::invalid_argument("invalid topic schedule");
    }
    if (hashtag_prob < 0.0 || hashtag_prob > 1.0 || mention_prob < 0.0 ||
        mention_prob > 1.0)
        throw std::invalid_argument("probabilities must be in [0,1]");
    if (hashtags_per_topic < 0)
        throw std::invalid_argument("hashtags_per_topic must be >= 0");
    if (window.width <= 0) throw std::invalid_argument("window width must be positive");
}

namespace {

struct Pending {
    RawRecord record;
    int topic;
    std::int64_t epoch;
    std::size_t order;  // generation index, stable tie-break
};

}  // namespace

LabeledStream generate_stream(const ScenarioConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);

    int shared_count =
        static_cast<int>(cfg.vocab_overlap * cfg.vocab_per_topic + 0.5);
    int own_count = cfg.vocab_per_topic - shared_count;

    std::vector<std::string> shared_vocab;
    for (int i = 0; i < shared_count; ++i)
        shared_vocab.push_back("shr" + std::to_string(i));

    std::vector<std::vector<std::string>> vocab(cfg.topics);
    std::vector<std::vector<std::string>> users(cfg.topics);
    std::vector<std::vector<std::string>> hashtags(cfg.topics);
    for (int t = 0; t < cfg.topics; ++t) {
        for (int i = 0; i < own_count; ++i)
            vocab[t].push_back("t" + std::to_string(t) + "w" + std::to_string(i));
        vocab[t].insert(vocab[t].end(), shared_vocab.begin(), shared_vocab.end());
        for (int i = 0; i < cfg.hashtags_per_topic; ++i)
            hashtags[t].push_back("ht" + std::to_string(t) + "_" + std::to_string(i));
    }
    for (int g = 0; g < cfg.guests; ++g)
        users[g % cfg.topics].push_back("u" + std::to_string(g % cfg.topics) +
                                        "_" + std::to_string(g / cfg.topics));

    auto schedule_of = [&](int t) -> TopicSchedule {
        if (!cfg.schedule.empty()) return cfg.schedule[t];
        TopicSchedule s;
        s.rate = cfg.arrival_rate;
        return s;
    };
    auto alive = [&](int t, std::int64_t e) {
        TopicSchedule s = schedule_of(t);
        return e >= s.birth_epoch && (!s.death_epoch || e <= *s.death_epoch);
    };

    std::vector<Pending> pending;
    for (std::int64_t e = 0; e < cfg.epochs; ++e) {
        std::vector<int> alive_topics;
        for (int t = 0; t < cfg.topics; ++t)
            if (alive(t, e)) alive_topics.push_back(t);
        if (alive_topics.empty()) continue;

        std::vector<int> counts(cfg.topics, 0);
        if (cfg.docs_per_epoch) {
            int base = *cfg.docs_per_epoch / static_cast<int>(alive_topics.size());
            int rem = *cfg.docs_per_epoch % static_cast<int>(alive_topics.size());
            for (std::size_t i = 0; i < alive_topics.size(); ++i)
                counts[alive_topics[i]] = base + (static_cast<int>(i) < rem ? 1 : 0);
        } else {
            for (int t : alive_topics) {
                std::poisson_distribution<int> arrivals(schedule_of(t).rate);
                counts[t] = arrivals(rng);
            }
        }

        std::uniform_int_distribution<std::int64_t> offset(0, cfg.window.width - 1);
        std::bernoulli_distribution use_hashtag(cfg.hashtag_prob);
        std::bernoulli_distribution use_mention(cfg.mention_prob);
        for (int t : alive_topics) {
            std::uniform_int_distribution<std::size_t> pick_user(0, users[t].size() - 1);
            for (int i = 0; i < counts[t]; ++i) {
                Pending p;
                p.topic = t;
                p.epoch = e;
                p.order = pending.size();
                RawRecord& r = p.record;
                r.user_id = users[t][pick_user(rng)];
                r.timestamp = cfg.window.origin + e * cfg.window.width + offset(rng);
                r.verified = false;

                // partial Fisher-Yates draw without replacement
                std::vector<std::string> pool = vocab[t];
                std::string text;
                for (int j = 0; j < cfg.tokens_per_doc; ++j) {
                    std::uniform_int_distribution<std::size_t> pick(j, pool.size() - 1);
                    std::swap(pool[j], pool[pick(rng)]);
                    if (!text.empty()) text += ' ';
                    text += pool[j];
                }
                r.text = std::move(text);

                if (!hashtags[t].empty() && use_hashtag(rng)) {
                    std::uniform_int_distribution<std::size_t> pick(
                        0, hashtags[t].size() - 1);
                    r.hashtags = std::vector<std::string>{hashtags[t][pick(rng)]};
                }
                if (users[t].size() > 1 && use_mention(rng)) {
                    std::string other = r.user_id;
                    while (other == r.user_id) other = users[t][pick_user(rng)];
                    r.mentions = std::vector<std::string>{other};
                }
                pending.push_back(std::move(p));
            }
        }
    }

    std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        if (a.record.timestamp != b.record.timestamp)
            return a.record.timestamp < b.record.timestamp;
        return a.order < b.order;
    });

    LabeledStream out;
    out.records.reserve(pending.size());
    out.truth.reserve(pending.size());
    char buf[24];
    for (std::size_t i = 0; i < pending.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "d%08zu", i);
        pending[i].record.id = buf;
        out.truth.push_back({pending[i].record.id, pending[i].epoch, pending[i].topic});
        out.records.push_back(std::move(pending[i].record));
    }

    for (int t = 0; t < cfg.topics; ++t) {
        TopicSchedule s = schedule_of(t);
        if (!s.death_epoch) continue;
        std::int64_t last = std::min<std::int64_t>(*s.death_epoch, cfg.epochs - 1);
        for (std::int64_t e = s.birth_epoch; e <= last; ++e)
            out.remaining_lifetime[t][e] = *s.death_epoch - e;
    }
    return out;
}

}  // namespace streamcomm
