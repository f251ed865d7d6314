#include "streamcomm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include <nlohmann/json.hpp>

namespace streamcomm {

using nlohmann::json;

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a",    "an",   "and",  "are",  "as",    "at",    "be",    "but",
        "by",   "for",  "from", "had",  "has",   "have",  "he",    "her",
        "his",  "i",    "if",   "in",   "is",    "it",    "its",   "my",
        "no",   "not",  "of",   "on",   "or",    "our",   "she",   "so",
        "that", "the",  "their", "them", "there", "they",  "this",  "to",
        "was",  "we",   "were", "will", "with",  "you",   "your",
    };
    return words;
}

PreprocessConfig::PreprocessConfig() : stopwords(default_stopwords()) {}

std::set<std::string> load_stopwords(std::istream& in) {
    std::set<std::string> words;
    std::string w;
    while (in >> w) {
        std::transform(w.begin(), w.end(), w.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        words.insert(w);
    }
    return words;
}

namespace {

std::optional<std::vector<std::string>> opt_string_list(const json& j,
                                                        const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    std::vector<std::string> out;
    for (const auto& x : *it) out.push_back(x.get<std::string>());
    return out;
}

std::optional<std::set<std::string>> opt_string_set(const json& j,
                                                    const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    std::set<std::string> out;
    for (const auto& x : *it) out.insert(x.get<std::string>());
    return out;
}

}  // namespace

RawRecord parse_record(const std::string& line, std::size_t line_no) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed record: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError("record is not an object", line_no);
    RawRecord r;
    try {
        r.id = j.at("id").get<std::string>();
        r.user_id = j.at("user_id").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::int64_t>();
        r.text = j.at("text").get<std::string>();
        r.verified = j.at("verified").get<bool>();
        r.hashtags = opt_string_list(j, "hashtags");
        r.mentions = opt_string_list(j, "mentions");
        r.followers = opt_string_set(j, "followers");
        r.followees = opt_string_set(j, "followees");
    } catch (const json::exception& e) {
        throw SchemaError(std::string("bad record field: ") + e.what(), line_no);
    }
    if (r.id.empty()) throw SchemaError("record id is empty", line_no);
    if (r.timestamp < 0) throw SchemaError("negative timestamp", line_no);
    return r;
}

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Remove maximal substrings starting with http:// or https:// (up to the
// next whitespace).
void strip_urls(std::string& s) {
    for (const char* scheme : {"https://", "http://"}) {
        std::size_t pos = 0;
        while ((pos = s.find(scheme, pos)) != std::string::npos) {
            std::size_t end = pos;
            while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])))
                ++end;
            s.erase(pos, end - pos);
        }
    }
}

std::string strip_punct(const std::string& w) {
    std::string out;
    for (unsigned char c : w)
        if (!std::ispunct(c)) out.push_back(static_cast<char>(c));
    return out;
}

}  // namespace

Document preprocess(const RawRecord& r, const PreprocessConfig& cfg,
                    const WindowSpec& w) {
    if (w.width <= 0) throw std::invalid_argument("window width must be positive");
    if (r.timestamp < w.origin)
        throw WindowError("timestamp " + std::to_string(r.timestamp) +
                          " precedes window origin " + std::to_string(w.origin));

    Document d;
    d.id = r.id;
    d.user_id = r.user_id;
    d.timestamp = r.timestamp;
    d.epoch = (r.timestamp - w.origin) / w.width;
    d.metadata.user_id = r.user_id;
    d.metadata.followers = r.followers;
    d.metadata.followees = r.followees;
    if (r.hashtags)
        for (const auto& h : *r.hashtags) d.metadata.hashtags.insert(lowercase(h));
    if (r.mentions)
        for (const auto& m : *r.mentions) d.metadata.mentions.insert(lowercase(m));

    std::string text = lowercase(r.text);
    if (cfg.strip_urls) strip_urls(text);

    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i == start) continue;
        std::string word = text.substr(start, i - start);
        if (word[0] == '#' || word[0] == '@') {
            std::string bare = strip_punct(word.substr(1));
            if (!bare.empty()) {
                if (word[0] == '#')
                    d.metadata.hashtags.insert(bare);
                else
                    d.metadata.mentions.insert(bare);
            }
            continue;
        }
        std::string tok = strip_punct(word);
        if (static_cast<int>(tok.size()) < cfg.min_token_length) continue;
        if (tok.empty() || cfg.stopwords.count(tok)) continue;
        d.tokens.insert(std::move(tok));
    }
    return d;
}

bool passes_filters(const RawRecord& r, const FilterConfig& f) {
    if (f.min_hashtags < 0 || f.min_mentions < 0)
        throw std::invalid_argument("filter thresholds must be >= 0");
    if (f.exclude_verified && r.verified) return false;
    std::size_t n_hashtags = r.hashtags ? r.hashtags->size() : 0;
    std::size_t n_mentions = r.mentions ? r.mentions->size() : 0;
    return n_hashtags >= static_cast<std::size_t>(f.min_hashtags) &&
           n_mentions >= static_cast<std::size_t>(f.min_mentions);
}

}  // namespace streamcomm
