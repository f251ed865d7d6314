#include "streamcomm/io.hpp"

#include <algorithm>
#include <istream>

namespace streamcomm {

using nlohmann::json;

json record_to_json(const RawRecord& r) {
    json j;
    j["id"] = r.id;
    j["user_id"] = r.user_id;
    j["timestamp"] = r.timestamp;
    j["text"] = r.text;
    j["verified"] = r.verified;
    if (r.hashtags) j["hashtags"] = *r.hashtags;
    if (r.mentions) j["mentions"] = *r.mentions;
    if (r.followers) j["followers"] = *r.followers;
    if (r.followees) j["followees"] = *r.followees;
    return j;
}

std::string record_to_line(const RawRecord& r) { return record_to_json(r).dump(); }

namespace {

json top_tokens(const std::map<std::string, double>& centroid, std::size_t k) {
    std::vector<std::pair<std::string, double>> items(centroid.begin(),
                                                      centroid.end());
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (items.size() > k) items.resize(k);
    json out = json::array();
    for (const auto& [tok, w] : items) out.push_back({{"token", tok}, {"weight", w}});
    return out;
}

}  // namespace

json snapshot_to_json(const EpochSnapshot& s, std::size_t top_k) {
    json j;
    j["epoch"] = s.epoch;
    j["objective"] = s.objective;
    j["item_count"] = s.item_count;
    j["overflow_count"] = s.overflow_count;
    json clusters = json::array();
    for (const auto& c : s.clusters) {
        json jc;
        jc["id"] = c.id;
        jc["size"] = c.size;
        jc["doc_ids"] = c.member_doc_ids();
        jc["user_ids"] = c.member_user_ids();
        jc["top_tokens"] = top_tokens(c.centroid, top_k);
        clusters.push_back(std::move(jc));
    }
    j["clusters"] = std::move(clusters);
    return j;
}

std::string snapshot_to_line(const EpochSnapshot& s, std::size_t top_k) {
    return snapshot_to_json(s, top_k).dump();
}

EpochSnapshot snapshot_from_json(const json& j) {
    EpochSnapshot s;
    s.epoch = j.at("epoch").get<std::int64_t>();
    s.objective = j.at("objective").get<double>();
    s.item_count = j.at("item_count").get<std::size_t>();
    s.overflow_count = j.at("overflow_count").get<std::size_t>();
    for (const auto& jc : j.at("clusters")) {
        Cluster c;
        c.id = jc.at("id").get<int>();
        c.epoch = s.epoch;
        c.size = jc.at("size").get<std::size_t>();
        auto doc_ids = jc.at("doc_ids").get<std::vector<std::string>>();
        auto user_ids = jc.at("user_ids").get<std::vector<std::string>>();
        if (doc_ids.size() != user_ids.size())
            throw std::invalid_argument("snapshot cluster id lists disagree");
        for (std::size_t i = 0; i < doc_ids.size(); ++i) {
            Document d;
            d.id = doc_ids[i];
            d.user_id = user_ids[i];
            d.epoch = s.epoch;
            c.members.push_back(std::move(d));
        }
        for (const auto& jt : jc.at("top_tokens"))
            c.centroid[jt.at("token").get<std::string>()] =
                jt.at("weight").get<double>();
        s.clusters.push_back(std::move(c));
    }
    return s;
}

std::vector<EpochSnapshot> read_snapshots(std::istream& in) {
    std::vector<EpochSnapshot> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(snapshot_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad snapshot: ") + e.what(), line_no);
        }
    }
    return out;
}

json event_to_json(const CommunityEvent& e) {
    return json{{"kind", event_kind_name(e.kind)},
                {"epoch", e.epoch},
                {"clusters", e.clusters},
                {"magnitude", e.magnitude}};
}

json truth_to_json(const TruthEntry& t) {
    return json{{"id", t.id}, {"epoch", t.epoch}, {"topic", t.topic}};
}

std::vector<TruthEntry> read_truth(std::istream& in) {
    std::vector<TruthEntry> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            out.push_back({j.at("id").get<std::string>(),
                           j.at("epoch").get<std::int64_t>(),
                           j.at("topic").get<int>()});
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad truth entry: ") + e.what(), line_no);
        }
    }
    return out;
}

}  // namespace streamcomm
