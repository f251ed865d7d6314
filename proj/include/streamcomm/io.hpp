#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamcomm/dispersion.hpp"
#include "streamcomm/engine.hpp"
#include "streamcomm/synth.hpp"
#include "streamcomm/types.hpp"

namespace streamcomm {

// JSON Lines serialization of the input record format (the same shape
// parse_record consumes).
nlohmann::json record_to_json(const RawRecord& r);
std::string record_to_line(const RawRecord& r);

// Epoch snapshot: epoch id, objective, counts, and per cluster its id,
// member document/user ids, size, and the top_k heaviest centroid tokens.
nlohmann::json snapshot_to_json(const EpochSnapshot& s, std::size_t top_k = 10);
std::string snapshot_to_line(const EpochSnapshot& s, std::size_t top_k = 10);

// Rebuild a snapshot from its JSON form. Members carry only ids and user
// ids (token sets are not serialized), which is enough for epoch matching
// and event detection.
EpochSnapshot snapshot_from_json(const nlohmann::json& j);
std::vector<EpochSnapshot> read_snapshots(std::istream& in);

nlohmann::json event_to_json(const CommunityEvent& e);

nlohmann::json truth_to_json(const TruthEntry& t);
std::vector<TruthEntry> read_truth(std::istream& in);

}  // namespace streamcomm
