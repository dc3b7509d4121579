#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lightcone/continuum_traces.hpp"
#include "lightcone/event_sampling.hpp"
#include "lightcone/finite_topology.hpp"

namespace lightcone {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// [num, den]; each part is a JSON integer when it fits in 64 bits, a decimal string otherwise.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

/// {"schema": 1, "events": [[[num,den] x4], ...]}; ids are positions.
json sample_to_json(const Sample& s);
/// Throws BadConfig on a malformed document, a schema mismatch or duplicate events.
Sample sample_from_json(const json& j);

Sample read_sample(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// One event per line, "t x y z" with rational coordinates.
std::string sample_to_text(const Sample& s);

/// {"ground_size": n, "role": "base"|"subbase", "members": [[ids...], ...]} in canonical order.
json family_to_json(const TopologyBase& t);

/// {"schema": 1, "relation": kind, "ground_size": n, "pairs": [[i,j], ...]}.
json relation_to_json(const RelationMatrix& m, RelationKind kind);
/// Lines "i j" for every related pair, row-major.
std::string relation_to_text(const RelationMatrix& m);
/// Graphviz digraph with one node per event (labelled with its coordinates) and one edge per pair.
std::string relation_to_dot(const RelationMatrix& m, const Sample& s, RelationKind kind);

json trace_report_to_json(const TraceReport& r);

/// Serialized with sorted keys and two-space indentation, newline terminated.
std::string dump(const json& j);

}  // namespace lightcone
