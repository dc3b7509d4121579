#include "lightcone/serialization.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "lightcone/errors.hpp"

namespace lightcone {

namespace {

json integer_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

BigInt integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    return BigInt(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    try {
      const Scalar v = parse_scalar(s);
      if (denominator_of(v) != 1) throw BadConfig("expected an integer, got '" + s + "'");
      return numerator_of(v);
    } catch (const InvalidArgument& e) {
      throw BadConfig(e.what());
    }
  }
  throw BadConfig("expected an integer");
}

}  // namespace

json scalar_to_json(const Scalar& s) {
  return json::array({integer_to_json(numerator_of(s)), integer_to_json(denominator_of(s))});
}

Scalar scalar_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw BadConfig("rational must be a [num, den] pair");
  const BigInt den = integer_from_json(j[1]);
  if (den == 0) throw BadConfig("rational with zero denominator");
  return Scalar(integer_from_json(j[0]), den);
}

json sample_to_json(const Sample& s) {
  json events = json::array();
  for (const auto& e : s.events()) {
    json coords = json::array();
    for (std::size_t i = 0; i < 4; ++i) coords.push_back(scalar_to_json(e[i]));
    events.push_back(std::move(coords));
  }
  return json{{"schema", kSchemaVersion}, {"events", std::move(events)}};
}

Sample sample_from_json(const json& j) {
  if (!j.is_object()) throw BadConfig("event set must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) {
    throw BadConfig("unsupported event-set schema " + j.at("schema").dump());
  }
  if (!j.contains("events") || !j.at("events").is_array()) throw BadConfig("event set needs an \"events\" array");
  std::vector<Event4> events;
  for (const auto& item : j.at("events")) {
    if (!item.is_array() || item.size() != 4) throw BadConfig("each event needs exactly four coordinates");
    Event4 e;
    for (std::size_t i = 0; i < 4; ++i) e[i] = scalar_from_json(item[i]);
    events.push_back(std::move(e));
  }
  try {
    return Sample(std::move(events));
  } catch (const InvalidArgument& e) {
    throw BadConfig(e.what());
  }
}

Sample read_sample(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw BadConfig("malformed JSON in " + path.string() + ": " + e.what());
  }
  return sample_from_json(j);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadConfig("cannot write " + path.string());
  out << text;
}

std::string sample_to_text(const Sample& s) {
  std::ostringstream os;
  for (const auto& e : s.events()) {
    os << to_string(e[0]) << ' ' << to_string(e[1]) << ' ' << to_string(e[2]) << ' ' << to_string(e[3]) << '\n';
  }
  return os.str();
}

json family_to_json(const TopologyBase& t) {
  json members = json::array();
  for (const auto& s : t.family) members.push_back(s.ids());
  return json{{"ground_size", t.ground_size},
              {"role", t.role == TopologyBase::Role::Base ? "base" : "subbase"},
              {"members", std::move(members)}};
}

json relation_to_json(const RelationMatrix& m, RelationKind kind) {
  json pairs = json::array();
  for (std::size_t i = 0; i < m.ground_size(); ++i) {
    for (auto j : m.row(i).ids()) pairs.push_back(json::array({i, j}));
  }
  return json{{"schema", kSchemaVersion},
              {"relation", std::string(to_string(kind))},
              {"ground_size", m.ground_size()},
              {"pairs", std::move(pairs)}};
}

std::string relation_to_text(const RelationMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.ground_size(); ++i) {
    for (auto j : m.row(i).ids()) os << i << ' ' << j << '\n';
  }
  return os.str();
}

std::string relation_to_dot(const RelationMatrix& m, const Sample& s, RelationKind kind) {
  std::ostringstream os;
  os << "digraph " << to_string(kind) << " {\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::ostringstream label;
    label << s[i];
    os << "  e" << i << " [label=\"" << i << ' ' << label.str() << "\"];\n";
  }
  for (std::size_t i = 0; i < m.ground_size(); ++i) {
    for (auto j : m.row(i).ids()) os << "  e" << i << " -> e" << j << ";\n";
  }
  os << "}\n";
  return os.str();
}

json trace_report_to_json(const TraceReport& r) {
  json families = json::object();
  json sizes = json::object();
  for (const auto& [name, base] : r.families) {
    families[name] = family_to_json(base);
    sizes[name] = base.family.size();
  }
  json verdicts = json::object();
  for (const auto& [name, value] : r.verdicts) verdicts[name] = value;
  json out{{"schema", kSchemaVersion},
           {"sample_hash", r.sample_hash},
           {"family_sizes", std::move(sizes)},
           {"families", std::move(families)},
           {"verdicts", std::move(verdicts)}};
  if (!r.axis_ids.empty()) out["axis_ids"] = r.axis_ids;
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lightcone
