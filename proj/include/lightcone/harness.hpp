#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lightcone/causal_geometry.hpp"
#include "lightcone/event_sampling.hpp"
#include "lightcone/serialization.hpp"

namespace lightcone {

/// The causal_geometry predicates an experiment evaluates. Replaceable so that the
/// harness can be tested against deliberately wrong geometry.
struct Predicates {
  std::function<ConeClass(const Event4&, const Event4&)> classify = [](const Event4& x, const Event4& y) {
    return lightcone::classify(x, y);
  };
  std::function<bool(const Event4&, const Event4&)> chron = lightcone::chron;
  std::function<bool(const Event4&, const Event4&)> causal = lightcone::causal;
  std::function<bool(const Event4&, const Event4&, bool)> horismos = lightcone::horismos;
  std::function<bool(const Event4&, const Event4&)> in_time_cone = lightcone::in_time_cone;
  std::function<bool(const Event4&, const Event4&)> in_light_cone = lightcone::in_light_cone;
  std::function<bool(const Event4&, const Event4&)> in_space_cone = lightcone::in_space_cone;
  std::function<bool(const Event4&, const Event4&, const Scalar&)> in_ball = lightcone::in_ball;
  std::function<bool(const Event4&, const Event4&, const Scalar&)> in_zeeman_nbhd = lightcone::in_zeeman_nbhd;
  std::function<bool(const Event4&, const Event4&)> in_horismos_ball = lightcone::in_horismos_ball;
};

/// A concrete configuration that either breaks a claim (counterexample) or demonstrates one
/// (witness). Ids refer to the sample named by sample_hash; data carries anything else needed
/// to reproduce it.
struct Evidence {
  std::string kind;
  std::string sample_hash;
  std::optional<std::size_t> center;
  std::optional<Scalar> eps2;
  std::optional<Scalar> delta2;
  std::optional<std::size_t> point;
  std::optional<std::size_t> witness;
  std::string note;
  json data = json::object();
};

/// Re-evaluates the evidence from scratch with the given predicates. True when the
/// configuration still shows what it claims. Throws BadConfig on an unknown kind.
bool recheck(const Evidence& e, const Sample& s, const Predicates& preds = {});

enum class Status { Pass, Fail, Report };

std::string_view to_string(Status s);

struct Verdict {
  std::string experiment;
  Status status = Status::Pass;
  std::optional<Evidence> counterexample;  // present iff status == Fail
  std::optional<Evidence> witness;
  json details = json::object();
};

json evidence_to_json(const Evidence& e);
Evidence evidence_from_json(const json& j);
json verdict_to_json(const Verdict& v);

// Single-sample experiments.
Verdict exp_cone_partition(const Sample& s, const Predicates& preds = {});
Verdict exp_order_containments(const Sample& s, const Predicates& preds = {});
Verdict exp_z_identity(const Sample& s, const Predicates& preds = {});
/// Throws CapExceeded when the sample has more than 32 events.
Verdict exp_horismos_balls(const Sample& s, bool reflexive = false);
Verdict exp_e_coarser_z(const Sample& s);
Verdict exp_reflexive_degeneracy(const Sample& s);
/// Throws BadConfig unless 1 <= n <= 10.
Verdict exp_finite_chain(std::size_t n);
Verdict exp_intersection_topology(std::uint64_t seed, std::size_t trials);
/// Z-trace member of the sample that is not open in the horismos interval topology.
Verdict exp_retraction(const Sample& s);

inline constexpr std::size_t kHorismosBallEventCap = 32;
inline constexpr std::size_t kFullCompareCap = 16;

struct ExperimentConfig {
  enum class Source { Default, Grid, Sprinkle, File };

  std::string experiment;  // an experiment name or "all"
  Source source = Source::Default;
  std::uint64_t seed = 7;
  std::size_t count = 64;
  Scalar spacing = 1;
  Region region = Region::cube(0, 1);
  std::filesystem::path file;
  std::size_t cap = kTopologyEventCap;
  std::size_t trials = 1000;
  bool reflexive = false;
};

/// Experiment names in report order.
const std::vector<std::string>& experiment_names();

/// Runs one experiment over its default suite, or over the configured sample. Throws
/// BadConfig for an unknown name or invalid caps, CapExceeded and AxisNotInSample as raised.
Verdict run(const ExperimentConfig& config);

/// Every experiment, in report order.
std::vector<Verdict> run_all(const ExperimentConfig& config);

/// {"schema": 1, "seed": s, "verdicts": [...], "summary": {"pass": a, "fail": b, "report": c}}.
json report_to_json(const ExperimentConfig& config, const std::vector<Verdict>& verdicts);

/// 0 when no verdict failed, 1 otherwise.
int exit_status(const std::vector<Verdict>& verdicts);

}  // namespace lightcone
