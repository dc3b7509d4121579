#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lightcone/continuum_traces.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/harness.hpp"
#include "lightcone/serialization.hpp"

using namespace lightcone;

namespace {

constexpr int kConfigError = 2;

struct SampleOptions {
  std::string source = "fixture";
  std::string in;
  std::uint64_t seed = 7;
  std::size_t count = 64;
  std::string spacing = "1";
  std::string region = "0,0,0,0,1,1,1,1";
  std::size_t cap = kRelationEventCap;
};

struct OutputOptions {
  std::string out;
  std::string format = "json";
};

Region parse_region(const std::string& text) {
  std::vector<Scalar> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_scalar(part));
  if (v.size() != 8) throw BadConfig("--region needs eight values lo0,lo1,lo2,lo3,hi0,hi1,hi2,hi3");
  return Region::make(Event4{{v[0], v[1], v[2], v[3]}}, Event4{{v[4], v[5], v[6], v[7]}});
}

void add_sample_options(CLI::App* cmd, SampleOptions& o, bool with_source) {
  if (with_source) {
    cmd->add_option("--source", o.source, "fixture, grid, sprinkle or file")
        ->check(CLI::IsMember({"fixture", "grid", "sprinkle", "file"}));
    cmd->add_option("--in", o.in, "event-set JSON file (implies --source file)");
  }
  cmd->add_option("--seed", o.seed, "sprinkling seed");
  cmd->add_option("--count", o.count, "number of sprinkled events");
  cmd->add_option("--spacing", o.spacing, "grid spacing, rational");
  cmd->add_option("--region", o.region, "box lo0,lo1,lo2,lo3,hi0,hi1,hi2,hi3");
  cmd->add_option("--cap", o.cap, "maximum number of events")->check(CLI::PositiveNumber);
}

void add_output_options(CLI::App* cmd, OutputOptions& o, std::vector<std::string> formats) {
  cmd->add_option("--out", o.out, "output file (stdout when absent)");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember(std::move(formats)));
}

Sample load_sample(const SampleOptions& o) {
  const std::string source = o.in.empty() ? o.source : "file";
  Sample s;
  if (source == "fixture") {
    s = default_fixture();
  } else if (source == "grid") {
    s = grid_sample(parse_region(o.region), parse_scalar(o.spacing), o.cap);
  } else if (source == "sprinkle") {
    s = poisson_sprinkle(parse_region(o.region), o.count, o.seed);
  } else {
    if (o.in.empty()) throw BadConfig("--source file needs --in");
    s = read_sample(o.in);
  }
  if (s.size() > o.cap) {
    throw CapExceeded("sample has " + std::to_string(s.size()) + " events, cap is " + std::to_string(o.cap));
  }
  return s;
}

void emit(const OutputOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
  }
}

std::string sample_output(const Sample& s, const OutputOptions& o) {
  return o.format == "text" ? sample_to_text(s) : dump(sample_to_json(s));
}

RelationKind parse_relation(const std::string& name, bool reflexive) {
  if (name == "chron") return RelationKind::Chronological;
  if (name == "causal") return RelationKind::Causal;
  return reflexive ? RelationKind::ReflexiveHorismos : RelationKind::Horismos;
}

TopologyBase trace_by_name(const SampleGeometry& g, const std::string& name, bool reflexive) {
  if (name == "euclidean") return g.euclidean_trace();
  if (name == "zeeman") return g.zeeman_trace();
  if (name == "horismos_ball") return g.horismos_ball_trace();
  return interval_subbase(horismos_matrix(g.sample(), reflexive));
}

TraceReport export_report(const Sample& s, bool reflexive) {
  if (s.size() > kTopologyEventCap) {
    throw CapExceeded("export handles at most " + std::to_string(kTopologyEventCap) + " events");
  }
  const SampleGeometry g(s);
  const TopologyBase e = g.euclidean_trace();
  const TopologyBase z = g.zeeman_trace();
  const TopologyBase a = g.horismos_ball_trace();
  const TopologyBase interval = minimal_base(interval_subbase(horismos_matrix(s, reflexive)));
  const TopologyBase z_min = minimal_base(z);
  const TopologyBase a_min = minimal_base(a);
  TraceReport r;
  r.sample_hash = s.hash();
  r.families = {{"euclidean", e}, {"zeeman", z}, {"horismos_ball", a}, {"interval_minimal", interval}};
  r.verdicts = {{"euclidean_coarser_eq_zeeman", coarser_eq(e, z_min)},
                {"zeeman_equals_intersection", equal(z_min, minimal_base(intersection_base(e, a)))},
                {"interval_equals_horismos_ball", equal(interval, a_min)},
                {"horismos_ball_coarser_eq_interval", coarser_eq(a_min, interval)},
                {"interval_equals_zeeman", equal(interval, z_min)}};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lightcone: causal relations and candidate spacetime topologies on finite event samples"};
  app.require_subcommand(1);

  SampleOptions sprinkle_in;
  OutputOptions sprinkle_out;
  auto* sprinkle = app.add_subcommand("sprinkle", "seeded uniform events in a box");
  add_sample_options(sprinkle, sprinkle_in, false);
  add_output_options(sprinkle, sprinkle_out, {"json", "text"});

  SampleOptions grid_in;
  OutputOptions grid_out;
  auto* grid = app.add_subcommand("grid", "lattice events in a box");
  add_sample_options(grid, grid_in, false);
  add_output_options(grid, grid_out, {"json", "text"});

  SampleOptions relate_in;
  OutputOptions relate_out;
  std::string relation = "horismos";
  bool relate_reflexive = false;
  auto* relate = app.add_subcommand("relate", "causal relation matrix of a sample");
  add_sample_options(relate, relate_in, true);
  add_output_options(relate, relate_out, {"json", "text", "dot"});
  relate->add_option("--relation", relation, "chron, causal or horismos")
      ->check(CLI::IsMember({"chron", "causal", "horismos"}));
  relate->add_flag("--reflexive", relate_reflexive, "relate each event to itself under horismos");

  SampleOptions topo_in;
  OutputOptions topo_out;
  std::string trace = "zeeman";
  bool topo_reflexive = false;
  auto* topo = app.add_subcommand("topo", "trace base of a topology on a sample");
  add_sample_options(topo, topo_in, true);
  add_output_options(topo, topo_out, {"json", "text"});
  topo->add_option("--trace", trace, "euclidean, zeeman, horismos_ball or interval")
      ->check(CLI::IsMember({"euclidean", "zeeman", "horismos_ball", "interval"}));
  topo->add_flag("--reflexive", topo_reflexive, "use reflexive horismos for the interval subbase");

  SampleOptions verify_in;
  OutputOptions verify_out;
  std::string experiment;
  std::size_t trials = 1000;
  bool verify_reflexive = false;
  verify_in.source = "default";
  verify_in.cap = kTopologyEventCap;
  auto* verify = app.add_subcommand("verify", "run an experiment, or all of them");
  verify->add_option("experiment", experiment, "experiment name or 'all'")->required();
  verify->add_option("--source", verify_in.source, "default, grid, sprinkle or file")
      ->check(CLI::IsMember({"default", "grid", "sprinkle", "file"}));
  verify->add_option("--in", verify_in.in, "event-set JSON file (implies --source file)");
  add_sample_options(verify, verify_in, false);
  verify->add_option("--trials", trials, "random base pairs for intersection_topology")->check(CLI::PositiveNumber);
  verify->add_flag("--reflexive", verify_reflexive, "use reflexive horismos in horismos_balls and axis_probe");
  add_output_options(verify, verify_out, {"json"});

  SampleOptions export_in;
  OutputOptions export_out;
  bool export_reflexive = false;
  auto* exporter = app.add_subcommand("export", "trace report of a sample as JSON");
  add_sample_options(exporter, export_in, true);
  exporter->add_flag("--reflexive", export_reflexive, "use reflexive horismos for the interval subbase");
  add_output_options(exporter, export_out, {"json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*sprinkle) {
      sprinkle_in.source = "sprinkle";
      emit(sprinkle_out, sample_output(load_sample(sprinkle_in), sprinkle_out));
    } else if (*grid) {
      grid_in.source = "grid";
      emit(grid_out, sample_output(load_sample(grid_in), grid_out));
    } else if (*relate) {
      const Sample s = load_sample(relate_in);
      const RelationKind kind = parse_relation(relation, relate_reflexive);
      const RelationMatrix m = relation_matrix(s, kind);
      if (relate_out.format == "dot") {
        emit(relate_out, relation_to_dot(m, s, kind));
      } else if (relate_out.format == "text") {
        emit(relate_out, relation_to_text(m));
      } else {
        emit(relate_out, dump(relation_to_json(m, kind)));
      }
    } else if (*topo) {
      if (topo_in.cap > kTopologyEventCap) topo_in.cap = kTopologyEventCap;
      const Sample s = load_sample(topo_in);
      const SampleGeometry g(s);
      const TopologyBase t = trace_by_name(g, trace, topo_reflexive);
      if (topo_out.format == "text") {
        emit(topo_out, to_string(t) + "\n");
      } else {
        json j = family_to_json(t);
        j["schema"] = kSchemaVersion;
        j["trace"] = trace;
        j["sample_hash"] = s.hash();
        emit(topo_out, dump(j));
      }
    } else if (*verify) {
      ExperimentConfig c;
      c.experiment = experiment;
      c.seed = verify_in.seed;
      c.count = verify_in.count;
      c.cap = verify_in.cap;
      c.trials = trials;
      c.reflexive = verify_reflexive;
      const std::string source = verify_in.in.empty() ? verify_in.source : "file";
      if (source == "grid") c.source = ExperimentConfig::Source::Grid;
      if (source == "sprinkle") c.source = ExperimentConfig::Source::Sprinkle;
      if (source == "file") {
        if (verify_in.in.empty()) throw BadConfig("--source file needs --in");
        c.source = ExperimentConfig::Source::File;
        c.file = verify_in.in;
      }
      if (c.source != ExperimentConfig::Source::Default) {
        c.region = parse_region(verify_in.region);
        c.spacing = parse_scalar(verify_in.spacing);
      }
      if (experiment == "all") {
        const std::vector<Verdict> verdicts = run_all(c);
        emit(verify_out, dump(report_to_json(c, verdicts)));
        return exit_status(verdicts);
      }
      const Verdict v = run(c);
      emit(verify_out, dump(verdict_to_json(v)));
      return exit_status({v});
    } else if (*exporter) {
      emit(export_out, dump(trace_report_to_json(export_report(load_sample(export_in), export_reflexive))));
    }
  } catch (const Error& e) {
    std::cerr << "lightcone: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
