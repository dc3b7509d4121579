// One line per acceptance criterion; exit status 1 when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lightcone/errors.hpp"
#include "lightcone/harness.hpp"

using namespace lightcone;

namespace {

constexpr std::size_t kZSprinkles = 500;
constexpr std::size_t kZSprinkleSize = 64;
constexpr double kZSecondsLimit = 60.0;
constexpr std::size_t kFullCompareMax = 16;
constexpr std::size_t kBaseCompareMax = 32;
constexpr std::size_t kBaseCompareSprinkles = 20;
constexpr std::uint64_t kIntersectionSeed = 7;
constexpr std::size_t kIntersectionTrials = 1000;
constexpr std::size_t kCoarserSprinkles = 100;
constexpr std::size_t kCoarserSprinkleSize = 64;
constexpr std::uint64_t kReportSeed = 7;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Sample unit_sprinkle(std::size_t n, std::uint64_t seed) { return poisson_sprinkle(Region::cube(0, 1), n, seed); }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome z_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t failed = 0;
  for (std::size_t seed = 1; seed <= kZSprinkles; ++seed) {
    failed += exp_z_identity(unit_sprinkle(kZSprinkleSize, seed)).status != Status::Pass;
  }
  failed += exp_z_identity(integer_grid(2, 2, 2, 2)).status != Status::Pass;
  failed += exp_z_identity(integer_grid(1, 1, 1, 1)).status != Status::Pass;
  const double secs = seconds_since(t0);
  return {failed == 0 && secs < kZSecondsLimit,
          fmt("%zu sprinkles (n=%zu) + grids 3^4, 2^4: %zu failed; %.1f s (limit %.0f s)", kZSprinkles,
              kZSprinkleSize, failed, secs, kZSecondsLimit)};
}

// Every integer box [0,a0]x..x[0,a3] with unit spacing and at most max_n events.
std::vector<Sample> integer_boxes(std::size_t max_n) {
  std::vector<Sample> out;
  for (std::int64_t a0 = 0; a0 < std::int64_t(max_n); ++a0) {
    for (std::int64_t a1 = 0; a1 < std::int64_t(max_n); ++a1) {
      for (std::int64_t a2 = 0; a2 < std::int64_t(max_n); ++a2) {
        for (std::int64_t a3 = 0; a3 < std::int64_t(max_n); ++a3) {
          const std::size_t n = std::size_t((a0 + 1) * (a1 + 1) * (a2 + 1) * (a3 + 1));
          if (n > max_n) continue;
          out.push_back(integer_grid(a0, a1, a2, a3));
        }
      }
    }
  }
  return out;
}

Outcome horismos_balls() {
  std::size_t full_cases = 0, full_failed = 0, base_cases = 0, base_failed = 0;
  std::size_t weak_holds = 0, weak_cases = 0;
  std::string first_failure;
  const auto record = [&](const std::string& label, const Sample& s, bool full) {
    const Verdict v = exp_horismos_balls(s);
    ++(full ? full_cases : base_cases);
    ++weak_cases;
    weak_holds += v.details["horismos_balls_open_in_interval_topology"].get<bool>();
    if (v.status == Status::Pass) return;
    ++(full ? full_failed : base_failed);
    if (first_failure.empty()) {
      first_failure = label + " (" + std::to_string(s.size()) + " events, recheck " +
                      (recheck(*v.counterexample, s) ? "confirms" : "does not confirm") + ")";
    }
  };
  for (const Sample& s : integer_boxes(kBaseCompareMax)) {
    if (s.size() < 2 || horismos_matrix(s, false).pair_count() == 0) continue;
    const std::string label = "box ending at " + [&] {
      std::string t;
      for (std::size_t i = 0; i < 4; ++i) t += (i ? "," : "") + to_string(s[s.size() - 1][i]);
      return t;
    }();
    record(label, s, s.size() <= kFullCompareMax);
  }
  record("fixture", default_fixture(), true);
  for (std::size_t seed = 1; seed <= kBaseCompareSprinkles; ++seed) {
    record("sprinkle " + std::to_string(seed), unit_sprinkle(kBaseCompareMax, seed), false);
  }
  return {full_failed == 0 && base_failed == 0,
          fmt("full comparison: %zu/%zu null-bearing samples with n<=%zu agree; base comparison: %zu/%zu with n<=%zu; "
              "A(x) open in the interval topology on %zu/%zu; first failure: %s",
              full_cases - full_failed, full_cases, kFullCompareMax, base_cases - base_failed, base_cases,
              kBaseCompareMax, weak_holds, weak_cases, first_failure.empty() ? "none" : first_failure.c_str())};
}

Outcome intersection_topology() {
  const Verdict v = exp_intersection_topology(kIntersectionSeed, kIntersectionTrials);
  return {v.status == Status::Pass,
          fmt("%zu random base pairs (seed %llu, n<=6) + 2 fixed cases against the union-closure oracle: %s",
              kIntersectionTrials, static_cast<unsigned long long>(kIntersectionSeed),
              v.status == Status::Pass ? "all agree" : v.counterexample->note.c_str())};
}

Outcome order_algebra() {
  const Sample grid = integer_grid(2, 2, 2, 2);
  const Verdict cones = exp_cone_partition(grid);
  const Verdict orders = exp_order_containments(grid);
  const std::size_t n = grid.size();
  return {cones.status == Status::Pass && orders.status == Status::Pass && n == 81,
          fmt("grid 3^4: %zu events, %zu ordered pairs of distinct events; cone partition %s, order containments %s",
              n, n * (n - 1), std::string(to_string(cones.status)).c_str(),
              std::string(to_string(orders.status)).c_str())};
}

Outcome e_coarser_z() {
  std::size_t cases = 0, failed = 0;
  const auto check = [&](const Sample& s) {
    ++cases;
    failed += exp_e_coarser_z(s).status != Status::Pass;
  };
  check(default_fixture());
  check(Sample({origin()}));
  check(Sample({origin(), make_event(1, 1, 0, 0)}));
  check(integer_grid(1, 1, 1, 1));
  check(integer_grid(2, 2, 2, 2));
  for (std::size_t seed = 1; seed <= kCoarserSprinkles; ++seed) check(unit_sprinkle(kCoarserSprinkleSize, seed));
  return {failed == 0, fmt("5 fixtures + %zu sprinkles (n=%zu): %zu/%zu pass", kCoarserSprinkles,
                           kCoarserSprinkleSize, cases - failed, cases)};
}

Outcome finite_chain() {
  std::size_t failed = 0;
  for (std::size_t n = 1; n <= 10; ++n) failed += exp_finite_chain(n).status != Status::Pass;
  return {failed == 0, fmt("chains n=1..10 discrete: %zu/10", 10 - failed)};
}

Outcome retraction() {
  ExperimentConfig c;
  c.experiment = "retraction";
  const json j = json::parse(dump(verdict_to_json(run(c))));
  if (!j.contains("witness")) return {false, "no witness in the verdict JSON"};
  const Evidence w = evidence_from_json(j.at("witness"));
  const bool ok = recheck(w, default_fixture());
  return {j.at("status") == "pass" && ok,
          fmt("fixture: Z set about event %zu with eps^2=%s contains event %zu; event %zu lies in every interval "
              "open set about it but not in the Z set; recheck %s",
              *w.center, to_string(*w.eps2).c_str(), *w.point, *w.witness, ok ? "confirms" : "fails")};
}

Outcome determinism() {
  ExperimentConfig c;
  c.seed = kReportSeed;
  const std::string first = dump(report_to_json(c, run_all(c)));
  const std::string second = dump(report_to_json(c, run_all(c)));
  return {first == second, fmt("verify all --seed %llu twice: %zu bytes each, %s",
                               static_cast<unsigned long long>(kReportSeed), first.size(),
                               first == second ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 z_identity", z_identity},
      {"2 horismos_balls", horismos_balls},
      {"3 intersection_topology", intersection_topology},
      {"4 order_algebra", order_algebra},
      {"5 e_coarser_z", e_coarser_z},
      {"6 finite_chain", finite_chain},
      {"7 retraction_witness", retraction},
      {"8 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
