#include "lightcone/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "lightcone/continuum_traces.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/finite_topology.hpp"

namespace lightcone {

namespace {

using Mask = std::uint64_t;

Evidence evidence(std::string kind, const Sample& s) {
  Evidence e;
  e.kind = std::move(kind);
  e.sample_hash = s.hash();
  return e;
}

Verdict verdict(std::string name, json details) {
  Verdict v;
  v.experiment = std::move(name);
  v.details = std::move(details);
  return v;
}

Verdict& fail_with(Verdict& v, Evidence e) {
  v.status = Status::Fail;
  v.counterexample = std::move(e);
  return v;
}

json ids_json(const PointSet& s) { return s.ids(); }

TopologyBase as_subbase(TopologyBase t) {
  t.role = TopologyBase::Role::Subbase;
  return t;
}

// ---- order invariants -------------------------------------------------------------------

std::optional<std::string> broken_order_invariant(const Predicates& preds, const Sample& s, std::size_t x,
                                                  std::size_t y) {
  const Event4& a = s[x];
  const Event4& b = s[y];
  const bool ch = preds.chron(a, b);
  const bool ca = preds.causal(a, b);
  const bool h = preds.horismos(a, b, false);
  if (ch && !ca) return "chron_implies_causal";
  if (h && !ca) return "horismos_implies_causal";
  if (ch && h) return "chron_horismos_disjoint";
  if (ca != (x == y || ch || h)) return "causal_decomposition";
  if (x == y && ch) return "chron_irreflexive";
  if (x == y && h) return "horismos_irreflexive";
  if (x == y && !ca) return "causal_reflexive";
  if (x != y && ca && preds.causal(b, a)) return "causal_antisymmetric";
  return std::nullopt;
}

int cone_count(const Predicates& preds, const Sample& s, std::size_t x, std::size_t y) {
  return int(preds.in_time_cone(s[y], s[x])) + int(preds.in_light_cone(s[y], s[x])) +
         int(preds.in_space_cone(s[y], s[x]));
}

// ---- neighbourhood helpers --------------------------------------------------------------

// q lies in every subbasic set X - N+(z), X - N-(z) that contains p.
bool in_every_interval_subbasic(const Predicates& preds, const Sample& s, bool reflexive, std::size_t p,
                                std::size_t q) {
  for (std::size_t z = 0; z < s.size(); ++z) {
    if (!preds.horismos(s[z], s[p], reflexive) && preds.horismos(s[z], s[q], reflexive)) return false;
    if (!preds.horismos(s[p], s[z], reflexive) && preds.horismos(s[q], s[z], reflexive)) return false;
  }
  return true;
}

// q lies in every A(z) that contains p.
bool in_every_horismos_ball(const Predicates& preds, const Sample& s, std::size_t p, std::size_t q) {
  for (std::size_t z = 0; z < s.size(); ++z) {
    if (preds.in_horismos_ball(s[p], s[z]) && !preds.in_horismos_ball(s[q], s[z])) return false;
  }
  return true;
}

// ---- witness radius for E coarser than Z ------------------------------------------------

// delta <= eps - r, with e = eps^2, c = r^2, d = delta^2.
bool grounded_exact(const Scalar& e, const Scalar& c, const Scalar& d) {
  const Scalar f = e - c - d;
  if (f < 0) return false;
  return f * f >= 4 * c * d;
}

// Decides in double precision when the margin is far above the rounding error, exactly otherwise.
bool grounded(const Scalar& e, const Scalar& c, const Scalar& d, double ed, double cd, double dd) {
  const double scale = ed + cd + dd;
  const double f = ed - cd - dd;
  const double tol_f = 1e-12 * scale;
  if (f < -tol_f) return false;
  if (f > tol_f) {
    const double g = f * f - 4 * cd * dd;
    const double tol_g = 1e-12 * scale * scale;
    if (g > tol_g) return true;
    if (g < -tol_g) return false;
  }
  return grounded_exact(e, c, d);
}

// ---- brute-force mask closures for the intersection topology check --------------------------------------

std::set<Mask> union_closure(const std::vector<Mask>& members) {
  std::set<Mask> out{0};
  for (Mask m : members) {
    std::vector<Mask> add;
    for (Mask a : out) add.push_back(a | m);
    out.insert(add.begin(), add.end());
  }
  return out;
}

std::vector<Mask> masks_of(const TopologyBase& t) {
  std::vector<Mask> out;
  for (const auto& s : t.family) out.push_back(s.mask());
  return out;
}

TopologyBase base_of_masks(std::size_t n, const std::vector<Mask>& masks, TopologyBase::Role role) {
  std::vector<PointSet> sets;
  for (Mask m : masks) sets.push_back(PointSet::from_mask(n, m));
  return TopologyBase::make(n, std::move(sets), role);
}

struct IntersectionOutcome {
  bool agrees = true;
  bool engine_is_topology = true;
  std::size_t open_sets = 0;
};

IntersectionOutcome intersection_topology_case(std::size_t n, const std::vector<Mask>& b1, const std::vector<Mask>& b2) {
  const TopologyBase t1 = base_of_masks(n, b1, TopologyBase::Role::Base);
  const TopologyBase t2 = base_of_masks(n, b2, TopologyBase::Role::Base);
  std::set<Mask> engine;
  for (const auto& g : generate_full(intersection_base(t1, t2), kFullCompareCap)) engine.insert(g.mask());

  const std::set<Mask> u1 = union_closure(b1);
  const std::set<Mask> u2 = union_closure(b2);
  std::vector<Mask> meets;
  for (Mask a : u1) {
    for (Mask b : u2) meets.push_back(a & b);
  }
  const std::set<Mask> oracle = union_closure(meets);

  IntersectionOutcome out;
  out.agrees = engine == oracle;
  out.open_sets = engine.size();
  for (Mask a : engine) {
    for (Mask b : engine) {
      if (!engine.count(a & b)) out.engine_is_topology = false;
    }
  }
  return out;
}

std::vector<Mask> random_masks(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> k_dist(1, 2 * n);
  std::bernoulli_distribution coin(0.5);
  std::vector<Mask> out(k_dist(rng), 0);
  for (auto& m : out) {
    for (std::size_t p = 0; p < n; ++p) {
      if (coin(rng)) m |= Mask{1} << p;
    }
  }
  return out;
}

// Closure of a random family under intersection, X included: a genuine base.
std::vector<Mask> random_base(std::size_t n, std::mt19937_64& rng) {
  return masks_of(base_from_subbase(base_of_masks(n, random_masks(n, rng), TopologyBase::Role::Subbase)));
}

// ---- finite chain -----------------------------------------------------------------------

RelationMatrix strict_chain(std::size_t n) {
  return RelationMatrix::from_predicate(n, [](std::size_t i, std::size_t j) { return i < j; });
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Report: return "report";
  }
  return "?";
}

// ---- experiments ------------------------------------------------------------------------

Verdict exp_cone_partition(const Sample& s, const Predicates& preds) {
  const std::size_t n = s.size();
  Verdict v = verdict("cone_partition", {{"events", n}, {"pairs_checked", n * n}});
  for (std::size_t x = 0; x < n; ++x) {
    PointSet t(n), l(n), sp(n);
    for (std::size_t y = 0; y < n; ++y) {
      if (preds.in_time_cone(s[y], s[x])) t.insert(y);
      if (preds.in_light_cone(s[y], s[x])) l.insert(y);
      if (preds.in_space_cone(s[y], s[x])) sp.insert(y);
    }
    const PointSet apex = PointSet::of(n, {x});
    if ((t & l) == apex && (t & sp) == apex && (l & sp) == apex && (t | l | sp).is_full()) continue;
    for (std::size_t y = 0; y < n; ++y) {
      const int count = int(t.contains(y)) + int(l.contains(y)) + int(sp.contains(y));
      if (count != (y == x ? 3 : 1)) {
        Evidence e = evidence("cone_partition", s);
        e.center = x;
        e.point = y;
        e.note = "event lies in " + std::to_string(count) + " cones";
        return fail_with(v, std::move(e));
      }
    }
  }
  return v;
}

Verdict exp_order_containments(const Sample& s, const Predicates& preds) {
  const std::size_t n = s.size();
  Verdict v = verdict("order_containments", {{"events", n}, {"pairs_checked", n * n}});
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (auto broken = broken_order_invariant(preds, s, x, y)) {
        Evidence e = evidence("order_containment", s);
        e.center = x;
        e.point = y;
        e.note = *broken;
        return fail_with(v, std::move(e));
      }
    }
  }
  const RelationMatrix ch =
      RelationMatrix::from_predicate(n, [&](std::size_t i, std::size_t j) { return preds.chron(s[i], s[j]); });
  for (std::size_t x = 0; x < n; ++x) {
    for (auto w : ch.row(x).ids()) {
      const PointSet beyond = ch.row(w) - ch.row(x);
      if (beyond.empty()) continue;
      Evidence e = evidence("chron_transitivity", s);
      e.center = x;
      e.witness = w;
      e.point = beyond.first();
      return fail_with(v, std::move(e));
    }
  }
  v.details["chron_pairs"] = ch.pair_count();
  return v;
}

Verdict exp_z_identity(const Sample& s, const Predicates& preds) {
  const std::size_t n = s.size();
  const SampleGeometry g(s);
  const RadiusPolicy& policy = g.policy();
  Verdict v = verdict("z_identity", {{"events", n}, {"radii", policy.size()}});

  // Membership in B_eps(x) and Z_eps(x) can only change where eps^2 crosses d2(x, y), so the
  // last radius below and the first radius above that crossing stand for the whole policy.
  std::vector<PointSet> horismos_ball(n, PointSet(n));
  std::size_t evaluations = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const bool a = preds.in_horismos_ball(s[y], s[x]);
      if (a) horismos_ball[x].insert(y);
      const std::size_t first = g.first_radius(x, y);
      for (std::size_t k : {first - 1, first}) {
        if (first == 0 && k == first - 1) continue;
        if (k >= policy.size()) continue;
        ++evaluations;
        const bool z = preds.in_zeeman_nbhd(s[y], s[x], policy[k]);
        const bool b = preds.in_ball(s[y], s[x], policy[k]);
        if (z != (b && a)) {
          Evidence e = evidence("z_identity", s);
          e.center = x;
          e.eps2 = policy[k];
          e.point = y;
          return fail_with(v, std::move(e));
        }
      }
    }
  }
  v.details["pair_evaluations"] = evaluations;

  // Every radius of the policy at trace level: Z from the cone table, A from the predicates.
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> order(n);
    for (std::size_t y = 0; y < n; ++y) order[y] = y;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return g.first_radius(x, a) < g.first_radius(x, b); });
    PointSet ball(n), zee(n);
    std::size_t next = 0;
    for (std::size_t k = 0; k < policy.size(); ++k) {
      while (next < n && g.first_radius(x, order[next]) <= k) {
        const std::size_t y = order[next++];
        ball.insert(y);
        if (g.zeeman_member(y, x, k)) zee.insert(y);
      }
      const PointSet expected = ball & horismos_ball[x];
      if (zee == expected) continue;
      const PointSet diff = (zee - expected) | (expected - zee);
      Evidence e = evidence("z_trace_member", s);
      e.center = x;
      e.eps2 = policy[k];
      e.point = diff.first();
      return fail_with(v, std::move(e));
    }
  }

  std::vector<PointSet> a_family(horismos_ball);
  const TopologyBase a_trace = TopologyBase::make(n, std::move(a_family), TopologyBase::Role::Base);
  const TopologyBase z_trace = g.zeeman_trace();
  const TopologyBase inter = intersection_base(g.euclidean_trace(), a_trace);
  v.details["zeeman_trace_size"] = z_trace.family.size();
  v.details["intersection_base_size"] = inter.family.size();
  const auto mz = smallest_neighbourhoods(z_trace);
  const auto mi = smallest_neighbourhoods(inter);
  for (std::size_t p = 0; p < n; ++p) {
    if (mz[p] == mi[p]) continue;
    Evidence e = evidence("z_trace", s);
    e.point = p;
    e.note = "smallest neighbourhoods differ";
    return fail_with(v, std::move(e));
  }
  if (!equal(minimal_base(z_trace), minimal_base(inter))) throw std::logic_error("z_identity: equal() disagrees");
  return v;
}

Verdict exp_horismos_balls(const Sample& s, bool reflexive) {
  const std::size_t n = s.size();
  if (n > kHorismosBallEventCap) {
    throw CapExceeded("horismos_balls handles at most " + std::to_string(kHorismosBallEventCap) + " events, got " +
                      std::to_string(n));
  }
  const RelationMatrix h = horismos_matrix(s, reflexive);
  const TopologyBase subbase = interval_subbase(h);
  const TopologyBase balls = horismos_ball_trace(s);
  const TopologyBase interval_min = minimal_base(subbase);
  const TopologyBase balls_min = minimal_base(balls);
  const bool balls_open = coarser_eq(balls_min, interval_min);
  const bool interval_open = coarser_eq(interval_min, balls_min);

  Verdict v = verdict("horismos_balls", {{"events", n},
                                 {"reflexive", reflexive},
                                 {"null_pairs", h.pair_count()},
                                 {"subbase_size", subbase.family.size()},
                                 {"horismos_ball_family_size", balls.family.size()},
                                 {"horismos_balls_open_in_interval_topology", balls_open},
                                 {"interval_subbase_open_in_horismos_ball_topology", interval_open},
                                 {"equal", balls_open && interval_open}});
  bool full_identical = true;
  if (n <= kFullCompareCap) {
    const auto full_interval = generate_full(base_from_subbase(subbase), kFullCompareCap);
    const auto full_balls = generate_full(base_from_subbase(as_subbase(balls)), kFullCompareCap);
    full_identical = full_interval == full_balls;
    v.details["full_comparison"] = {{"interval_open_sets", full_interval.size()},
                                    {"horismos_ball_open_sets", full_balls.size()},
                                    {"identical", full_identical}};
    if (full_identical != (balls_open && interval_open)) throw std::logic_error("horismos_balls: full and base comparison disagree");
  }
  if (balls_open && interval_open && full_identical) return v;

  if (!interval_open) {
    const auto ma = smallest_neighbourhoods(balls);
    const PointSet all = PointSet::full(n);
    for (std::size_t x = 0; x < n; ++x) {
      for (const bool future : {true, false}) {
        const PointSet subbasic = all - (future ? future_set(h, x) : past_set(h, x));
        for (auto p : subbasic.ids()) {
          const PointSet outside = ma[p] - subbasic;
          if (outside.empty()) continue;
          Evidence e = evidence("interval_subbasic_not_open", s);
          e.center = x;
          e.point = p;
          e.witness = outside.first();
          e.note = future ? "future" : "past";
          e.data = {{"reflexive", reflexive}};
          return fail_with(v, std::move(e));
        }
      }
    }
  }
  const auto mi = smallest_neighbourhoods(subbase);
  for (std::size_t x = 0; x < n; ++x) {
    PointSet ax(n);
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x || !is_null(classify(s[x], s[y]))) ax.insert(y);
    }
    for (auto p : ax.ids()) {
      const PointSet outside = mi[p] - ax;
      if (outside.empty()) continue;
      Evidence e = evidence("horismos_ball_not_open", s);
      e.center = x;
      e.point = p;
      e.witness = outside.first();
      e.data = {{"reflexive", reflexive}};
      return fail_with(v, std::move(e));
    }
  }
  throw std::logic_error("horismos_balls: topologies differ but no witness was found");
}

Verdict exp_e_coarser_z(const Sample& s) {
  const std::size_t n = s.size();
  const SampleGeometry g(s);
  const RadiusPolicy& policy = g.policy();
  std::vector<double> pd(policy.size());
  for (std::size_t k = 0; k < policy.size(); ++k) pd[k] = static_cast<double>(policy[k]);

  Verdict v = verdict("e_coarser_z", {{"events", n}, {"radii", policy.size()}});
  std::size_t checked = 0, grounded_count = 0, finite_count = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (auto kb : g.radius_breaks(x)) {
      const PointSet ball = g.ball(x, kb);
      const Scalar& e = policy[kb];
      const double ed = pd[kb];
      for (auto y : ball.ids()) {
        ++checked;
        const Scalar& c = g.squared_distance(x, y);
        const double cd = static_cast<double>(c);
        // Largest policy radius with delta <= eps - |y - x|; the smallest radius otherwise.
        const double target = std::pow(std::sqrt(ed) - std::sqrt(cd), 2);
        std::ptrdiff_t k = std::upper_bound(pd.begin(), pd.end(), target) - pd.begin() - 1;
        while (k >= 0 && !grounded(e, c, policy[k], ed, cd, pd[k])) --k;
        while (k >= 0 && std::size_t(k + 1) < policy.size() && grounded(e, c, policy[k + 1], ed, cd, pd[k + 1])) ++k;
        const bool is_grounded = k >= 0;
        const std::size_t kd = is_grounded ? std::size_t(k) : 0;
        (is_grounded ? grounded_count : finite_count)++;
        const PointSet z = g.zeeman(y, kd);
        if (z.is_subset_of(ball)) continue;
        Evidence ev = evidence("e_coarser_z_witness", s);
        ev.center = x;
        ev.eps2 = e;
        ev.point = y;
        ev.delta2 = policy[kd];
        ev.witness = (z - ball).first();
        ev.data = {{"grounded", is_grounded}};
        v.details["memberships_checked"] = checked;
        return fail_with(v, std::move(ev));
      }
    }
  }
  v.details["memberships_checked"] = checked;
  v.details["grounded_witnesses"] = grounded_count;
  v.details["finite_witnesses"] = finite_count;
  const bool coarser = coarser_eq(g.euclidean_trace(), minimal_base(g.zeeman_trace()));
  v.details["coarser_eq"] = coarser;
  if (!coarser) throw std::logic_error("e_coarser_z: witnesses hold but coarser_eq fails");
  return v;
}

Verdict exp_reflexive_degeneracy(const Sample& s) {
  const std::size_t n = s.size();
  const RelationMatrix hi = horismos_matrix(s, false);
  const RelationMatrix hr = horismos_matrix(s, true);
  const PointSet all = PointSet::full(n);
  std::size_t apex_excluded = 0, empty_subbasic = 0;
  std::vector<PointSet> raw_reflexive, raw_irreflexive;
  for (std::size_t x = 0; x < n; ++x) {
    for (const PointSet& raw : {all - future_set(hr, x), all - past_set(hr, x)}) {
      if (!raw.contains(x)) ++apex_excluded;
      if (raw.empty()) ++empty_subbasic;
      raw_reflexive.push_back(raw);
    }
    raw_irreflexive.push_back(all - future_set(hi, x));
    raw_irreflexive.push_back(all - past_set(hi, x));
  }
  canonicalize(raw_reflexive);
  canonicalize(raw_irreflexive);
  const TopologyBase si = interval_subbase(hi);
  const TopologyBase sr = interval_subbase(hr);
  const TopologyBase mi = minimal_base(si);
  const TopologyBase mr = minimal_base(sr);
  const auto ni = smallest_neighbourhoods(si);
  const auto nr = smallest_neighbourhoods(sr);

  json differing = json::array();
  std::size_t differing_count = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (ni[p] == nr[p]) continue;
    if (++differing_count <= 16) {
      differing.push_back({{"point", p}, {"irreflexive", ids_json(ni[p])}, {"reflexive", ids_json(nr[p])}});
    }
  }
  Verdict v = verdict("reflexive_degeneracy",
                      {{"events", n},
                       {"reflexive_subbasic_sets_excluding_apex", apex_excluded},
                       {"empty_reflexive_subbasic_sets", empty_subbasic},
                       {"reflexive_subbase_only_empty", empty_subbasic == 2 * n},
                       {"subbases_differ", raw_reflexive != raw_irreflexive},
                       {"equal", equal(mi, mr)},
                       {"reflexive_coarser_eq_irreflexive", coarser_eq(mr, mi)},
                       {"irreflexive_coarser_eq_reflexive", coarser_eq(mi, mr)},
                       {"points_with_different_neighbourhoods", differing_count},
                       {"differing_neighbourhoods", std::move(differing)}});
  if (n <= kFullCompareCap) {
    v.details["open_sets"] = {
        {"irreflexive", generate_full(base_from_subbase(si), kFullCompareCap).size()},
        {"reflexive", generate_full(base_from_subbase(sr), kFullCompareCap).size()}};
  }
  v.status = Status::Report;
  return v;
}

Verdict exp_finite_chain(std::size_t n) {
  if (n < 1 || n > 10) throw BadConfig("finite_chain needs 1 <= n <= 10");
  const TopologyBase subbase = interval_subbase(strict_chain(n));
  const auto nbhd = smallest_neighbourhoods(subbase);
  const std::size_t opens = generate_full(base_from_subbase(subbase), kFullCompareCap).size();
  Verdict v = verdict("finite_chain", {{"n", n}, {"subbase_size", subbase.family.size()}, {"open_sets", opens}});
  for (std::size_t p = 0; p < n; ++p) {
    const PointSet extra = nbhd[p] - PointSet::of(n, {p});
    if (extra.empty()) continue;
    Evidence e;
    e.kind = "finite_chain";
    e.point = p;
    e.witness = extra.first();
    e.data = {{"n", n}};
    return fail_with(v, std::move(e));
  }
  if (opens != (std::size_t{1} << n)) throw std::logic_error("finite_chain: discrete by neighbourhoods but not by count");
  return v;
}

Verdict exp_intersection_topology(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> n_dist(1, 6);
  Verdict v = verdict("intersection_topology", {{"seed", seed}, {"trials", trials}, {"max_ground_size", 6}});

  struct Case {
    std::string label;
    std::size_t n;
    std::vector<Mask> b1, b2;
  };
  std::vector<Case> cases;
  {
    const std::vector<Mask> b = random_base(4, rng);
    cases.push_back({"identity_factor", 4, b, {Mask{0xF}}});
    cases.push_back({"equal_factors", 4, b, b});
  }
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = n_dist(rng);
    std::vector<Mask> b1 = random_base(n, rng);
    std::vector<Mask> b2 = random_base(n, rng);
    cases.push_back({"trial " + std::to_string(t), n, std::move(b1), std::move(b2)});
  }
  std::size_t total_opens = 0;
  for (const auto& c : cases) {
    const IntersectionOutcome out = intersection_topology_case(c.n, c.b1, c.b2);
    total_opens += out.open_sets;
    if (out.agrees && out.engine_is_topology) continue;
    Evidence e;
    e.kind = "intersection_topology";
    e.note = c.label + (out.agrees ? ": unions of the meets are not closed under intersection" : ": engine and oracle differ");
    e.data = {{"n", c.n}, {"b1", c.b1}, {"b2", c.b2}};
    return fail_with(v, std::move(e));
  }
  v.details["cases"] = cases.size();
  v.details["open_sets_total"] = total_opens;
  return v;
}

Verdict exp_retraction(const Sample& s) {
  const std::size_t n = s.size();
  const SampleGeometry g(s);
  const TopologyBase subbase = interval_subbase(g.relation(RelationKind::Horismos));
  const TopologyBase interval_min = minimal_base(subbase);
  const TopologyBase z_trace = g.zeeman_trace();
  const TopologyBase z_min = minimal_base(z_trace);
  const auto mi = smallest_neighbourhoods(subbase);
  const auto ma = smallest_neighbourhoods(g.horismos_ball_trace());

  std::size_t z_not_open = 0;
  for (const auto& z : z_trace.family) z_not_open += !is_open(z, interval_min);
  std::size_t interval_not_open = 0;
  for (const auto& m : interval_min.family) interval_not_open += !is_open(m, z_min);

  Verdict v = verdict("retraction", {{"events", n},
                                     {"interval_equals_zeeman", equal(interval_min, z_min)},
                                     {"zeeman_members_not_open_in_interval", z_not_open},
                                     {"interval_members_not_open_in_zeeman", interval_not_open}});
  for (std::size_t x = 0; x < n; ++x) {
    for (auto k : g.radius_breaks(x)) {
      const PointSet z = g.zeeman(x, k);
      for (auto p : z.ids()) {
        const PointSet outside = mi[p] - z;
        if (outside.empty()) continue;
        Evidence e = evidence("zeeman_not_open_in_interval", s);
        e.center = x;
        e.eps2 = g.policy()[k];
        e.point = p;
        e.witness = outside.first();
        e.note = "witness lies in every interval open set about point but outside Z";
        v.details["zeeman_member"] = ids_json(z);
        v.details["interval_neighbourhood"] = ids_json(mi[p]);
        v.details["witness_also_blocks_horismos_ball_topology"] = ma[p].contains(*e.witness);
        v.details["witness_rechecked"] = recheck(e, s);
        v.witness = std::move(e);
        v.status = v.details["witness_rechecked"].get<bool>() ? Status::Pass : Status::Fail;
        if (v.status == Status::Fail) v.counterexample = v.witness;
        return v;
      }
    }
  }
  v.status = Status::Report;
  v.details["note"] = "no witness on this sample";
  return v;
}

// ---- recheck ----------------------------------------------------------------------------

bool recheck(const Evidence& e, const Sample& s, const Predicates& preds) {
  const auto need = [&](const auto& field, const char* name) -> decltype(auto) {
    if (!field) throw BadConfig("evidence of kind '" + e.kind + "' lacks " + name);
    return *field;
  };
  const auto id = [&](const std::optional<std::size_t>& field, const char* name) {
    const std::size_t v = need(field, name);
    if (v >= s.size()) throw BadConfig(std::string(name) + " id out of range");
    return v;
  };
  const bool sample_kind = e.kind != "intersection_topology" && e.kind != "finite_chain";
  if (sample_kind && e.sample_hash != s.hash()) throw BadConfig("evidence refers to a different sample");

  if (e.kind == "cone_partition") {
    const std::size_t x = id(e.center, "center"), y = id(e.point, "point");
    return cone_count(preds, s, x, y) != (x == y ? 3 : 1);
  }
  if (e.kind == "order_containment") {
    return broken_order_invariant(preds, s, id(e.center, "center"), id(e.point, "point")).has_value();
  }
  if (e.kind == "chron_transitivity") {
    const std::size_t x = id(e.center, "center"), w = id(e.witness, "witness"), y = id(e.point, "point");
    return preds.chron(s[x], s[w]) && preds.chron(s[w], s[y]) && !preds.chron(s[x], s[y]);
  }
  if (e.kind == "z_identity") {
    const std::size_t x = id(e.center, "center"), y = id(e.point, "point");
    const Scalar& eps2 = need(e.eps2, "eps2");
    return preds.in_zeeman_nbhd(s[y], s[x], eps2) !=
           (preds.in_ball(s[y], s[x], eps2) && preds.in_horismos_ball(s[y], s[x]));
  }
  if (e.kind == "z_trace_member") {
    // Z membership from the cone class against ball and A(x) membership.
    const std::size_t x = id(e.center, "center"), y = id(e.point, "point");
    const Scalar& eps2 = need(e.eps2, "eps2");
    const bool from_cones = preds.in_ball(s[y], s[x], eps2) && (x == y || !is_null(preds.classify(s[x], s[y])));
    return from_cones != (preds.in_ball(s[y], s[x], eps2) && preds.in_horismos_ball(s[y], s[x]));
  }
  if (e.kind == "z_trace") {
    const std::size_t p = id(e.point, "point");
    const std::size_t n = s.size();
    const SampleGeometry g(s);
    PointSet mz = PointSet::full(n), mi = PointSet::full(n);
    std::vector<PointSet> a(n, PointSet(n)), balls;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (preds.in_horismos_ball(s[y], s[x])) a[x].insert(y);
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (auto k : g.radius_breaks(x)) {
        PointSet z(n), b(n);
        for (std::size_t y = 0; y < n; ++y) {
          if (preds.in_zeeman_nbhd(s[y], s[x], g.policy()[k])) z.insert(y);
          if (preds.in_ball(s[y], s[x], g.policy()[k])) b.insert(y);
        }
        if (z.contains(p)) mz &= z;
        balls.push_back(std::move(b));
      }
    }
    for (const auto& b : balls) {
      for (const auto& ax : a) {
        const PointSet m = b & ax;
        if (m.contains(p)) mi &= m;
      }
    }
    return mz != mi;
  }
  if (e.kind == "interval_subbasic_not_open") {
    const std::size_t x = id(e.center, "center"), p = id(e.point, "point"), w = id(e.witness, "witness");
    const bool reflexive = e.data.value("reflexive", false);
    const bool future = e.note == "future";
    const auto in_subbasic = [&](std::size_t q) {
      return future ? !preds.horismos(s[x], s[q], reflexive) : !preds.horismos(s[q], s[x], reflexive);
    };
    return in_subbasic(p) && !in_subbasic(w) && in_every_horismos_ball(preds, s, p, w);
  }
  if (e.kind == "horismos_ball_not_open") {
    const std::size_t x = id(e.center, "center"), p = id(e.point, "point"), w = id(e.witness, "witness");
    const bool reflexive = e.data.value("reflexive", false);
    return preds.in_horismos_ball(s[p], s[x]) && !preds.in_horismos_ball(s[w], s[x]) &&
           in_every_interval_subbasic(preds, s, reflexive, p, w);
  }
  if (e.kind == "e_coarser_z_witness") {
    const std::size_t x = id(e.center, "center"), y = id(e.point, "point"), w = id(e.witness, "witness");
    const Scalar& eps2 = need(e.eps2, "eps2");
    const Scalar& delta2 = need(e.delta2, "delta2");
    const bool was_grounded = e.data.value("grounded", false);
    if (was_grounded && !grounded_exact(eps2, squared_distance(s[x], s[y]), delta2)) return false;
    return preds.in_ball(s[y], s[x], eps2) && preds.in_zeeman_nbhd(s[w], s[y], delta2) &&
           !preds.in_ball(s[w], s[x], eps2);
  }
  if (e.kind == "zeeman_not_open_in_interval") {
    const std::size_t x = id(e.center, "center"), p = id(e.point, "point"), w = id(e.witness, "witness");
    const Scalar& eps2 = need(e.eps2, "eps2");
    return preds.in_zeeman_nbhd(s[p], s[x], eps2) && !preds.in_zeeman_nbhd(s[w], s[x], eps2) &&
           in_every_interval_subbasic(preds, s, false, p, w);
  }
  if (e.kind == "finite_chain") {
    const std::size_t n = e.data.at("n").get<std::size_t>();
    const std::size_t p = need(e.point, "point"), w = need(e.witness, "witness");
    if (p >= n || w >= n || p == w) return false;
    // Subbasic sets {q : !(x < q)} and {q : !(q < x)} containing p must all contain w.
    for (std::size_t x = 0; x < n; ++x) {
      if (!(x < p) && x < w) return false;
      if (!(p < x) && w < x) return false;
    }
    return true;
  }
  if (e.kind == "intersection_topology") {
    const std::size_t n = e.data.at("n").get<std::size_t>();
    const auto out = intersection_topology_case(n, e.data.at("b1").get<std::vector<Mask>>(), e.data.at("b2").get<std::vector<Mask>>());
    return !out.agrees || !out.engine_is_topology;
  }
  throw BadConfig("unknown evidence kind '" + e.kind + "'");
}

// ---- JSON -------------------------------------------------------------------------------

json evidence_to_json(const Evidence& e) {
  json j{{"kind", e.kind}};
  if (!e.sample_hash.empty()) j["sample_hash"] = e.sample_hash;
  if (e.center) j["center"] = *e.center;
  if (e.eps2) j["eps2"] = scalar_to_json(*e.eps2);
  if (e.delta2) j["delta2"] = scalar_to_json(*e.delta2);
  if (e.point) j["point"] = *e.point;
  if (e.witness) j["witness"] = *e.witness;
  if (!e.note.empty()) j["note"] = e.note;
  if (!e.data.empty()) j["data"] = e.data;
  return j;
}

Evidence evidence_from_json(const json& j) {
  try {
    Evidence e;
    e.kind = j.at("kind").get<std::string>();
    e.sample_hash = j.value("sample_hash", "");
    if (j.contains("center")) e.center = j.at("center").get<std::size_t>();
    if (j.contains("eps2")) e.eps2 = scalar_from_json(j.at("eps2"));
    if (j.contains("delta2")) e.delta2 = scalar_from_json(j.at("delta2"));
    if (j.contains("point")) e.point = j.at("point").get<std::size_t>();
    if (j.contains("witness")) e.witness = j.at("witness").get<std::size_t>();
    e.note = j.value("note", "");
    if (j.contains("data")) e.data = j.at("data");
    return e;
  } catch (const json::exception& ex) {
    throw BadConfig(std::string("malformed evidence: ") + ex.what());
  }
}

json verdict_to_json(const Verdict& v) {
  json j{{"schema", kSchemaVersion},
         {"experiment", v.experiment},
         {"status", std::string(to_string(v.status))},
         {"details", v.details}};
  if (v.counterexample) j["counterexample"] = evidence_to_json(*v.counterexample);
  if (v.witness) j["witness"] = evidence_to_json(*v.witness);
  return j;
}

// ---- dispatch ---------------------------------------------------------------------------

namespace {

struct Labelled {
  std::string label;
  Sample sample;
};

Sample union_of(std::initializer_list<const Sample*> parts) {
  std::vector<Event4> events;
  for (const Sample* s : parts) {
    for (const auto& e : s->events()) {
      if (std::find(events.begin(), events.end(), e) == events.end()) events.push_back(e);
    }
  }
  return Sample(std::move(events));
}

Sample configured_sample(const ExperimentConfig& c) {
  Sample s;
  switch (c.source) {
    case ExperimentConfig::Source::Grid: s = grid_sample(c.region, c.spacing); break;
    case ExperimentConfig::Source::Sprinkle: s = poisson_sprinkle(c.region, c.count, c.seed); break;
    case ExperimentConfig::Source::File: s = read_sample(c.file); break;
    case ExperimentConfig::Source::Default: break;
  }
  if (s.size() > c.cap) {
    throw CapExceeded("sample has " + std::to_string(s.size()) + " events, cap is " + std::to_string(c.cap));
  }
  return s;
}

std::string sprinkle_label(std::uint64_t seed, std::size_t count) {
  return "sprinkle(seed=" + std::to_string(seed) + ",n=" + std::to_string(count) + ")";
}

// Built-in samples are fixed by the harness, so the event cap applies only to user input.
std::vector<Labelled> default_suite(const std::string& name, const ExperimentConfig& c) {
  const Region unit = Region::cube(0, 1);
  std::vector<Labelled> out{{"fixture", default_fixture()}};
  if (name == "retraction") return out;
  const Sample pair({origin(), make_event(1, 1, 0, 0)});
  const Sample single({origin()});
  if (name == "horismos_balls") {
    out.push_back({"grid_2^4", integer_grid(1, 1, 1, 1)});
    out.push_back({"null_pair", pair});
    out.push_back({"single", single});
    out.push_back({sprinkle_label(c.seed, kHorismosBallEventCap), poisson_sprinkle(unit, kHorismosBallEventCap, c.seed)});
    return out;
  }
  if (name == "reflexive_degeneracy") {
    out.push_back({"null_pair", pair});
    out.push_back({"single", single});
    out.push_back({sprinkle_label(c.seed, 8), poisson_sprinkle(unit, 8, c.seed)});
    return out;
  }
  out.push_back({"grid_2^4", integer_grid(1, 1, 1, 1)});
  out.push_back({"grid_3^4", integer_grid(2, 2, 2, 2)});
  out.push_back({sprinkle_label(c.seed, 64), poisson_sprinkle(unit, 64, c.seed)});
  if (name != "z_identity") out.push_back({"single", single});
  return out;
}

Verdict aggregate(const std::string& name, std::vector<std::pair<std::string, Verdict>> cases) {
  Verdict v;
  v.experiment = name;
  bool any_fail = false, all_report = !cases.empty();
  json list = json::array();
  for (auto& [label, c] : cases) {
    any_fail = any_fail || c.status == Status::Fail;
    all_report = all_report && c.status == Status::Report;
    if (c.status == Status::Fail && !v.counterexample) v.counterexample = c.counterexample;
    if (c.witness && !v.witness) v.witness = c.witness;
    list.push_back({{"case", label}, {"status", std::string(to_string(c.status))}, {"details", c.details}});
  }
  v.status = any_fail ? Status::Fail : all_report ? Status::Report : Status::Pass;
  v.details = {{"cases", std::move(list)}};
  return v;
}

struct Probe {
  std::string label;
  Axis axis;
};

Verdict axis_probe_suite(const std::vector<Labelled>& samples, const std::vector<std::vector<Probe>>& axes,
                         bool reflexive) {
  json entries = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i].sample;
    const SampleGeometry g(s);
    const std::vector<std::pair<std::string, TopologyBase>> topologies{
        {"interval", minimal_base(interval_subbase(horismos_matrix(s, reflexive)))},
        {"horismos_ball", g.horismos_ball_trace()},
        {"zeeman", g.zeeman_trace()}};
    for (const auto& probe : axes[i]) {
      for (const auto& [tname, t] : topologies) {
        const TraceReport r = axis_probe(g, probe.axis, t);
        json verdicts = json::object();
        for (const auto& [k, b] : r.verdicts) verdicts[k] = b;
        entries.push_back({{"sample", samples[i].label},
                           {"sample_hash", r.sample_hash},
                           {"axis", probe.label},
                           {"topology", tname},
                           {"axis_ids", r.axis_ids},
                           {"verdicts", std::move(verdicts)}});
      }
    }
  }
  Verdict v;
  v.experiment = "axis_probe";
  v.status = Status::Report;
  v.details = {{"reflexive", reflexive}, {"probes", std::move(entries)}};
  return v;
}

Verdict run_axis_probe(const ExperimentConfig& c) {
  const Displacement t_dir = displacement(origin(), make_event(1, 0, 0, 0));
  const Displacement x_dir = displacement(origin(), make_event(0, 1, 0, 0));
  if (c.source != ExperimentConfig::Source::Default) {
    Sample s = configured_sample(c);
    if (s.empty()) throw AxisNotInSample("empty sample");
    const Event4 base = s[0];
    return axis_probe_suite({{"configured", std::move(s)}},
                            {{{"time", Axis::make(base, t_dir, Axis::Kind::Time)},
                              {"space_x", Axis::make(base, x_dir, Axis::Kind::Space)}}},
                            c.reflexive);
  }
  const Event4 centre = make_event(1, 1, 1, 1);
  const Axis time = Axis::make(centre, t_dir, Axis::Kind::Time);
  const Axis space = Axis::make(centre, x_dir, Axis::Kind::Space);
  const Axis diagonal = Axis::make(centre, displacement(origin(), make_event(0, 1, 1, 0)), Axis::Kind::Space);
  const Sample sprinkled = poisson_sprinkle(Region::cube(0, 2), 24, c.seed);
  const Sample on_time = axis_sample(time, 5, Scalar(1));
  const Sample on_space = axis_sample(space, 5, Scalar(1));
  std::vector<Labelled> samples{{"grid_3^4", integer_grid(2, 2, 2, 2)},
                                {sprinkle_label(c.seed, 24) + "+axes", union_of({&sprinkled, &on_time, &on_space})}};
  return axis_probe_suite(samples,
                          {{{"time", time}, {"space_x", space}, {"space_xy", diagonal}},
                           {{"time", time}, {"space_x", space}}},
                          c.reflexive);
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "axis_probe",         "cone_partition",       "e_coarser_z", "finite_chain", "horismos_balls",
      "intersection_topology", "order_containments", "reflexive_degeneracy", "retraction", "z_identity"};
  return names;
}

Verdict run(const ExperimentConfig& c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
    throw BadConfig("unknown experiment '" + c.experiment + "'");
  }
  if (c.cap < 1) throw BadConfig("cap must be at least 1");
  if (c.trials < 1) throw BadConfig("trials must be at least 1");
  if (c.count < 1) throw BadConfig("count must be at least 1");
  const std::string& name = c.experiment;

  if (name == "intersection_topology") return exp_intersection_topology(c.seed, c.trials);
  if (name == "finite_chain") {
    std::vector<std::pair<std::string, Verdict>> cases;
    for (std::size_t n = 1; n <= 10; ++n) cases.emplace_back("n=" + std::to_string(n), exp_finite_chain(n));
    return aggregate(name, std::move(cases));
  }
  if (name == "axis_probe") return run_axis_probe(c);

  std::vector<Labelled> samples;
  if (c.source == ExperimentConfig::Source::Default) {
    samples = default_suite(name, c);
  } else {
    samples.push_back({"configured", configured_sample(c)});
  }
  std::vector<std::pair<std::string, Verdict>> cases;
  for (const auto& [label, s] : samples) {
    Verdict v;
    if (name == "cone_partition") v = exp_cone_partition(s);
    else if (name == "order_containments") v = exp_order_containments(s);
    else if (name == "z_identity") v = exp_z_identity(s);
    else if (name == "horismos_balls") v = exp_horismos_balls(s, c.reflexive);
    else if (name == "e_coarser_z") v = exp_e_coarser_z(s);
    else if (name == "reflexive_degeneracy") v = exp_reflexive_degeneracy(s);
    else if (name == "retraction") v = exp_retraction(s);
    v.details["sample_hash"] = s.hash();
    cases.emplace_back(label, std::move(v));
  }
  return aggregate(name, std::move(cases));
}

std::vector<Verdict> run_all(const ExperimentConfig& config) {
  std::vector<Verdict> out;
  for (const auto& name : experiment_names()) {
    ExperimentConfig c = config;
    c.experiment = name;
    out.push_back(run(c));
  }
  return out;
}

json report_to_json(const ExperimentConfig& config, const std::vector<Verdict>& verdicts) {
  json list = json::array();
  std::map<std::string, std::size_t> summary{{"pass", 0}, {"fail", 0}, {"report", 0}};
  for (const auto& v : verdicts) {
    list.push_back(verdict_to_json(v));
    ++summary[std::string(to_string(v.status))];
  }
  return json{{"schema", kSchemaVersion}, {"seed", config.seed}, {"verdicts", std::move(list)}, {"summary", summary}};
}

int exit_status(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (v.status == Status::Fail) return 1;
  }
  return 0;
}

}  // namespace lightcone
