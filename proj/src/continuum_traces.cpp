#include "lightcone/continuum_traces.hpp"

#include <algorithm>

#include "lightcone/errors.hpp"

namespace lightcone {

RadiusPolicy RadiusPolicy::from_sample(const Sample& s) {
  std::vector<Scalar> d2;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) d2.push_back(squared_distance(s[i], s[j]));
  }
  return from_squared_distances(d2);
}

RadiusPolicy RadiusPolicy::from_squared_distances(const std::vector<Scalar>& d2) {
  std::vector<Scalar> values;
  values.reserve(2 * d2.size());
  for (const auto& v : d2) {
    values.push_back(v / 2);
    values.push_back(v);
  }
  if (values.empty()) values.emplace_back(1);
  return from_values(std::move(values));
}

RadiusPolicy RadiusPolicy::from_values(std::vector<Scalar> values) {
  if (values.empty()) throw InvalidArgument("radius policy needs at least one radius");
  for (const auto& v : values) {
    if (v <= 0) throw InvalidArgument("squared radii must be positive");
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return RadiusPolicy{std::move(values)};
}

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Chronological: return "chron";
    case RelationKind::Causal: return "causal";
    case RelationKind::Horismos: return "horismos";
    case RelationKind::ReflexiveHorismos: return "horismos_reflexive";
  }
  return "?";
}

namespace {

bool related_by(RelationKind kind, ConeClass c) {
  switch (kind) {
    case RelationKind::Chronological: return c == ConeClass::FutureTimelike;
    case RelationKind::Causal:
      return c == ConeClass::Zero || c == ConeClass::FutureTimelike || c == ConeClass::FutureNull;
    case RelationKind::Horismos: return c == ConeClass::FutureNull;
    case RelationKind::ReflexiveHorismos: return c == ConeClass::FutureNull || c == ConeClass::Zero;
  }
  return false;
}

std::vector<ConeClass> cone_table(const Sample& s) {
  const std::size_t n = s.size();
  std::vector<ConeClass> cones(n * n, ConeClass::Zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const ConeClass c = classify(s[i], s[j]);
      cones[i * n + j] = c;
      cones[j * n + i] = reversed(c);
    }
  }
  return cones;
}

RelationMatrix relation_from_cones(std::size_t n, const std::vector<ConeClass>& cones, RelationKind kind) {
  RelationMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (related_by(kind, cones[i * n + j])) m.set(i, j);
    }
  }
  return m;
}

}  // namespace

SampleGeometry::SampleGeometry(const Sample& s) : SampleGeometry(s, std::optional<RadiusPolicy>{}) {}

SampleGeometry::SampleGeometry(const Sample& s, RadiusPolicy policy)
    : SampleGeometry(s, std::optional<RadiusPolicy>(std::move(policy))) {}

SampleGeometry::SampleGeometry(const Sample& s, std::optional<RadiusPolicy> policy)
    : sample_(&s), n_(s.size()), cone_(n_ * n_, ConeClass::Zero), d2_(n_ * n_), first_(n_ * n_, 0) {
  std::vector<Scalar> pair_d2;
  pair_d2.reserve(n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Displacement d = displacement(s[i], s[j]);
      const ConeClass c = classify(d);
      cone_[i * n_ + j] = c;
      cone_[j * n_ + i] = reversed(c);
      d2_[i * n_ + j] = squared_norm(d);
      d2_[j * n_ + i] = d2_[i * n_ + j];
      if (!policy) pair_d2.push_back(d2_[i * n_ + j]);
    }
  }
  policy_ = policy ? std::move(*policy) : RadiusPolicy::from_squared_distances(pair_d2);
  const auto& radii = policy_.eps2;
  const auto first_above = [&](const Scalar& v) {
    return static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), v) - radii.begin());
  };
  for (std::size_t i = 0; i < n_; ++i) {
    first_[i * n_ + i] = first_above(d2_[i * n_ + i]);
    for (std::size_t j = i + 1; j < n_; ++j) {
      first_[i * n_ + j] = first_above(d2_[i * n_ + j]);
      first_[j * n_ + i] = first_[i * n_ + j];
    }
  }
}

PointSet SampleGeometry::ball(std::size_t x, std::size_t k) const {
  PointSet out(n_);
  for (std::size_t y = 0; y < n_; ++y) {
    if (ball_member(y, x, k)) out.insert(y);
  }
  return out;
}

PointSet SampleGeometry::zeeman(std::size_t x, std::size_t k) const {
  PointSet out(n_);
  for (std::size_t y = 0; y < n_; ++y) {
    if (zeeman_member(y, x, k)) out.insert(y);
  }
  return out;
}

PointSet SampleGeometry::horismos_ball(std::size_t x) const {
  PointSet out(n_);
  for (std::size_t y = 0; y < n_; ++y) {
    if (horismos_ball_member(y, x)) out.insert(y);
  }
  return out;
}

std::vector<std::size_t> SampleGeometry::radius_breaks(std::size_t x) const {
  std::vector<std::size_t> breaks;
  for (std::size_t y = 0; y < n_; ++y) {
    if (first_radius(x, y) < policy_.size()) breaks.push_back(first_radius(x, y));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

RelationMatrix SampleGeometry::relation(RelationKind kind) const { return relation_from_cones(n_, cone_, kind); }

TopologyBase SampleGeometry::euclidean_trace() const {
  std::vector<PointSet> family;
  for (std::size_t x = 0; x < n_; ++x) {
    for (auto k : radius_breaks(x)) family.push_back(ball(x, k));
  }
  return TopologyBase::make(n_, std::move(family), TopologyBase::Role::Base);
}

TopologyBase SampleGeometry::zeeman_trace() const {
  std::vector<PointSet> family;
  for (std::size_t x = 0; x < n_; ++x) {
    for (auto k : radius_breaks(x)) family.push_back(zeeman(x, k));
  }
  return TopologyBase::make(n_, std::move(family), TopologyBase::Role::Base);
}

TopologyBase SampleGeometry::horismos_ball_trace() const {
  std::vector<PointSet> family;
  for (std::size_t x = 0; x < n_; ++x) family.push_back(horismos_ball(x));
  return TopologyBase::make(n_, std::move(family), TopologyBase::Role::Base);
}

RelationMatrix relation_matrix(const Sample& s, RelationKind kind) {
  return relation_from_cones(s.size(), cone_table(s), kind);
}

RelationMatrix horismos_matrix(const Sample& s, bool reflexive) {
  return relation_matrix(s, reflexive ? RelationKind::ReflexiveHorismos : RelationKind::Horismos);
}

TopologyBase euclidean_trace(const Sample& s, const RadiusPolicy& p) {
  return SampleGeometry(s, p).euclidean_trace();
}

TopologyBase zeeman_trace(const Sample& s, const RadiusPolicy& p) { return SampleGeometry(s, p).zeeman_trace(); }

TopologyBase horismos_ball_trace(const Sample& s) {
  const std::size_t n = s.size();
  const std::vector<ConeClass> cones = cone_table(s);
  std::vector<PointSet> family;
  for (std::size_t x = 0; x < n; ++x) {
    PointSet a(n);
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x || !is_null(cones[x * n + y])) a.insert(y);
    }
    family.push_back(std::move(a));
  }
  return TopologyBase::make(n, std::move(family), TopologyBase::Role::Base);
}

const TopologyBase* TraceReport::family(std::string_view name) const {
  for (const auto& [key, value] : families) {
    if (key == name) return &value;
  }
  return nullptr;
}

std::optional<bool> TraceReport::verdict(std::string_view name) const {
  for (const auto& [key, value] : verdicts) {
    if (key == name) return value;
  }
  return std::nullopt;
}

TraceReport axis_probe(const Sample& s, const Axis& axis, const TopologyBase& t) {
  return axis_probe(SampleGeometry(s), axis, t);
}

TraceReport axis_probe(const SampleGeometry& g, const Axis& axis, const TopologyBase& t) {
  const Sample& s = g.sample();
  if (t.ground_size != s.size()) throw GroundMismatch("probed topology is not over the sample");
  PointSet on_axis(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (axis.contains(s[i])) on_axis.insert(i);
  }
  if (on_axis.count() < 2) throw AxisNotInSample("fewer than two sample events lie on the axis");

  // Traces of a genuine base give a base of the subspace topology, so both sides are
  // first normalized to the smallest-neighbourhood base of the topology they generate.
  const TopologyBase probed = subspace_trace(minimal_base(t), on_axis);
  const TopologyBase euclid = subspace_trace(minimal_base(g.euclidean_trace()), on_axis);

  TraceReport report;
  report.sample_hash = s.hash();
  report.axis_ids = on_axis.ids();
  report.families.emplace_back("axis_probed", probed);
  report.families.emplace_back("axis_euclidean", euclid);
  report.verdicts.emplace_back("probed_coarser_eq_euclidean", coarser_eq(probed, euclid));
  report.verdicts.emplace_back("euclidean_coarser_eq_probed", coarser_eq(euclid, probed));
  return report;
}

}  // namespace lightcone
