#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lightcone/causal_geometry.hpp"
#include "lightcone/event_sampling.hpp"
#include "lightcone/finite_topology.hpp"

namespace lightcone {

/// Squared radii shared by every center of a sample, ascending and distinct.
///
/// The continuum statements quantify over all radii; on a finite sample a ball trace only
/// changes when the radius crosses a pairwise distance. Taking every pairwise squared
/// distance together with its half guarantees a separating radius below each of them.
struct RadiusPolicy {
  std::vector<Scalar> eps2;

  /// Pairwise squared distances of s and their halves. A sample with fewer than two events
  /// gets the single radius 1.
  static RadiusPolicy from_sample(const Sample& s);
  /// Explicit radii; sorted and deduplicated. Throws InvalidArgument on a value <= 0 or an empty list.
  static RadiusPolicy from_values(std::vector<Scalar> values);
  /// Policy of a sample given its pairwise squared distances (one entry per unordered pair).
  static RadiusPolicy from_squared_distances(const std::vector<Scalar>& d2);

  std::size_t size() const { return eps2.size(); }
  const Scalar& operator[](std::size_t k) const { return eps2[k]; }
};

enum class RelationKind { Chronological, Causal, Horismos, ReflexiveHorismos };

std::string_view to_string(RelationKind k);

/// Exact pairwise data of a sample, computed once with the causal_geometry predicates:
/// the cone class of every ordered pair and, per pair, the index of the first policy radius
/// whose ball reaches the other event.
class SampleGeometry {
 public:
  SampleGeometry(const Sample& s, RadiusPolicy policy);
  explicit SampleGeometry(const Sample& s);

  const Sample& sample() const { return *sample_; }
  std::size_t size() const { return n_; }
  const RadiusPolicy& policy() const { return policy_; }

  /// Class of event j seen from event i.
  ConeClass cone(std::size_t i, std::size_t j) const { return cone_[i * n_ + j]; }
  const Scalar& squared_distance(std::size_t i, std::size_t j) const { return d2_[i * n_ + j]; }
  /// Smallest k with d2(i,j) < policy[k]; equals policy().size() when no radius reaches j.
  std::size_t first_radius(std::size_t i, std::size_t j) const { return first_[i * n_ + j]; }

  bool ball_member(std::size_t y, std::size_t x, std::size_t k) const { return first_radius(x, y) <= k; }
  bool horismos_ball_member(std::size_t y, std::size_t x) const { return y == x || !is_null(cone(x, y)); }
  bool zeeman_member(std::size_t y, std::size_t x, std::size_t k) const {
    return ball_member(y, x, k) && (y == x || !is_null(cone(x, y)));
  }

  /// B_eps(x) n s for eps^2 = policy[k].
  PointSet ball(std::size_t x, std::size_t k) const;
  /// Z_eps(x) n s for eps^2 = policy[k].
  PointSet zeeman(std::size_t x, std::size_t k) const;
  /// A(x) n s.
  PointSet horismos_ball(std::size_t x) const;

  /// Radius indices at which the ball about x gains a point, ascending; every ball about x
  /// equals the ball at one of these indices.
  std::vector<std::size_t> radius_breaks(std::size_t x) const;

  RelationMatrix relation(RelationKind kind) const;

  TopologyBase euclidean_trace() const;
  TopologyBase zeeman_trace() const;
  TopologyBase horismos_ball_trace() const;

 private:
  SampleGeometry(const Sample& s, std::optional<RadiusPolicy> policy);

  const Sample* sample_;
  std::size_t n_;
  RadiusPolicy policy_;
  std::vector<ConeClass> cone_;
  std::vector<Scalar> d2_;
  std::vector<std::size_t> first_;
};

/// r[i][j] = horismos(e_i, e_j, reflexive).
RelationMatrix horismos_matrix(const Sample& s, bool reflexive);
RelationMatrix relation_matrix(const Sample& s, RelationKind kind);

/// {B_eps(x) n s : x in s, eps^2 in p}.
TopologyBase euclidean_trace(const Sample& s, const RadiusPolicy& p);
/// {Z_eps(x) n s : x in s, eps^2 in p}.
TopologyBase zeeman_trace(const Sample& s, const RadiusPolicy& p);
/// {A(x) n s : x in s}, using the irreflexive horismos.
TopologyBase horismos_ball_trace(const Sample& s);

/// Named families and verdicts produced by a trace computation.
struct TraceReport {
  std::string sample_hash;
  std::vector<std::pair<std::string, TopologyBase>> families;
  std::vector<std::pair<std::string, bool>> verdicts;
  std::vector<std::size_t> axis_ids;

  const TopologyBase* family(std::string_view name) const;
  std::optional<bool> verdict(std::string_view name) const;
};

/// Restricts the topology generated by t, and the Euclidean trace of s, to the sample points
/// lying on the axis and reports coarser_eq in both directions. Reports only; asserts nothing.
/// Throws AxisNotInSample when fewer than two sample points lie on the axis.
TraceReport axis_probe(const Sample& s, const Axis& axis, const TopologyBase& t);
TraceReport axis_probe(const SampleGeometry& g, const Axis& axis, const TopologyBase& t);

}  // namespace lightcone
