#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lightcone/causal_geometry.hpp"

namespace lightcone {

inline constexpr std::size_t kTopologyEventCap = 64;
inline constexpr std::size_t kRelationEventCap = 4096;

/// Axis-aligned box [lo0,hi0] x ... x [lo3,hi3]. A side may have zero length.
struct Region {
  Event4 lo;
  Event4 hi;

  static Region make(Event4 lo, Event4 hi);
  /// Box [lo, hi] on every axis.
  static Region cube(std::int64_t lo, std::int64_t hi);
};

/// Finite ordered set of pairwise distinct events; ids are positions.
class Sample {
 public:
  Sample() = default;
  /// Throws InvalidArgument if two events coincide.
  explicit Sample(std::vector<Event4> events);

  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const Event4& operator[](std::size_t id) const { return events_[id]; }
  const std::vector<Event4>& events() const { return events_; }

  /// FNV-1a 64 of the canonical rational text of all coordinates, as 16 hex digits.
  std::string hash() const;

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<Event4> events_;
};

/// All lattice points lo + spacing*k inside region, in lexicographic coordinate order.
/// Throws CapExceeded when the lattice has more than cap points.
Sample grid_sample(const Region& region, const Scalar& spacing, std::size_t cap = kRelationEventCap);

/// count uniform events in region. Each coordinate is lo + (hi - lo) * k / 2^53 where k is the
/// top 53 bits of the next std::mt19937_64 output, seeded with seed; colliding events are redrawn.
Sample poisson_sprinkle(const Region& region, std::size_t count, std::uint64_t seed);

/// count evenly spaced points base + t * direction, t from -span to +span.
Sample axis_sample(const Axis& axis, std::size_t count, const Scalar& span);

/// {O, (1,1,0,0), (2,0,0,0), (0,3,0,0)}: one null pair from O, one timelike, one spacelike.
Sample default_fixture();

/// Integer box [0,e0] x ... x [0,e3] with unit spacing.
Sample integer_grid(std::int64_t e0, std::int64_t e1, std::int64_t e2, std::int64_t e3);

}  // namespace lightcone
