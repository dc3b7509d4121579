#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace lightcone {

/// Subset of {0, ..., n-1} stored as a bitset. Bits at positions >= n are always clear.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t ground_size);

  static PointSet full(std::size_t ground_size);
  static PointSet of(std::size_t ground_size, std::initializer_list<std::size_t> ids);
  static PointSet from_ids(std::size_t ground_size, const std::vector<std::size_t>& ids);
  /// Low ground_size bits of mask; ground_size <= 64.
  static PointSet from_mask(std::size_t ground_size, std::uint64_t mask);

  std::size_t ground_size() const { return n_; }
  bool contains(std::size_t id) const { return (words_[id >> 6] >> (id & 63)) & 1u; }
  void insert(std::size_t id);
  void erase(std::size_t id);

  std::size_t count() const;
  bool empty() const;
  bool is_full() const;
  bool is_subset_of(const PointSet& other) const;
  bool intersects(const PointSet& other) const;
  /// Members in increasing order.
  std::vector<std::size_t> ids() const;
  /// Smallest member, or ground_size() when empty.
  std::size_t first() const;
  /// The set as a 64-bit mask; ground_size() must be <= 64.
  std::uint64_t mask() const;

  PointSet& operator&=(const PointSet& other);
  PointSet& operator|=(const PointSet& other);
  /// Set difference.
  PointSet& operator-=(const PointSet& other);
  PointSet complement() const;

  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }
  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  std::size_t hash() const;

 private:
  void check_ground(const PointSet& other) const;

  std::size_t n_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

/// Lexicographic order on the increasing id lists; the canonical order of every family.
bool canonical_less(const PointSet& a, const PointSet& b);

/// "{0,2,5}".
std::string to_string(const PointSet& s);

/// Sorts canonically and removes duplicates.
void canonicalize(std::vector<PointSet>& family);

/// A family of subsets of an n-point ground set serving as a subbase or a base.
struct TopologyBase {
  enum class Role { Subbase, Base };

  std::size_t ground_size = 0;
  std::vector<PointSet> family;  // canonical: sorted, no duplicates
  Role role = Role::Base;

  /// Canonicalizes the family and drops the empty set (kept only when n = 0, where it is X).
  static TopologyBase make(std::size_t ground_size, std::vector<PointSet> family, Role role);

  friend bool operator==(const TopologyBase&, const TopologyBase&) = default;
};

/// Canonical text of a family: members separated by spaces, e.g. "{0} {0,1} {0,1,2}".
std::string to_string(const TopologyBase& t);

/// Boolean n x n relation; related(i, j) means i is related to j.
class RelationMatrix {
 public:
  explicit RelationMatrix(std::size_t ground_size = 0);
  static RelationMatrix from_predicate(std::size_t ground_size,
                                       const std::function<bool(std::size_t, std::size_t)>& rel);

  std::size_t ground_size() const { return rows_.size(); }
  bool related(std::size_t i, std::size_t j) const { return rows_[i].contains(j); }
  void set(std::size_t i, std::size_t j, bool value = true);
  const PointSet& row(std::size_t i) const { return rows_[i]; }

  bool is_reflexive() const;
  bool is_irreflexive() const;
  std::size_t pair_count() const;

  friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;

 private:
  std::vector<PointSet> rows_;
};

/// {j : i related to j}.
PointSet future_set(const RelationMatrix& rel, std::size_t i);
/// {j : j related to i}.
PointSet past_set(const RelationMatrix& rel, std::size_t i);

/// {X - past_set(x)} u {X - future_set(x)} over all x: the subbase of the interval topology.
TopologyBase interval_subbase(const RelationMatrix& rel);

/// Closure of a subbase under finite intersection, X included as the empty intersection.
/// Throws CapExceeded when the closure would exceed max_family members.
TopologyBase base_from_subbase(const TopologyBase& subbase, std::size_t max_family = std::size_t{1} << 20);

/// Base {M_p} of the topology generated by a family used as a subbase, where M_p is the
/// intersection of X and every member containing p (the smallest open set about p).
/// Same topology as base_from_subbase, but never more than n members.
TopologyBase minimal_base(const TopologyBase& family);
/// M_p for every point p, indexed by p.
std::vector<PointSet> smallest_neighbourhoods(const TopologyBase& family);

/// Base criterion: every p in g has a member B with p in B and B a subset of g.
bool is_open(const PointSet& g, const TopologyBase& base);

/// Every member of t1 is open with respect to t2 (t1 generates a coarser or equal topology).
bool coarser_eq(const TopologyBase& t1, const TopologyBase& t2);
bool equal(const TopologyBase& t1, const TopologyBase& t2);

/// Every union of base members (the empty union included), canonically sorted.
/// Throws CapExceeded when the ground set exceeds cap points.
std::vector<PointSet> generate_full(const TopologyBase& base, std::size_t cap = 16);

/// {B n s} re-indexed onto s: the k-th smallest id of s becomes k.
TopologyBase subspace_trace(const TopologyBase& base, const PointSet& s);

/// {B1 n B2 : B1 in b1, B2 in b2}.
TopologyBase intersection_base(const TopologyBase& b1, const TopologyBase& b2);

/// Subbase {future_set(x) u past_set(x) u {x}}: each point's full cone with its apex.
TopologyBase cone_topology_subbase(const RelationMatrix& rel);

}  // namespace lightcone

template <>
struct std::hash<lightcone::PointSet> {
  std::size_t operator()(const lightcone::PointSet& s) const noexcept { return s.hash(); }
};
