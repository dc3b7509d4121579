#pragma once

// Brute-force reference computations on 64-bit masks. Deliberately independent of the
// finite_topology engine so tests can compare the two.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "lightcone/finite_topology.hpp"

namespace oracle {

using Mask = std::uint64_t;
using Family = std::set<Mask>;

inline Mask full(std::size_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Every union of members, the empty union included, by fixpoint iteration.
inline Family union_closure(const Family& members) {
  Family out{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> current(out.begin(), out.end());
    for (Mask a : current) {
      for (Mask b : members) {
        if (out.insert(a | b).second) grew = true;
      }
    }
  }
  return out;
}

/// Closure under pairwise intersection with X added, by fixpoint iteration.
inline Family intersection_closure(const Family& members, std::size_t n) {
  Family out = members;
  out.insert(full(n));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> current(out.begin(), out.end());
    for (Mask a : current) {
      for (Mask b : current) {
        if (out.insert(a & b).second) grew = true;
      }
    }
  }
  return out;
}

/// rows[i] has bit j set iff i is related to j.
inline Family interval_subbase(const std::vector<Mask>& rows) {
  const std::size_t n = rows.size();
  Family out;
  for (std::size_t x = 0; x < n; ++x) {
    Mask past = 0;
    for (std::size_t y = 0; y < n; ++y) {
      if ((rows[y] >> x) & 1) past |= Mask{1} << y;
    }
    out.insert(full(n) & ~past);
    out.insert(full(n) & ~rows[x]);
  }
  return out;
}

inline Family to_family(const lightcone::TopologyBase& t) {
  Family out;
  for (const auto& s : t.family) out.insert(s.mask());
  return out;
}

inline Family to_family(const std::vector<lightcone::PointSet>& sets) {
  Family out;
  for (const auto& s : sets) out.insert(s.mask());
  return out;
}

inline lightcone::TopologyBase to_base(std::size_t n, const Family& f,
                                       lightcone::TopologyBase::Role role = lightcone::TopologyBase::Role::Base) {
  std::vector<lightcone::PointSet> sets;
  for (Mask m : f) sets.push_back(lightcone::PointSet::from_mask(n, m));
  return lightcone::TopologyBase::make(n, std::move(sets), role);
}

/// k sets, k uniform in [1, 2n], each point included with probability 1/2.
inline Family random_family(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> k_dist(1, 2 * n);
  std::bernoulli_distribution coin(0.5);
  Family out;
  const std::size_t k = k_dist(rng);
  for (std::size_t i = 0; i < k; ++i) {
    Mask m = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (coin(rng)) m |= Mask{1} << p;
    }
    out.insert(m);
  }
  return out;
}

}  // namespace oracle
