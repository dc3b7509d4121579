#include "lightcone/finite_topology.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "lightcone/errors.hpp"

namespace lightcone {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

std::uint64_t tail_mask(std::size_t n) {
  const std::size_t r = n & 63;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

}  // namespace

PointSet::PointSet(std::size_t ground_size) : n_(ground_size), words_(word_count(ground_size), 0) {}

PointSet PointSet::full(std::size_t ground_size) {
  PointSet s(ground_size);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (!s.words_.empty()) s.words_.back() &= tail_mask(ground_size);
  return s;
}

PointSet PointSet::of(std::size_t ground_size, std::initializer_list<std::size_t> ids) {
  return from_ids(ground_size, std::vector<std::size_t>(ids));
}

PointSet PointSet::from_ids(std::size_t ground_size, const std::vector<std::size_t>& ids) {
  PointSet s(ground_size);
  for (auto id : ids) s.insert(id);
  return s;
}

PointSet PointSet::from_mask(std::size_t ground_size, std::uint64_t mask) {
  if (ground_size > 64) throw InvalidArgument("mask form needs a ground set of at most 64 points");
  PointSet s(ground_size);
  if (ground_size > 0) s.words_[0] = mask & tail_mask(ground_size);
  return s;
}

void PointSet::insert(std::size_t id) {
  if (id >= n_) throw InvalidArgument("point id " + std::to_string(id) + " outside ground set");
  words_[id >> 6] |= std::uint64_t{1} << (id & 63);
}

void PointSet::erase(std::size_t id) {
  if (id >= n_) throw InvalidArgument("point id " + std::to_string(id) + " outside ground set");
  words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63));
}

std::size_t PointSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool PointSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool PointSet::is_full() const { return count() == n_; }

bool PointSet::is_subset_of(const PointSet& other) const {
  check_ground(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool PointSet::intersects(const PointSet& other) const {
  check_ground(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

std::vector<std::size_t> PointSet::ids() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }
  }
  return out;
}

std::size_t PointSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return n_;
}

std::uint64_t PointSet::mask() const {
  if (n_ > 64) throw InvalidArgument("mask form needs a ground set of at most 64 points");
  return words_.empty() ? 0 : words_[0];
}

PointSet& PointSet::operator&=(const PointSet& other) {
  check_ground(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

PointSet& PointSet::operator|=(const PointSet& other) {
  check_ground(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& other) {
  check_ground(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

PointSet PointSet::complement() const { return full(n_) -= *this; }

std::size_t PointSet::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

void PointSet::check_ground(const PointSet& other) const {
  if (n_ != other.n_) throw GroundMismatch("point sets over different ground sets");
}

bool canonical_less(const PointSet& a, const PointSet& b) {
  if (a.ground_size() != b.ground_size()) return a.ground_size() < b.ground_size();
  // Lowest differing id d decides: the set holding d is smaller unless the other set has
  // nothing at or beyond d, in which case the other is a proper prefix.
  const std::size_t n = a.ground_size();
  const PointSet diff = (a - b) | (b - a);
  const std::size_t d = diff.first();
  if (d == n) return false;
  const bool a_has = a.contains(d);
  const PointSet& other = a_has ? b : a;
  bool other_continues = false;
  for (std::size_t id = d + 1; id < n && !other_continues; ++id) other_continues = other.contains(id);
  return a_has ? other_continues : !other_continues;
}

std::string to_string(const PointSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto id : s.ids()) {
    if (!first) os << ',';
    os << id;
    first = false;
  }
  os << '}';
  return os.str();
}

void canonicalize(std::vector<PointSet>& family) {
  std::sort(family.begin(), family.end(), canonical_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

TopologyBase TopologyBase::make(std::size_t ground_size, std::vector<PointSet> family, Role role) {
  for (const auto& s : family) {
    if (s.ground_size() != ground_size) throw GroundMismatch("family member over a different ground set");
  }
  if (ground_size > 0) {
    std::erase_if(family, [](const PointSet& s) { return s.empty(); });
  }
  canonicalize(family);
  return TopologyBase{ground_size, std::move(family), role};
}

std::string to_string(const TopologyBase& t) {
  std::string out;
  for (const auto& s : t.family) {
    if (!out.empty()) out += ' ';
    out += to_string(s);
  }
  return out;
}

RelationMatrix::RelationMatrix(std::size_t ground_size) : rows_(ground_size, PointSet(ground_size)) {}

RelationMatrix RelationMatrix::from_predicate(std::size_t ground_size,
                                              const std::function<bool(std::size_t, std::size_t)>& rel) {
  RelationMatrix m(ground_size);
  for (std::size_t i = 0; i < ground_size; ++i) {
    for (std::size_t j = 0; j < ground_size; ++j) {
      if (rel(i, j)) m.rows_[i].insert(j);
    }
  }
  return m;
}

void RelationMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (value) {
    rows_.at(i).insert(j);
  } else {
    rows_.at(i).erase(j);
  }
}

bool RelationMatrix::is_reflexive() const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!rows_[i].contains(i)) return false;
  }
  return true;
}

bool RelationMatrix::is_irreflexive() const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].contains(i)) return false;
  }
  return true;
}

std::size_t RelationMatrix::pair_count() const {
  std::size_t c = 0;
  for (const auto& r : rows_) c += r.count();
  return c;
}

PointSet future_set(const RelationMatrix& rel, std::size_t i) {
  if (i >= rel.ground_size()) throw InvalidArgument("point id outside relation");
  return rel.row(i);
}

PointSet past_set(const RelationMatrix& rel, std::size_t i) {
  if (i >= rel.ground_size()) throw InvalidArgument("point id outside relation");
  PointSet out(rel.ground_size());
  for (std::size_t j = 0; j < rel.ground_size(); ++j) {
    if (rel.related(j, i)) out.insert(j);
  }
  return out;
}

TopologyBase interval_subbase(const RelationMatrix& rel) {
  const std::size_t n = rel.ground_size();
  std::vector<PointSet> family;
  family.reserve(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    family.push_back(past_set(rel, x).complement());
    family.push_back(future_set(rel, x).complement());
  }
  return TopologyBase::make(n, std::move(family), TopologyBase::Role::Subbase);
}

TopologyBase base_from_subbase(const TopologyBase& subbase, std::size_t max_family) {
  const std::size_t n = subbase.ground_size;
  std::unordered_set<PointSet> seen;
  std::vector<PointSet> closed{PointSet::full(n)};
  seen.insert(closed.front());
  // Intersecting a closed family with one more generator keeps it closed.
  for (const auto& s : subbase.family) {
    const std::size_t current = closed.size();
    for (std::size_t i = 0; i < current; ++i) {
      PointSet c = closed[i] & s;
      if (seen.insert(c).second) {
        if (closed.size() >= max_family) {
          throw CapExceeded("intersection closure exceeds " + std::to_string(max_family) + " sets");
        }
        closed.push_back(std::move(c));
      }
    }
  }
  return TopologyBase::make(n, std::move(closed), TopologyBase::Role::Base);
}

std::vector<PointSet> smallest_neighbourhoods(const TopologyBase& family) {
  const std::size_t n = family.ground_size;
  std::vector<PointSet> nbhd(n, PointSet::full(n));
  for (const auto& s : family.family) {
    for (auto p : s.ids()) nbhd[p] &= s;
  }
  return nbhd;
}

TopologyBase minimal_base(const TopologyBase& family) {
  return TopologyBase::make(family.ground_size, smallest_neighbourhoods(family), TopologyBase::Role::Base);
}

namespace {

void require_base(const TopologyBase& t) {
  if (t.role != TopologyBase::Role::Base) throw InvalidArgument("operation needs a base, not a subbase");
}

}  // namespace

bool is_open(const PointSet& g, const TopologyBase& base) {
  require_base(base);
  if (g.ground_size() != base.ground_size) throw GroundMismatch("set and base over different ground sets");
  PointSet covered(g.ground_size());
  for (const auto& b : base.family) {
    if (b.is_subset_of(g)) covered |= b;
  }
  return g.is_subset_of(covered);
}

bool coarser_eq(const TopologyBase& t1, const TopologyBase& t2) {
  require_base(t1);
  require_base(t2);
  if (t1.ground_size != t2.ground_size) throw GroundMismatch("topologies over different ground sets");
  return std::all_of(t1.family.begin(), t1.family.end(), [&](const PointSet& g) { return is_open(g, t2); });
}

bool equal(const TopologyBase& t1, const TopologyBase& t2) { return coarser_eq(t1, t2) && coarser_eq(t2, t1); }

std::vector<PointSet> generate_full(const TopologyBase& base, std::size_t cap) {
  require_base(base);
  const std::size_t n = base.ground_size;
  constexpr std::size_t kHardLimit = 24;
  if (n > cap || n > kHardLimit) {
    throw CapExceeded("full topology generation limited to " + std::to_string(std::min(cap, kHardLimit)) +
                      " points, got " + std::to_string(n));
  }
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::uint32_t> union_below(subsets, 0);
  std::vector<char> member(subsets, 0);
  for (const auto& b : base.family) member[b.mask()] = 1;
  // union_below[G] = union of all members contained in G.
  for (std::size_t g = 0; g < subsets; ++g) {
    std::uint32_t u = member[g] ? static_cast<std::uint32_t>(g) : 0;
    for (std::uint64_t bits = g; bits != 0; bits &= bits - 1) {
      u |= union_below[g & ~(bits & -bits)];
    }
    union_below[g] = u;
  }
  std::vector<PointSet> opens;
  for (std::size_t g = 0; g < subsets; ++g) {
    if (union_below[g] == g) opens.push_back(PointSet::from_mask(n, g));
  }
  canonicalize(opens);
  return opens;
}

TopologyBase subspace_trace(const TopologyBase& base, const PointSet& s) {
  require_base(base);
  if (s.ground_size() != base.ground_size) throw GroundMismatch("trace set over a different ground set");
  const std::vector<std::size_t> ids = s.ids();
  std::vector<PointSet> family;
  family.reserve(base.family.size());
  for (const auto& b : base.family) {
    PointSet t(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (b.contains(ids[k])) t.insert(k);
    }
    family.push_back(std::move(t));
  }
  if (ids.empty()) family.assign(1, PointSet(0));
  return TopologyBase::make(ids.size(), std::move(family), TopologyBase::Role::Base);
}

TopologyBase intersection_base(const TopologyBase& b1, const TopologyBase& b2) {
  require_base(b1);
  require_base(b2);
  if (b1.ground_size != b2.ground_size) throw GroundMismatch("bases over different ground sets");
  std::unordered_set<PointSet> seen;
  std::vector<PointSet> family;
  for (const auto& u : b1.family) {
    for (const auto& v : b2.family) {
      PointSet w = u & v;
      if (seen.insert(w).second) family.push_back(std::move(w));
    }
  }
  return TopologyBase::make(b1.ground_size, std::move(family), TopologyBase::Role::Base);
}

TopologyBase cone_topology_subbase(const RelationMatrix& rel) {
  const std::size_t n = rel.ground_size();
  std::vector<PointSet> family;
  family.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    PointSet cone = future_set(rel, x) | past_set(rel, x);
    cone.insert(x);
    family.push_back(std::move(cone));
  }
  return TopologyBase::make(n, std::move(family), TopologyBase::Role::Subbase);
}

}  // namespace lightcone
