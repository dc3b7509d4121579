#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lightcone/errors.hpp"
#include "lightcone/finite_topology.hpp"
#include "oracles.hpp"

using namespace lightcone;
using Role = TopologyBase::Role;

namespace {

PointSet ps(std::size_t n, std::initializer_list<std::size_t> ids) { return PointSet::of(n, ids); }

TopologyBase base(std::size_t n, std::vector<PointSet> sets) { return TopologyBase::make(n, std::move(sets), Role::Base); }

// Irreflexive total order i < j on n points.
RelationMatrix chain(std::size_t n) {
  return RelationMatrix::from_predicate(n, [](std::size_t i, std::size_t j) { return i < j; });
}

std::vector<oracle::Mask> rows_of(const RelationMatrix& m) {
  std::vector<oracle::Mask> rows;
  for (std::size_t i = 0; i < m.ground_size(); ++i) rows.push_back(m.row(i).mask());
  return rows;
}

TopologyBase random_base(std::size_t n, std::mt19937_64& rng) {
  return base_from_subbase(oracle::to_base(n, oracle::random_family(n, rng), Role::Subbase));
}

}  // namespace

TEST_CASE("point sets") {
  PointSet s(70);
  s.insert(0);
  s.insert(65);
  CHECK(s.count() == 2);
  CHECK(s.contains(65));
  CHECK(s.ids() == std::vector<std::size_t>{0, 65});
  CHECK(s.complement().count() == 68);
  CHECK_FALSE(s.complement().contains(65));
  CHECK(PointSet::full(70).is_full());
  CHECK(s.is_subset_of(PointSet::full(70)));
  CHECK_THROWS_AS(s.insert(70), InvalidArgument);
  CHECK_THROWS_AS((void)(s & PointSet(3)), GroundMismatch);
  CHECK(to_string(ps(5, {1, 3})) == "{1,3}");
  CHECK(to_string(PointSet(3)) == "{}");
}

TEST_CASE("canonical order is lexicographic on id lists") {
  const std::size_t n = 4;
  std::vector<PointSet> sets{ps(n, {2}), ps(n, {0, 1}), ps(n, {1}), ps(n, {0}), ps(n, {0, 1, 2, 3}), ps(n, {1, 3}),
                             PointSet(n), ps(n, {0, 2})};
  canonicalize(sets);
  std::vector<std::string> text;
  for (const auto& s : sets) text.push_back(to_string(s));
  CHECK(text == std::vector<std::string>{"{}", "{0}", "{0,1}", "{0,1,2,3}", "{0,2}", "{1}", "{1,3}", "{2}"});

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 1 + trial % 9;
    const auto a = PointSet::from_mask(m, rng());
    const auto b = PointSet::from_mask(m, rng());
    CHECK(canonical_less(a, b) == (a.ids() < b.ids()));
  }
}

TEST_CASE("future and past sets") {
  const RelationMatrix c = chain(3);
  CHECK(future_set(c, 1) == ps(3, {2}));
  CHECK(past_set(c, 1) == ps(3, {0}));
  CHECK(future_set(RelationMatrix(3), 0).empty());
  RelationMatrix refl = RelationMatrix::from_predicate(3, [](auto i, auto j) { return i <= j; });
  CHECK(future_set(refl, 1).contains(1));
  CHECK(refl.is_reflexive());
  CHECK(c.is_irreflexive());
}

TEST_CASE("interval_subbase") {
  SUBCASE("chain of three") {
    const TopologyBase sb = interval_subbase(chain(3));
    CHECK(sb.role == Role::Subbase);
    CHECK(to_string(sb) == "{0} {0,1} {0,1,2} {1,2} {2}");
    CHECK(oracle::to_family(sb) == oracle::interval_subbase(rows_of(chain(3))));
  }
  SUBCASE("antichain") { CHECK(to_string(interval_subbase(RelationMatrix(4))) == "{0,1,2,3}"); }
  SUBCASE("single point") { CHECK(to_string(interval_subbase(RelationMatrix(1))) == "{0}"); }
  SUBCASE("random relations match the oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + trial % 8;
      RelationMatrix m(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (rng() & 1) m.set(i, j);
        }
      }
      oracle::Family expected = oracle::interval_subbase(rows_of(m));
      expected.erase(0);
      CHECK(oracle::to_family(interval_subbase(m)) == expected);
    }
  }
}

TEST_CASE("base_from_subbase") {
  const std::size_t n = 3;
  const TopologyBase sb = TopologyBase::make(n, {ps(n, {0, 1}), ps(n, {1, 2})}, Role::Subbase);
  const TopologyBase b = base_from_subbase(sb);
  CHECK(b.role == Role::Base);
  CHECK(to_string(b) == "{0,1} {0,1,2} {1} {1,2}");

  CHECK(to_string(base_from_subbase(TopologyBase::make(n, {PointSet::full(n)}, Role::Subbase))) == "{0,1,2}");

  const TopologyBase chain_base = base_from_subbase(interval_subbase(chain(3)));
  CHECK(to_string(chain_base) == "{0} {0,1} {0,1,2} {1} {1,2} {2}");

  SUBCASE("matches the oracle and is idempotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t m = 1 + trial % 7;
      const oracle::Family f = oracle::random_family(m, rng);
      const TopologyBase closed = base_from_subbase(oracle::to_base(m, f, Role::Subbase));
      oracle::Family expected = oracle::intersection_closure(f, m);
      expected.erase(0);
      CHECK(oracle::to_family(closed) == expected);
      TopologyBase again = closed;
      again.role = Role::Subbase;
      CHECK(base_from_subbase(again).family == closed.family);
    }
  }
  SUBCASE("cap") {
    const std::size_t m = 12;
    std::vector<PointSet> cofinite;
    for (std::size_t i = 0; i < m; ++i) cofinite.push_back(ps(m, {i}).complement());
    const TopologyBase sb2 = TopologyBase::make(m, cofinite, Role::Subbase);
    CHECK(base_from_subbase(sb2).family.size() == (std::size_t{1} << m) - 1);
    CHECK_THROWS_AS(base_from_subbase(sb2, 100), CapExceeded);
  }
}

TEST_CASE("minimal_base generates the same topology as the intersection closure") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 8;
    const TopologyBase sb = oracle::to_base(m, oracle::random_family(m, rng), Role::Subbase);
    const TopologyBase small = minimal_base(sb);
    const TopologyBase big = base_from_subbase(sb);
    CHECK(small.family.size() <= m);
    CHECK(equal(small, big));
    CHECK(generate_full(small) == generate_full(big));
  }
}

TEST_CASE("is_open") {
  const std::size_t n = 3;
  const TopologyBase b = base(n, {PointSet::full(n), ps(n, {0, 1}), ps(n, {1, 2}), ps(n, {1})});
  CHECK(is_open(PointSet(n), b));
  CHECK(is_open(PointSet::full(n), b));
  CHECK_FALSE(is_open(ps(n, {0, 2}), b));
  CHECK(is_open(ps(n, {1}), b));
  CHECK_FALSE(is_open(ps(n, {0}), b));
  CHECK_THROWS_AS(is_open(ps(n, {0}), TopologyBase::make(n, {}, Role::Subbase)), InvalidArgument);

  SUBCASE("agrees with generate_full membership") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t m = 1 + trial % 6;
      const TopologyBase rb = random_base(m, rng);
      const oracle::Family opens = oracle::union_closure(oracle::to_family(rb));
      for (oracle::Mask g = 0; g <= oracle::full(m); ++g) {
        CHECK(is_open(PointSet::from_mask(m, g), rb) == (opens.count(g) == 1));
      }
    }
  }
}

TEST_CASE("coarser_eq and equal") {
  const std::size_t n = 3;
  const TopologyBase indiscrete = base(n, {PointSet::full(n)});
  const TopologyBase discrete = base(n, {ps(n, {0}), ps(n, {1}), ps(n, {2})});
  const TopologyBase mid = base(n, {PointSet::full(n), ps(n, {0})});
  CHECK(coarser_eq(mid, mid));
  CHECK(coarser_eq(indiscrete, mid));
  CHECK(coarser_eq(indiscrete, discrete));
  CHECK_FALSE(coarser_eq(discrete, indiscrete));
  CHECK(equal(discrete, discrete));
  CHECK_FALSE(equal(discrete, mid));
  CHECK(equal(discrete, base(n, {ps(n, {0}), ps(n, {1}), ps(n, {2}), ps(n, {0, 2})})));
  CHECK_THROWS_AS(coarser_eq(discrete, base(4, {PointSet::full(4)})), GroundMismatch);

  SUBCASE("preorder on random bases") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = 1 + trial % 5;
      const TopologyBase a = random_base(m, rng);
      const TopologyBase b = random_base(m, rng);
      const TopologyBase c = random_base(m, rng);
      CHECK(coarser_eq(a, a));
      if (coarser_eq(a, b) && coarser_eq(b, c)) CHECK(coarser_eq(a, c));
      const oracle::Family oa = oracle::union_closure(oracle::to_family(a));
      const oracle::Family ob = oracle::union_closure(oracle::to_family(b));
      CHECK(coarser_eq(a, b) == std::includes(ob.begin(), ob.end(), oa.begin(), oa.end()));
    }
  }
}

TEST_CASE("generate_full") {
  const std::size_t n = 3;
  auto text = [](const std::vector<PointSet>& opens) {
    std::string out;
    for (const auto& s : opens) out += to_string(s);
    return out;
  };
  CHECK(text(generate_full(base(n, {PointSet::full(n), ps(n, {0}), ps(n, {0, 1})}))) == "{}{0}{0,1}{0,1,2}");
  CHECK(text(generate_full(base(n, {PointSet::full(n)}))) == "{}{0,1,2}");
  CHECK(generate_full(base(n, {ps(n, {0}), ps(n, {1}), ps(n, {2})})).size() == 8);
  CHECK_THROWS_AS(generate_full(base(17, {PointSet::full(17)})), CapExceeded);
  CHECK(generate_full(base(17, {PointSet::full(17)}), 17).size() == 2);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 7;
    const oracle::Family f = oracle::random_family(m, rng);
    CHECK(oracle::to_family(generate_full(oracle::to_base(m, f))) == oracle::union_closure(f));
  }
}

TEST_CASE("subspace_trace") {
  const std::size_t n = 3;
  const TopologyBase b = base(n, {PointSet::full(n), ps(n, {0, 1}), ps(n, {1})});
  const TopologyBase t = subspace_trace(b, ps(n, {1, 2}));
  CHECK(t.ground_size == 2);
  CHECK(to_string(t) == "{0} {0,1}");
  CHECK(subspace_trace(b, PointSet::full(n)).family == b.family);
  const TopologyBase empty = subspace_trace(b, PointSet(n));
  CHECK(empty.ground_size == 0);
  CHECK(empty.family.size() == 1);
  CHECK(empty.family.front().empty());
}

TEST_CASE("intersection_base") {
  const std::size_t n = 3;
  const TopologyBase b2 = base(n, {PointSet::full(n), ps(n, {0, 1}), ps(n, {2})});
  CHECK(intersection_base(base(n, {PointSet::full(n)}), b2).family == b2.family);
  CHECK(equal(intersection_base(b2, b2), b2));
  CHECK_THROWS_AS(intersection_base(b2, base(2, {PointSet::full(2)})), GroundMismatch);

  SUBCASE("generated topology is the union closure of pairwise open intersections") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t m = 1 + trial % 6;
      const TopologyBase a = random_base(m, rng);
      const TopologyBase b = random_base(m, rng);
      const oracle::Family oa = oracle::union_closure(oracle::to_family(a));
      const oracle::Family ob = oracle::union_closure(oracle::to_family(b));
      oracle::Family products;
      for (auto u : oa) {
        for (auto v : ob) products.insert(u & v);
      }
      CHECK(oracle::to_family(generate_full(intersection_base(a, b))) == oracle::union_closure(products));
    }
  }
}

TEST_CASE("cone_topology_subbase") {
  CHECK(to_string(cone_topology_subbase(RelationMatrix(3))) == "{0} {1} {2}");
  CHECK(to_string(cone_topology_subbase(chain(3))) == "{0,1,2}");
  CHECK(to_string(cone_topology_subbase(RelationMatrix(1))) == "{0}");
}

TEST_CASE("interval topology of a finite chain is discrete") {
  for (std::size_t n = 1; n <= 10; ++n) {
    const TopologyBase t = minimal_base(interval_subbase(chain(n)));
    CHECK(t.family.size() == n);
    for (const auto& s : t.family) CHECK(s.count() == 1);
    CHECK(generate_full(base_from_subbase(interval_subbase(chain(n)))).size() == (std::size_t{1} << n));
  }
}
