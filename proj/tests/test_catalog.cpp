#include <doctest.h>

#include <set>

#include "parakit/catalog.hpp"

using namespace parakit;

TEST_CASE("catalog: monoids up to isomorphism") {
  CHECK(monoids_up_to_iso(1).size() == 1);
  CHECK(monoids_up_to_iso(2).size() == 3);
  CHECK(monoids_up_to_iso(3).size() == 10);
  for (const Monoid& m : monoids_up_to_iso(3)) {
    CHECK(m.unit() == 0);
    for (Elem a = 0; a < m.size(); ++a)
      for (Elem b = 0; b < m.size(); ++b)
        for (Elem c = 0; c < m.size(); ++c) CHECK(m.mult(m.mult(a, b), c) == m.mult(a, m.mult(b, c)));
  }
}

TEST_CASE("catalog: entry counts and names") {
  CHECK(induced_catalog().size() == 66);
  CHECK(category_catalog().size() == 24);
  const auto all = catalog();
  CHECK(all.size() == 91);
  std::set<std::string> names;
  for (const CatalogEntry& e : all) names.insert(e.name);
  CHECK(names.size() == all.size());
  CHECK(names.count("N") == 1);
  CHECK(table_n()->entries().size() == 5);
}

TEST_CASE("catalog: random tables") {
  const auto r = random_tables(200, kDefaultSeed);
  CHECK(r.size() == 200);
  for (const CatalogEntry& e : r) {
    CHECK(e.kind == CatalogEntry::Kind::Table);
    CHECK(e.algebra->effective_bound() == 4);
  }
}
