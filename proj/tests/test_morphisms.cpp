#include <doctest.h>

#include <memory>

#include "parakit/catalog.hpp"
#include "parakit/envelope.hpp"
#include "parakit/errors.hpp"
#include "parakit/morphisms.hpp"

using namespace parakit;

namespace {
constexpr Elem B = 2;

std::shared_ptr<InducedAlgebra> induced(std::size_t n, std::vector<Elem> p) {
  return std::make_shared<InducedAlgebra>(Monoid::cyclic(n), Subset::of(FinSet(n), p));
}

TotalMap carrier_map(const AlgebraPtr& a, const AlgebraPtr& b, std::vector<Elem> images) {
  return TotalMap(a->carrier(), b->carrier(), std::move(images));
}

std::vector<CatalogEntry> small_induced() {
  std::vector<CatalogEntry> out;
  for (CatalogEntry& e : induced_catalog())
    if (e.monoid->size() <= 2 || e.subset->count() <= 2) out.push_back(std::move(e));
  return out;
}
}  // namespace

TEST_CASE("morphisms: identities and broken maps") {
  const auto u = induced(3, {0, 1});
  const AlgMorphism id = AlgMorphism::identity(u);
  CHECK(check_morphism(id, 5));
  CHECK(is_kleene(id, 5));

  const auto full = induced(3, {0, 1, 2});
  const AlgMorphism constant(u, full, carrier_map(u, full, {1, 1}));
  const Verdict v = check_morphism(constant, 4);
  REQUIRE_FALSE(v.holds);
  CHECK(std::get<Word>(*v.witness) == Word());
  CHECK_THROWS_AS(is_kleene(constant, 4), InputError);

  const AlgMorphism doubling(u, full, carrier_map(u, full, {0, 2}));
  CHECK(check_morphism(doubling, 5));
  // [1,1] is undefined in U(Z3,{0,1}); its image [2,2] = 1 is defined, but 1
  // is not in the image of the carrier map, so nothing is reflected.
  CHECK(is_kleene(doubling, 5));

  const AlgMorphism inclusion(u, full, carrier_map(u, full, {0, 1}));
  CHECK(check_morphism(inclusion, 5));
  const Verdict k = is_kleene(inclusion, 5);
  CHECK(k.holds);
}

TEST_CASE("morphisms: mismatched carriers are rejected") {
  const auto u = induced(3, {0, 1});
  const auto full = induced(3, {0, 1, 2});
  CHECK_THROWS_AS(AlgMorphism(u, full, TotalMap(full->carrier(), u->carrier(), {0, 0, 0})), InputError);
}

TEST_CASE("morphisms: the unit of N is not Kleene") {
  const auto n = table_n();
  const auto env = std::make_shared<Envelope>(*n, 6);
  const AlgMorphism unit(n, env, unit_map(*env).assignment);
  CHECK(check_morphism(unit, 4));
  const Verdict k = is_kleene(unit, 4);
  REQUIRE_FALSE(k.holds);
  CHECK(std::get<Word>(*k.witness) == Word({B, B}));

  const auto v = check_factorisation_saturation(n, 4, 6);
  CHECK_FALSE(v.inconclusive);
  CHECK_FALSE(v.kleene_unit.holds);
  CHECK(v.agree());
}

TEST_CASE("morphisms: lifting along a subset") {
  const auto full = induced(3, {0, 1, 2});
  const auto lift = cartesian_lift(Subset::of(FinSet(3), {0, 1}), full, 5);
  const auto direct = induced(3, {0, 1});
  for (const Word& w : enumerate_words(2, 5)) CHECK(lift.algebra->evaluate(w) == direct->evaluate(w));
  CHECK(is_kleene(lift.inclusion, 5));

  for (const CatalogEntry& e : induced_catalog()) {
    const std::size_t n = e.algebra->carrier().size();
    if (n == 0 || !check_saturation(*e.algebra, 4)) continue;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Elem> members;
      for (Elem x = 0; x < n; ++x)
        if (mask >> x & 1) members.push_back(x);
      INFO(e.name << " along " << mask);
      const auto l = cartesian_lift(Subset::of(e.algebra->carrier(), members), e.algebra, 4);
      CHECK(check_saturation(*l.algebra, 4));
      CHECK(check_laxity(*l.algebra, 4));
      CHECK(check_morphism(l.inclusion, 4));
      CHECK(is_kleene(l.inclusion, 4));
    }
  }
}

TEST_CASE("morphisms: composition") {
  const auto entries = small_induced();
  std::size_t checked = 0;
  for (const auto& a : entries)
    for (const auto& b : entries) {
      const auto ab = all_morphisms(a.algebra, b.algebra, 3);
      if (ab.empty()) continue;
      for (const auto& c : entries) {
        const auto bc = all_morphisms(b.algebra, c.algebra, 3);
        for (const AlgMorphism& f : ab)
          for (const AlgMorphism& g : bc) {
            const AlgMorphism gf = compose(g, f);
            CHECK(gf.verified_bound == 3);
            CHECK(check_morphism(gf, 3));
            if (f.injective() && g.injective() && is_kleene(f, 3) && is_kleene(g, 3)) CHECK(is_kleene(gf, 3));
            ++checked;
          }
        if (checked > 20000) return;
      }
    }
}

TEST_CASE("morphisms: factorisations") {
  const auto entries = small_induced();
  for (const auto& a : entries)
    for (const auto& b : entries)
      for (const AlgMorphism& f : all_morphisms(a.algebra, b.algebra, 4)) {
        INFO(a.name << " -> " << b.name);
        const Factorisation fac = factor(f, 4);
        CHECK(fac.composite_matches);
        CHECK(fac.epi_is_morphism);
        CHECK(fac.kleene_is_kleene);
        CHECK(fac.epi.map.surjective());
        CHECK(fac.kleene.injective());
        if (f.injective() && is_kleene(f, 4)) CHECK(fac.epi.map.injective());
      }
}

TEST_CASE("morphisms: a unique fill-in") {
  // e: U(Z3,{0,1}) -> U(Z3,{0,1}) the identity, m the inclusion into the
  // full Z3: the square u = id, v = m has exactly the fill-in id.
  const auto u = induced(3, {0, 1});
  const auto full = induced(3, {0, 1, 2});
  const AlgMorphism id = AlgMorphism::identity(u);
  const AlgMorphism m(u, full, carrier_map(u, full, {0, 1}));
  const auto fills = diagonal_fill_ins(id, m, id, m, 4);
  REQUIRE(fills.size() == 1);
  CHECK(fills[0] == TotalMap::identity(u->carrier()));
}

TEST_CASE("morphisms: Kleene inclusions pull back") {
  // Pull the inclusion of a lift back along g: the preimage lift of the
  // source is again Kleene over it, and g restricts to a morphism.
  const auto entries = small_induced();
  for (const auto& c : entries)
    for (const auto& b : entries)
      for (const AlgMorphism& g : all_morphisms(c.algebra, b.algebra, 3)) {
        const std::size_t nb = b.algebra->carrier().size();
        for (std::uint32_t mask = 1; mask < (1u << nb); ++mask) {
          std::vector<Elem> sub, pre;
          for (Elem x = 0; x < nb; ++x)
            if (mask >> x & 1) sub.push_back(x);
          for (Elem x = 0; x < c.algebra->carrier().size(); ++x)
            if (mask >> g.map(x) & 1) pre.push_back(x);
          if (pre.empty()) continue;
          const auto lb = cartesian_lift(Subset::of(b.algebra->carrier(), sub), b.algebra, 3);
          const auto lc = cartesian_lift(Subset::of(c.algebra->carrier(), pre), c.algebra, 3);
          CHECK(is_kleene(lc.inclusion, 3));
          std::vector<Elem> restricted;
          for (Elem x : pre) restricted.push_back(*lb.algebra->subset().rank(g.map(x)));
          const AlgMorphism h(lc.algebra, lb.algebra, carrier_map(lc.algebra, lb.algebra, restricted));
          CHECK(check_morphism(h, 3));
        }
      }
}

TEST_CASE("morphisms: saturation and the Kleene unit") {
  for (const CatalogEntry& e : catalog()) {
    if (!e.algebra->graph().is_bouquet()) continue;
    INFO(e.name);
    const auto v = check_factorisation_saturation(e.algebra, 4, 6);
    if (!v.inconclusive) CHECK(v.agree());
  }
}
