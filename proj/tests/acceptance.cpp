// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "parakit/catalog.hpp"
#include "parakit/envelope.hpp"
#include "parakit/errors.hpp"
#include "parakit/morphisms.hpp"

using namespace parakit;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

Outcome fail(std::string note) { return {false, std::move(note)}; }

std::string describe(const CatalogEntry& e, const Verdict& v) {
  std::string s = e.name;
  if (v.witness) s += " witness " + to_string(*v.witness, e.algebra->carrier());
  if (!v.detail.empty()) s += " (" + v.detail + ")";
  return s;
}

std::vector<CatalogEntry> with_random(std::vector<CatalogEntry> base) {
  auto r = random_tables(200, kDefaultSeed);
  base.insert(base.end(), r.begin(), r.end());
  return base;
}

Outcome induced_saturation() {
  std::size_t n = 0;
  for (const auto& e : induced_catalog()) {
    if (auto v = check_unit(*e.algebra); !v) return fail(describe(e, v));
    if (auto v = check_laxity(*e.algebra, 6); !v) return fail(describe(e, v));
    if (auto v = check_saturation(*e.algebra, 6); !v) return fail(describe(e, v));
    ++n;
  }
  return {true, std::to_string(n) + " induced algebras"};
}

Outcome envelope_recovery() {
  std::size_t n = 0;
  for (const auto& e : induced_catalog()) {
    auto r = check_envelope_recovery(*e.algebra, 5, 7);
    if (!r.recovery) return fail(describe(e, r.recovery));
    if (!r.agree()) return fail(e.name + ": recovery and saturation disagree");
    ++n;
  }
  auto r = check_envelope_recovery(*table_n(), 5, 7);
  if (r.recovery.holds || r.saturation.holds) return fail("N: expected recovery and saturation both false");
  return {true, std::to_string(n) + " induced algebras, N rejected by both"};
}

Outcome oracle_equivalence() {
  std::size_t n = 0;
  for (const auto& e : catalog()) {
    if (Congruence::close(*e.algebra, 6).partition() != naive_closure_oracle(*e.algebra, 6))
      return fail(e.name + ": partitions differ");
    ++n;
  }
  return {true, std::to_string(n) + " algebras at work_len 6"};
}

Outcome reflection() {
  const auto n = table_n();
  const auto sat = saturate(*n, 4, 6);
  const Word bb({2, 2});
  auto it = sat.entries().find(bb);
  if (it == sat.entries().end() || it->second != 0) return fail("Sat(N) lacks [b,b] -> e");
  if (auto v = check_saturation(sat, 4); !v) return fail("Sat(N) not saturated: " + v.detail);
  std::size_t same = 0;
  for (const auto& e : induced_catalog()) {
    if (!check_saturation(*e.algebra, 4)) continue;
    if (saturate(*e.algebra, 4, 6).entries() != tabulate(*e.algebra, 4).entries())
      return fail(e.name + ": saturate changed a saturated algebra");
    ++same;
  }
  return {true, "Sat(N) ok, " + std::to_string(same) + " saturated inputs unchanged"};
}

Outcome factorisation() {
  const auto cat = induced_catalog();
  const std::size_t n = cat.size();
  std::vector<std::vector<std::vector<AlgMorphism>>> mor(n, std::vector<std::vector<AlgMorphism>>(n));
  std::vector<std::vector<std::vector<char>>> kleene_mono(n, std::vector<std::vector<char>>(n));
  std::size_t morphisms = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mor[i][j] = all_morphisms(cat[i].algebra, cat[j].algebra, 4);
      for (const auto& f : mor[i][j]) {
        ++morphisms;
        kleene_mono[i][j].push_back(f.injective() && is_kleene(f, 4).holds);
        auto fac = factor(f, 4);
        if (!fac.epi_is_morphism || !fac.kleene_is_kleene || !fac.composite_matches || !fac.epi.map.surjective())
          return fail(cat[i].name + " -> " + cat[j].name + ": bad factorisation");
      }
    }

  std::size_t squares = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& e : mor[a][b]) {
        if (!e.map.surjective()) continue;
        const FinSet& bset = cat[b].algebra->carrier();
        for (std::size_t c = 0; c < n; ++c)
          for (const auto& u : mor[a][c]) {
            // m . u = v . e with e onto forces v = m . d where d . e = u.
            std::vector<std::optional<Elem>> d(bset.size());
            bool constant_on_fibres = true;
            for (Elem x = 0; x < e.map.src().size() && constant_on_fibres; ++x) {
              auto& slot = d[e.map(x)];
              if (!slot) slot = u.map(x);
              constant_on_fibres = *slot == u.map(x);
            }
            if (!constant_on_fibres) continue;
            for (std::size_t dd = 0; dd < n; ++dd)
              for (std::size_t k = 0; k < mor[c][dd].size(); ++k) {
                if (!kleene_mono[c][dd][k]) continue;
                const auto& m = mor[c][dd][k];
                std::vector<Elem> vt;
                for (const auto& y : d) vt.push_back(m.map(*y));
                AlgMorphism v(cat[b].algebra, cat[dd].algebra, TotalMap(bset, cat[dd].algebra->carrier(), vt));
                if (!check_morphism(v, 4)) continue;
                ++squares;
                if (diagonal_fill_ins(e, m, u, v, 4).size() != 1)
                  return fail("square " + cat[a].name + " " + cat[b].name + " " + cat[c].name + " " + cat[dd].name +
                              ": fill-in not unique or missing");
              }
          }
      }
  return {true, std::to_string(morphisms) + " morphisms factored, " + std::to_string(squares) + " squares"};
}

Outcome saturation_kleene_unit() {
  std::size_t n = 0;
  for (const auto& e : with_random(catalog())) {
    auto v = check_factorisation_saturation(e.algebra, 4, 6);
    if (v.inconclusive) return fail(e.name + ": inconclusive at work_len 6");
    if (!v.agree())
      return fail(e.name + ": saturation " + (v.saturation.holds ? "holds" : "fails") + ", Kleene unit " +
                  (v.kleene_unit.holds ? "holds" : "fails"));
    ++n;
  }
  return {true, std::to_string(n) + " algebras"};
}

Outcome agreement() {
  std::size_t n = 0, paramonoids = 0;
  for (const auto& e : with_random(catalog())) {
    auto v = check_paramonoid(*e.algebra, 4);
    if (!v.agree()) return fail(e.name + ": " + describe(e, v.lax_route) + " vs " + describe(e, v.freyd_route));
    ++n;
    paramonoids += v.lax_route.holds;
  }
  return {true, std::to_string(n) + " algebras, " + std::to_string(paramonoids) + " paramonoids"};
}

Outcome derived_laws() {
  std::size_t n = 0;
  for (const auto& e : catalog()) {
    if (!check_paramonoid(*e.algebra, 5)) continue;
    if (auto v = derived_laws_check(*e.algebra, 5); !v) return fail(describe(e, v));
    ++n;
  }
  if (n == 0) return fail("no paramonoids in the catalog");
  return {true, std::to_string(n) + " paramonoids"};
}

Outcome universal_property() {
  const Monoid z3 = Monoid::cyclic(3);
  const InducedAlgebra a(z3, Subset::of(z3.carrier(), {0, 1}));
  const Monoid z2 = Monoid::cyclic(2);
  const std::vector<std::pair<Monoid, Subset>> targets{
      {z3, Subset::of(z3.carrier(), {0, 1})},
      {z3, Subset::full(z3.carrier())},
      {z2, Subset::of(z2.carrier(), {0})},
  };
  std::string counts;
  for (const auto& [m, p] : targets) {
    auto r = check_universal_property(a, m, p, 4, 6);
    if (r.status != UniversalPropertyResult::Status::Verified)
      return fail("target of size " + std::to_string(m.size()) + ": " + r.detail);
    if (r.left_count != r.right_count || !r.transpose_injective || !r.transpose_surjective)
      return fail("transposition is not a bijection");
    counts += (counts.empty() ? "" : ",") + std::to_string(r.left_count);
  }
  return {true, "hom-set sizes " + counts};
}

Outcome partial_maps() {
  std::vector<FinSet> sets;
  for (std::size_t k = 0; k <= 3; ++k) sets.emplace_back(k);
  std::vector<std::vector<std::vector<PartialMap>>> maps(4, std::vector<std::vector<PartialMap>>(4));
  for (std::size_t x = 0; x <= 3; ++x)
    for (std::size_t y = 0; y <= 3; ++y) maps[x][y] = all_partial_maps(sets[x], sets[y]);
  std::size_t checks = 0;
  for (std::size_t x = 0; x <= 3; ++x)
    for (std::size_t y = 0; y <= 3; ++y)
      for (std::size_t z = 0; z <= 3; ++z) {
        for (const auto& f : maps[x][y])
          for (const auto& g : maps[y][z]) {
            const auto gf = compose_partial(g, f);
            if (is_total(gf) && !is_total(f)) return fail("cancellation of total maps fails");
            for (std::size_t w = 0; w <= 3; ++w)
              for (const auto& h : maps[z][w]) {
                ++checks;
                if (!kleene_eq(compose_partial(h, gf), compose_partial(compose_partial(h, g), f)))
                  return fail("composition is not associative");
              }
          }
        for (const auto& f : maps[x][y])
          for (const auto& f2 : maps[x][y]) {
            if (!leq(f, f2)) continue;
            if (is_total(f) && !kleene_eq(f, f2)) return fail("a total map is not maximal");
            for (const auto& g : maps[y][z]) {
              ++checks;
              if (!leq(compose_partial(g, f), compose_partial(g, f2))) return fail("precomposition not monotone");
            }
          }
        for (const auto& g : maps[y][z])
          for (const auto& g2 : maps[y][z]) {
            if (!leq(g, g2)) continue;
            for (const auto& f : maps[x][y]) {
              ++checks;
              if (!leq(compose_partial(g, f), compose_partial(g2, f))) return fail("postcomposition not monotone");
            }
          }
      }
  return {true, std::to_string(checks) + " instances"};
}

Outcome internal_category() {
  std::size_t n = 0, arrows = 0;
  for (const auto& e : catalog()) {
    try {
      arrows += build_internal_category(*e.algebra, 3).arrows.size();
    } catch (const InternalError& err) {
      return fail(e.name + ": " + err.what());
    }
    ++n;
  }
  return {true, std::to_string(n) + " algebras, " + std::to_string(arrows) + " arrows"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "induced saturation", 30, induced_saturation},
      {2, "envelope recovery", 30, envelope_recovery},
      {3, "oracle equivalence", 60, oracle_equivalence},
      {4, "reflection", 10, reflection},
      {5, "factorisation", 60, factorisation},
      {6, "saturation iff Kleene unit", 120, saturation_kleene_unit},
      {7, "route agreement", 60, agreement},
      {8, "derived laws", 30, derived_laws},
      {9, "universal property", 30, universal_property},
      {10, "partial-map calculus", 30, partial_maps},
      {11, "internal category", 30, internal_category},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit_s) o = fail("took longer than " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    failures += !o.ok;
    std::printf("%s %2d %-28s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.note.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
