#include <doctest.h>

#include <algorithm>
#include <set>

#include "parakit/errors.hpp"
#include "parakit/words.hpp"

using namespace parakit;

namespace {
Graph two_cycle() {
  // u --f--> v --g--> u
  const FinSet nodes(std::vector<std::string>{"u", "v"});
  const FinSet edges(std::vector<std::string>{"f", "g"});
  return Graph(nodes, edges, TotalMap(edges, nodes, {0, 1}), TotalMap(edges, nodes, {1, 0}));
}

// Nestings by direct recursion over (pieces left, letters left) for words of
// a fixed length n: compositions of n into k parts, empty parts allowed.
std::uint64_t compositions(std::size_t n, std::size_t k) {
  if (k == 0) return n == 0 ? 1 : 0;
  std::uint64_t total = 0;
  for (std::size_t first = 0; first <= n; ++first) total += compositions(n - first, k - 1);
  return total;
}

struct Guard {
  std::uint64_t saved = word_budget();
  ~Guard() { set_word_budget(saved); }
};
}  // namespace

TEST_CASE("words: eta and mu") {
  CHECK(eta(0) == Word({0}));
  for (Elem a = 0; a < 5; ++a) CHECK(eta(a).size() == 1);
  CHECK(mu(Nesting{0, {Word()}}) == Word());
  CHECK(mu(Nesting{0, {Word({0}), Word({1, 2})}}) == Word({0, 1, 2}));
  CHECK(mu(Nesting{}) == Word());
}

TEST_CASE("words: enumeration counts and order") {
  CHECK(enumerate_words(2, 2).size() == 7);
  CHECK(enumerate_words(3, 4).size() == 121);
  for (std::size_t x = 1; x <= 3; ++x)
    for (std::size_t len = 0; len <= 4; ++len) {
      std::size_t expect = 0, p = 1;
      for (std::size_t k = 0; k <= len; ++k, p *= x) expect += p;
      const auto words = enumerate_words(x, len);
      CHECK(words.size() == expect);
      CHECK(count_words(Graph::bouquet(FinSet(x)), len) == expect);
      CHECK(std::is_sorted(words.begin(), words.end()));
      CHECK(std::adjacent_find(words.begin(), words.end()) == words.end());
    }
  const auto w = enumerate_words(2, 2);
  CHECK(w[0] == Word());
  CHECK(w[1] == Word({0}));
  CHECK(w[3] == Word({0, 0}));
  CHECK(w[6] == Word({1, 1}));
}

TEST_CASE("words: paths on a graph") {
  const Graph g = two_cycle();
  const auto from_u = enumerate_words(g, 2, Node{0});
  CHECK(from_u.size() == 3);  // empty at u, [f], [f,g]
  const auto all = enumerate_words(g, 3);
  CHECK(all.size() == count_words(g, 3));
  for (const Word& p : all) CHECK(is_path(g, p));
  CHECK_FALSE(is_path(g, Word({0, 0})));
  CHECK_THROWS_AS(require_path(g, Word({1, 1}, 1)), InputError);
  CHECK(end_node(g, Word({0}, 0)) == 1);
  CHECK(end_node(g, Word({}, 1)) == 1);
  CHECK(to_string(Word({0, 1}), g.edges()) == "[f,g]");
}

TEST_CASE("words: nestings enumerate by an independent count") {
  for (std::size_t x = 1; x <= 2; ++x)
    for (std::size_t len = 0; len <= 4; ++len) {
      const Graph g = Graph::bouquet(FinSet(x));
      std::uint64_t expect = 0;
      for (std::size_t n = 0; n <= len; ++n) {
        std::uint64_t words = 1;
        for (std::size_t i = 0; i < n; ++i) words *= x;
        std::uint64_t shapes = n == 0 ? 1 : 0;  // the nesting with no pieces
        for (std::size_t k = 1; k <= default_piece_bound(n); ++k) shapes += compositions(n, k);
        expect += words * shapes;
      }
      const auto ns = enumerate_nestings(g, len);
      CHECK(ns.size() == expect);
      CHECK(count_nestings(g, len) == expect);
      CHECK(std::is_sorted(ns.begin(), ns.end(), nesting_less));
    }
}

TEST_CASE("words: nestings of small flattenings") {
  const Graph a = Graph::bouquet(FinSet(1));
  const auto ns = enumerate_nestings(a, 2, [](std::size_t) { return std::size_t{2}; });
  auto has = [&](std::vector<Word> inner) {
    return std::find(ns.begin(), ns.end(), Nesting{0, std::move(inner)}) != ns.end();
  };
  CHECK(has({Word({0, 0})}));
  CHECK(has({Word({0}), Word({0})}));
  CHECK(has({Word({0}), Word()}));
  CHECK(has({Word(), Word()}));
  CHECK_FALSE(has({Word(), Word(), Word()}));

  // Empty flattening: [], [[]], [[],[]] with the default bound of 2 pieces.
  const auto empty = enumerate_nestings(a, 0);
  CHECK(empty.size() == 3);
  CHECK(empty[0].inner.empty());
}

TEST_CASE("words: monad laws") {
  const Graph g = Graph::bouquet(FinSet(2));
  for (const Word& w : enumerate_words(2, 4)) {
    // mu . eta_T = id and mu . T eta = id
    CHECK(mu(Nesting{0, {w}}) == w);
    Nesting singletons{0, {}};
    for (Elem a : w.letters) singletons.inner.push_back(eta(a));
    CHECK(mu(singletons) == w);
  }
  // Associativity on depth-3 nestings: group a nesting of nestings.
  const auto ns = enumerate_nestings(g, 4, [](std::size_t) { return std::size_t{2}; });
  for (const Nesting& n : ns) {
    if (n.inner.size() != 2) continue;
    const std::vector<Nesting> outer{Nesting{0, {n.inner[0]}}, Nesting{0, {n.inner[1]}}};
    Nesting mu_t{0, {}};
    for (const Nesting& x : outer) mu_t.inner.push_back(mu(x));
    Nesting mu_out{0, {}};
    for (const Nesting& x : outer)
      for (const Word& y : x.inner) mu_out.inner.push_back(y);
    CHECK(mu(mu_t) == mu(mu_out));
  }
}

TEST_CASE("words: naturality") {
  for (std::size_t x = 1; x <= 3; ++x)
    for (std::size_t y = 1; y <= 3; ++y)
      for (const TotalMap& f : all_total_maps(FinSet(x), FinSet(y))) {
        for (Elem a = 0; a < x; ++a) CHECK(map_word(f, eta(a)) == eta(f(a)));
        CHECK(eta_is_cartesian_check(f, 3));
      }
  const Graph g = Graph::bouquet(FinSet(2));
  const TotalMap swap(FinSet(2), FinSet(2), {1, 0});
  for (const Nesting& n : enumerate_nestings(g, 3)) CHECK(map_word(swap, mu(n)) == mu(map_nesting(swap, n)));
  for (const Word& w : enumerate_words(2, 3)) CHECK(map_word(TotalMap::identity(FinSet(2)), w) == w);
}

TEST_CASE("words: graph morphisms preserve paths") {
  const Graph c = two_cycle();
  const Graph loop = Graph::bouquet(FinSet(1));
  const TotalMap nodes(c.nodes(), loop.nodes(), {0, 0});
  const TotalMap edges(c.edges(), loop.edges(), {0, 0});
  for (const Word& p : enumerate_words(c, 4)) CHECK(is_path(loop, map_word(nodes, edges, p)));
  // Swapping nodes and edges of the 2-cycle is an automorphism.
  const TotalMap sn(c.nodes(), c.nodes(), {1, 0});
  const TotalMap se(c.edges(), c.edges(), {1, 0});
  for (const Word& p : enumerate_words(c, 4)) CHECK(is_path(c, map_word(sn, se, p)));
}

TEST_CASE("words: budget") {
  Guard guard;
  set_word_budget(150);
  CHECK_NOTHROW(enumerate_words(3, 4));  // 121 words
  CHECK_THROWS_AS(enumerate_words(3, 6), BudgetError);
  CHECK_THROWS_AS(enumerate_nestings(Graph::bouquet(FinSet(2)), 4), BudgetError);
}
