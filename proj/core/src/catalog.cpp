#include "parakit/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace parakit {

namespace {
using Table = std::vector<std::vector<Elem>>;

// Smallest relabelling of t under permutations fixing the unit 0.
Table canonical(const Table& t) {
  const std::size_t n = t.size();
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Table best;
  do {
    Table r(n, std::vector<Elem>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) r[perm[a]][perm[b]] = perm[t[a][b]];
    if (best.empty() || r < best) best = std::move(r);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

bool associative(const Table& t) {
  const std::size_t n = t.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
  return true;
}

std::string subset_name(const Subset& s) {
  std::string out = "{";
  for (Elem m : s.members()) out += (out.size() > 1 ? "," : "") + std::to_string(m);
  return out + "}";
}
}  // namespace

std::vector<Monoid> monoids_up_to_iso(std::size_t max_size) {
  std::vector<Monoid> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    // Row and column 0 are fixed by the unit; the other (n-1)^2 cells vary.
    const std::size_t cells = (n - 1) * (n - 1);
    std::set<Table> seen;
    std::vector<Elem> odo(cells, 0);
    while (true) {
      Table t(n, std::vector<Elem>(n));
      for (std::size_t a = 0; a < n; ++a) t[0][a] = t[a][0] = static_cast<Elem>(a);
      for (std::size_t i = 0; i < cells; ++i) t[1 + i / (n - 1)][1 + i % (n - 1)] = odo[i];
      if (associative(t) && seen.insert(canonical(t)).second) {}
      std::size_t k = cells;
      while (k > 0 && odo[k - 1] + 1 == n) odo[--k] = 0;
      if (k == 0) break;
      ++odo[k - 1];
    }
    for (const Table& t : seen) out.emplace_back(FinSet(n), 0, t);
  }
  return out;
}

std::vector<CatalogEntry> induced_catalog() {
  std::vector<CatalogEntry> out;
  const auto ms = monoids_up_to_iso(3);
  std::size_t index = 0;
  for (const Monoid& m : ms) {
    ++index;
    for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
      std::vector<Elem> members;
      for (Elem a = 0; a < m.size(); ++a)
        if (mask >> a & 1u) members.push_back(a);
      Subset p = Subset::of(m.carrier(), members);
      CatalogEntry e;
      e.name = "M" + std::to_string(index) + "/" + std::to_string(m.size()) + subset_name(p);
      e.kind = CatalogEntry::Kind::Induced;
      e.algebra = std::make_shared<const InducedAlgebra>(m, p);
      e.monoid = m;
      e.subset = p;
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::shared_ptr<const TableAlgebra> table_n() {
  const FinSet x(std::vector<std::string>{"e", "a", "b"});
  TableAlgebra::Entries entries{
      {Word({0}), 0},
      {Word({1}), 1},
      {Word({2}), 2},
      {Word({1, 1}), 2},
      {Word({1, 1, 1, 1}), 0},
  };
  return std::make_shared<const TableAlgebra>(x, std::move(entries), 4);
}

namespace {
FiniteCategory make_category(std::vector<std::string> nodes, std::vector<std::string> arrows, std::vector<Elem> dom,
                             std::vector<Elem> cod, std::vector<Elem> ids,
                             const std::vector<std::tuple<Elem, Elem, Elem>>& extra) {
  const FinSet ns(std::move(nodes));
  const FinSet es(std::move(arrows));
  Graph g(ns, es, TotalMap(es, ns, dom), TotalMap(es, ns, cod));
  FiniteCategory::Table t(es.size(), std::vector<std::optional<Elem>>(es.size()));
  // Identity composites are filled in; the rest come from `extra`.
  for (Elem f = 0; f < es.size(); ++f) {
    t[ids[dom[f]]][f] = f;
    t[f][ids[cod[f]]] = f;
  }
  for (auto [f, g2, h] : extra) t[f][g2] = h;
  return FiniteCategory(std::move(g), TotalMap(ns, es, std::move(ids)), std::move(t));
}
}  // namespace

FiniteCategory two_object_category() {
  // 0 idA, 1 idB, 2 x: A->B, 3 y: B->A, 4 lA = x;y, 5 lB = y;x
  return make_category({"A", "B"}, {"idA", "idB", "x", "y", "lA", "lB"}, {0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1}, {0, 1},
                       {{2, 3, 4}, {3, 2, 5}, {4, 2, 2}, {2, 5, 2}, {5, 3, 3}, {3, 4, 3}, {4, 4, 4}, {5, 5, 5}});
}

FiniteCategory chain_category() {
  // 0 idA, 1 idB, 2 idC, 3 f: A->B, 4 g: B->C, 5 h = f;g
  return make_category({"A", "B", "C"}, {"idA", "idB", "idC", "f", "g", "h"}, {0, 1, 2, 0, 1, 0}, {0, 1, 2, 1, 2, 2},
                       {0, 1, 2}, {{3, 4, 5}});
}

std::vector<CatalogEntry> category_catalog() {
  std::vector<CatalogEntry> out;
  const std::vector<std::pair<std::string, FiniteCategory>> cats{{"C2", two_object_category()},
                                                                 {"C3", chain_category()}};
  for (const auto& [name, c] : cats) {
    const FinSet& arrows = c.graph().edges();
    const std::size_t nids = c.graph().nodes().size();
    const std::size_t rest = arrows.size() - nids;  // identities come first in both
    for (std::uint32_t mask = 0; mask < (1u << rest); ++mask) {
      std::vector<Elem> members;
      for (Elem i = 0; i < nids; ++i) members.push_back(i);
      for (Elem i = 0; i < rest; ++i)
        if (mask >> i & 1u) members.push_back(static_cast<Elem>(nids + i));
      Subset p = Subset::of(arrows, members);
      std::string label = name + "{";
      for (std::size_t i = nids; i < members.size(); ++i) label += (i > nids ? "," : "") + arrows.label(members[i]);
      CatalogEntry e;
      e.name = label + "}";
      e.kind = CatalogEntry::Kind::Category;
      e.algebra = from_category(c, p).algebra();
      e.subset = p;
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<CatalogEntry> catalog() {
  auto out = induced_catalog();
  CatalogEntry n;
  n.name = "N";
  n.kind = CatalogEntry::Kind::Table;
  n.algebra = table_n();
  out.push_back(std::move(n));
  auto cats = category_catalog();
  out.insert(out.end(), std::make_move_iterator(cats.begin()), std::make_move_iterator(cats.end()));
  return out;
}

namespace {
// Whether some nontrivial nesting of w with defined pieces has a defined word
// of results; laxity then forces w itself to stay defined.
bool forced(const TableAlgebra::Entries& entries, const Word& w, std::size_t bound) {
  const std::size_t max_pieces = std::min(default_piece_bound(w.size()), bound);
  std::vector<Elem> results;
  auto rec = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == w.size() && !results.empty()) {
      if (Word(results) != w) {
        if (entries.count(Word(results))) return true;
      }
    }
    if (results.size() == max_pieces) return false;
    for (std::size_t end = pos; end <= w.size(); ++end) {
      if (pos == 0 && end == w.size()) continue;  // the piece w itself
      Word piece(std::vector<Elem>(w.letters.begin() + pos, w.letters.begin() + end));
      auto it = entries.find(piece);
      if (it == entries.end()) continue;
      results.push_back(it->second);
      const bool hit = self(self, end);
      results.pop_back();
      if (hit) return true;
    }
    return false;
  };
  return rec(rec, 0);
}
}  // namespace

std::vector<CatalogEntry> random_tables(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto ms = monoids_up_to_iso(3);
  std::vector<CatalogEntry> out;
  while (out.size() < count) {
    const Monoid& m = ms[rng() % ms.size()];
    std::vector<Elem> members;
    for (Elem a = 0; a < m.size(); ++a)
      if (rng() % 2) members.push_back(a);
    if (members.empty()) continue;
    const Subset p = Subset::of(m.carrier(), members);
    const std::size_t bound = 4;  // the query length used against them
    const std::size_t drop_percent = 10 + rng() % 50;
    auto entries = tabulate(InducedAlgebra(m, p), bound).entries();

    std::vector<Word> candidates;
    for (const auto& [w, v] : entries)
      if (w.size() >= 2) candidates.push_back(w);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (const Word& w : candidates)
      if (rng() % 100 < drop_percent) {
        auto v = entries.at(w);
        entries.erase(w);
        if (forced(entries, w, bound)) entries.emplace(w, v);
      }

    CatalogEntry e;
    e.name = "R" + std::to_string(out.size()) + "/" + std::to_string(m.size()) + subset_name(p) + "/b" +
             std::to_string(bound);
    e.kind = CatalogEntry::Kind::Table;
    e.algebra = std::make_shared<const TableAlgebra>(Graph::bouquet(p.inclusion().src()), std::move(entries), bound);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace parakit
