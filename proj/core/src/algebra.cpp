#include "parakit/algebra.hpp"

#include <algorithm>
#include <unordered_map>

#include "parakit/errors.hpp"

namespace parakit {

// ---------------------------------------------------------------- Monoid

Monoid::Monoid(FinSet carrier, Elem unit, std::vector<std::vector<Elem>> mult)
    : carrier_(std::move(carrier)), unit_(unit), mult_(std::move(mult)) {
  const auto n = carrier_.size();
  if (n == 0) throw InputError("Monoid: empty carrier");
  if (unit_ >= n) throw InputError("Monoid: unit out of range");
  if (mult_.size() != n) throw InputError("Monoid: table has wrong number of rows");
  for (const auto& row : mult_) {
    if (row.size() != n) throw InputError("Monoid: table row has wrong length");
    for (Elem v : row)
      if (v >= n) throw InputError("Monoid: table entry out of range");
  }
  for (Elem a = 0; a < n; ++a)
    if (mult_[unit_][a] != a || mult_[a][unit_] != a) throw InputError("Monoid: unit law fails");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]]) throw InputError("Monoid: not associative");
}

Monoid Monoid::cyclic(std::size_t n) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Elem>((a + b) % n);
  return Monoid(FinSet(n), 0, std::move(t));
}

Monoid Monoid::trivial() { return cyclic(1); }

Elem Monoid::fold(const std::vector<Elem>& letters) const {
  Elem acc = unit_;
  for (Elem a : letters) acc = mult_[acc][a];
  return acc;
}

// ---------------------------------------------------------- TableAlgebra

namespace {
std::size_t max_key_length(const TableAlgebra::Entries& entries) {
  std::size_t m = 1;
  for (const auto& [w, v] : entries) m = std::max(m, w.size());
  return m;
}
}  // namespace

TableAlgebra::TableAlgebra(Graph graph, Entries entries, std::optional<std::size_t> declared_bound)
    : graph_(std::move(graph)), entries_(std::move(entries)),
      declared_bound_(declared_bound.value_or(max_key_length(entries_))) {
  for (const auto& [w, v] : entries_) {
    require_path(graph_, w);
    if (w.size() > declared_bound_) throw InputError("TableAlgebra: key longer than declared bound: " + to_string(w));
    if (v >= graph_.edges().size()) throw InputError("TableAlgebra: value out of range");
    if (graph_.dom(v) != w.base || graph_.cod(v) != end_node(graph_, w))
      throw InputError("TableAlgebra: value has wrong endpoints for " + to_string(w));
  }
  for (Elem e = 0; e < graph_.edges().size(); ++e)
    if (!entries_.count(eta(graph_, e)))
      throw InputError("TableAlgebra: missing singleton entry for " + graph_.edges().label(e));
}

TableAlgebra::TableAlgebra(FinSet carrier, Entries entries, std::optional<std::size_t> declared_bound)
    : TableAlgebra(Graph::bouquet(carrier), std::move(entries), declared_bound) {}

std::optional<Elem> TableAlgebra::evaluate(const Word& w) const {
  require_path(graph_, w);
  auto it = entries_.find(w);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

// -------------------------------------------------------- InducedAlgebra

InducedAlgebra::InducedAlgebra(Monoid monoid, Subset subset)
    : monoid_(std::move(monoid)), subset_(std::move(subset)), members_(subset_.members()),
      graph_(Graph::bouquet(subset_.inclusion().src())) {
  if (!(subset_.ambient() == monoid_.carrier())) throw InputError("InducedAlgebra: subset of the wrong set");
}

std::optional<Elem> InducedAlgebra::evaluate(const Word& w) const {
  require_path(graph_, w);
  Elem acc = monoid_.unit();
  for (Elem a : w.letters) acc = monoid_.mult(acc, members_[a]);
  return subset_.rank(acc);
}

TableAlgebra tabulate(const PartialAlgebra& a, std::size_t bound) {
  TableAlgebra::Entries entries;
  for (const Word& w : enumerate_words(a.graph(), bound))
    if (auto v = a.evaluate(w)) entries.emplace(w, *v);
  return TableAlgebra(a.graph(), std::move(entries), std::max<std::size_t>(bound, 1));
}

std::string to_string(const Witness& w, const FinSet& alphabet) {
  return std::visit([&](const auto& x) { return to_string(x, alphabet); }, w);
}

// -------------------------------------------------------------- checkers

namespace {

void require_bound(const PartialAlgebra& a, std::size_t bound) {
  if (bound > a.effective_bound())
    throw InputError("bound " + std::to_string(bound) + " exceeds the algebra's declared bound " +
                     std::to_string(a.effective_bound()));
}

struct DefinedWord {
  Word word;
  Elem value;
  Node end;
};

// Defined words of length <= bound, grouped by base node.
std::vector<std::vector<DefinedWord>> defined_words(const PartialAlgebra& a, std::size_t bound) {
  const Graph& g = a.graph();
  std::vector<std::vector<DefinedWord>> out(g.nodes().size());
  for (const Word& w : enumerate_words(g, bound))
    if (auto v = a.evaluate(w)) out[w.base].push_back({w, *v, end_node(g, w)});
  return out;
}

// Depth-first search over nestings whose pieces are all defined, flattening
// length <= bound and piece count <= default_piece_bound(flat length). The
// visitor sees the piece list and the nesting base.
template <typename Visit>
void search_defined_nestings(const PartialAlgebra& a, std::size_t bound, Visit&& visit) {
  const auto defined = defined_words(a, bound);
  // The word of results is a word too, so it must also fit in the bound.
  const std::size_t max_pieces = std::min(default_piece_bound(bound), bound);
  std::vector<const DefinedWord*> pieces;
  auto rec = [&](auto&& self, Node base, Node at, std::size_t len) -> void {
    if (pieces.size() <= default_piece_bound(len)) visit(base, pieces, len);
    if (pieces.size() + 1 > max_pieces) return;
    for (const DefinedWord& d : defined[at]) {
      if (len + d.word.size() > bound) break;  // grouped lists are length-sorted
      pieces.push_back(&d);
      self(self, base, d.end, len + d.word.size());
      pieces.pop_back();
    }
  };
  for (Node u = 0; u < a.graph().nodes().size(); ++u) rec(rec, u, u, 0);
}

Nesting make_nesting(Node base, const std::vector<const DefinedWord*>& pieces) {
  Nesting n{base, {}};
  n.inner.reserve(pieces.size());
  for (const auto* p : pieces) n.inner.push_back(p->word);
  return n;
}

Word outer_word(Node base, const std::vector<const DefinedWord*>& pieces) {
  Word w({}, base);
  w.letters.reserve(pieces.size());
  for (const auto* p : pieces) w.letters.push_back(p->value);
  return w;
}

Word flatten(Node base, const std::vector<const DefinedWord*>& pieces, std::size_t len) {
  Word w({}, base);
  w.letters.reserve(len);
  for (const auto* p : pieces) w.letters.insert(w.letters.end(), p->word.letters.begin(), p->word.letters.end());
  return w;
}

enum class Direction { Laxity, Saturation };

Verdict lax_or_saturation(const PartialAlgebra& a, std::size_t bound, Direction dir) {
  require_bound(a, bound);
  std::optional<Nesting> witness;
  std::string detail;
  search_defined_nestings(a, bound, [&](Node base, const auto& pieces, std::size_t len) {
    auto outer = a.evaluate(outer_word(base, pieces));
    if (dir == Direction::Laxity && !outer) return;
    auto flat = a.evaluate(flatten(base, pieces, len));
    bool bad = false;
    if (dir == Direction::Laxity) {
      bad = !flat || *flat != *outer;
    } else {
      bad = flat && !outer;
    }
    if (bad) {
      Nesting n = make_nesting(base, pieces);
      if (!witness || nesting_less(n, *witness)) {
        witness = std::move(n);
        detail = dir == Direction::Laxity ? (flat ? "flattened value differs" : "flattened word undefined")
                                          : "word of inner results undefined";
      }
    }
  });
  if (witness) return Verdict::fail(bound, *witness, detail);
  return Verdict::pass(bound);
}

}  // namespace

Verdict check_unit(const PartialAlgebra& a) {
  const Graph& g = a.graph();
  for (Elem e = 0; e < g.edges().size(); ++e) {
    Word w = eta(g, e);
    auto v = a.evaluate(w);
    if (!v) return Verdict::fail(1, w, "singleton undefined");
    if (*v != e) return Verdict::fail(1, w, "singleton evaluates to " + g.edges().label(*v));
  }
  return Verdict::pass(1);
}

Verdict check_laxity(const PartialAlgebra& a, std::size_t bound) {
  return lax_or_saturation(a, bound, Direction::Laxity);
}

Verdict check_saturation(const PartialAlgebra& a, std::size_t bound) {
  return lax_or_saturation(a, bound, Direction::Saturation);
}

Verdict check_descent_formulation(const PartialAlgebra& a, std::size_t bound) {
  require_bound(a, bound);
  // TD: nestings with every piece in D. Over TD the two projections are
  // d(W) = Tx(W) (word of results) and c(W) = mu(W) (flattening). The
  // comparison d*D -> c*D is always mono; it is an iso iff c*D is contained
  // in d*D.
  std::unordered_map<Word, std::optional<Elem>, WordHash> memo;
  auto eval = [&](const Word& w) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    return memo.emplace(w, a.evaluate(w)).first->second;
  };
  std::optional<Nesting> witness;
  for_each_nesting(a.graph(), bound, [&](const Nesting& n) {
    Word results({}, n.base);
    for (const Word& piece : n.inner) {
      auto v = eval(piece);
      if (!v) return true;  // not in TD
      results.letters.push_back(*v);
    }
    const bool in_c = eval(mu(n)).has_value();
    const bool in_d = eval(results).has_value();
    if (in_c && !in_d) {
      witness = n;  // canonical order: the first one is the minimum
      return false;
    }
    return true;
  }, [bound](std::size_t n) { return std::min(default_piece_bound(n), bound); });
  if (witness) return Verdict::fail(bound, *witness, "descent comparison not surjective");
  return Verdict::pass(bound);
}

Verdict check_freyd_axioms(const PartialAlgebra& a, std::size_t bound) {
  const Graph& g = a.graph();
  // Axiom 1: the 0-ary operation is total and yields loops.
  for (Node u = 0; u < g.nodes().size(); ++u) {
    Word e({}, u);
    auto v = a.evaluate(e);
    if (!v) return Verdict::fail(bound, e, "empty word undefined");
    if (g.dom(*v) != u || g.cod(*v) != u) return Verdict::fail(bound, e, "identity is not a loop");
  }
  // Axiom 2.
  for (Elem x = 0; x < g.edges().size(); ++x) {
    Word w = eta(g, x);
    if (a.evaluate(w) != std::optional<Elem>(x)) return Verdict::fail(bound, w, "unary operation is not the identity");
  }
  // Axiom 3: for w = p.y.s with [y] defined, [p [y] s] and [w] are Kleene-equal.
  for (const Word& w : enumerate_words(g, bound)) {
    const auto whole = a.evaluate(w);
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Node at = i == 0 ? w.base : g.cod(w.letters[i - 1]);
      for (std::size_t j = i; j <= w.size(); ++j) {
        Word y(std::vector<Elem>(w.letters.begin() + i, w.letters.begin() + j), at);
        auto vy = a.evaluate(y);
        if (!vy) continue;
        Word spliced({}, w.base);
        spliced.letters.assign(w.letters.begin(), w.letters.begin() + i);
        spliced.letters.push_back(*vy);
        spliced.letters.insert(spliced.letters.end(), w.letters.begin() + j, w.letters.end());
        if (spliced.size() > bound) continue;
        if (a.evaluate(spliced) != whole)
          return Verdict::fail(bound, w, "splicing " + to_string(y, g.edges()) + " breaks Kleene equality");
      }
    }
  }
  return Verdict::pass(bound);
}

ParamonoidVerdict check_paramonoid(const PartialAlgebra& a, std::size_t bound) {
  ParamonoidVerdict out;
  out.freyd_route = check_freyd_axioms(a, bound);
  out.lax_route = [&] {
    if (auto v = check_unit(a); !v) return v;
    for (Node u = 0; u < a.graph().nodes().size(); ++u) {
      Word e({}, u);
      if (!a.defined(e)) return Verdict::fail(bound, e, "empty word undefined");
    }
    if (auto v = check_laxity(a, bound); !v) return v;
    return check_saturation(a, bound);
  }();
  out.lax_route.bound = bound;
  return out;
}

Verdict derived_laws_check(const PartialAlgebra& a, std::size_t bound) {
  const Graph& g = a.graph();
  for (const Word& w : enumerate_words(g, bound > 0 ? bound - 1 : 0)) {
    const auto whole = a.evaluate(w);
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Node at = i == 0 ? w.base : g.cod(w.letters[i - 1]);
      auto unit = a.evaluate(Word({}, at));
      if (!unit) return Verdict::fail(bound, Word({}, at), "no unit at this node");
      Word padded = w;
      padded.letters.insert(padded.letters.begin() + i, *unit);
      if (a.evaluate(padded) != whole) return Verdict::fail(bound, padded, "unit insertion changes the value");
    }
  }
  // The splice law is the third elementary axiom.
  if (auto v = check_freyd_axioms(a, bound); !v) return v;
  return Verdict::pass(bound);
}

bool unit_totality_check(const PartialAlgebra& a) {
  for (Node u = 0; u < a.graph().nodes().size(); ++u)
    if (!a.defined(Word({}, u))) return false;
  return true;
}

// ------------------------------------------------------ internal category

Word InternalCategory::source(const PartialAlgebra& a, const Nesting& arrow) const {
  Word w({}, arrow.base);
  for (const Word& piece : arrow.inner) w.letters.push_back(*a.evaluate(piece));
  return w;
}

Nesting InternalCategory::identity(const Graph& g, const Word& w) {
  Nesting n{w.base, {}};
  for (Elem e : w.letters) n.inner.push_back(eta(g, e));
  return n;
}

Nesting InternalCategory::compose(const PartialAlgebra&, const Nesting& f, const Nesting& g) {
  // target(f) = mu(f) is spelled by the results of g's pieces; regroup g's
  // pieces along f's blocks.
  Nesting out{f.base, {}};
  std::size_t next = 0;
  for (const Word& block : f.inner) {
    Word piece({}, block.base);
    for (std::size_t k = 0; k < block.size(); ++k, ++next) {
      const Word& gp = g.inner.at(next);
      piece = concat(piece, gp);
    }
    out.inner.push_back(std::move(piece));
  }
  if (next != g.inner.size()) throw InternalError("internal category: arity mismatch in composition");
  return out;
}

namespace {
Nesting identity_on(const Graph& g, const Word& w) { return InternalCategory::identity(g, w); }

struct NestingKey {
  bool operator()(const Nesting& a, const Nesting& b) const {
    if (a.base != b.base) return a.base < b.base;
    if (a.inner.size() != b.inner.size()) return a.inner.size() < b.inner.size();
    for (std::size_t i = 0; i < a.inner.size(); ++i) {
      if (a.inner[i] < b.inner[i]) return true;
      if (b.inner[i] < a.inner[i]) return false;
    }
    return false;
  }
};
}  // namespace

InternalCategory build_internal_category(const PartialAlgebra& a, std::size_t bound) {
  const Graph& g = a.graph();
  InternalCategory cat;
  cat.bound = bound;
  cat.objects = enumerate_words(g, bound);

  search_defined_nestings(a, bound, [&](Node base, const auto& pieces, std::size_t) {
    if (pieces.size() <= bound) cat.arrows.push_back(make_nesting(base, pieces));
  });
  std::sort(cat.arrows.begin(), cat.arrows.end(), nesting_less);

  std::map<Nesting, std::size_t, NestingKey> index;
  std::map<Word, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < cat.arrows.size(); ++i) {
    index.emplace(cat.arrows[i], i);
    by_source[cat.source(a, cat.arrows[i])].push_back(i);
  }
  auto fail = [&](const std::string& what, const Nesting& n) {
    throw InternalError("internal category law violated (" + what + ") at " + to_string(n, g.edges()));
  };
  auto composite = [&](const Nesting& f, const Nesting& h) {
    Nesting c = InternalCategory::compose(a, f, h);
    for (const Word& piece : c.inner)
      if (!a.defined(piece)) fail("composite leaves the arrow object", c);
    return c;
  };

  // Units: d . T eta' = id = c . T eta', and identities are neutral.
  for (const Word& w : cat.objects) {
    Nesting id = identity_on(g, w);
    if (!index.count(id)) fail("identity is not an arrow", id);
    if (cat.source(a, id) != w || InternalCategory::target(id) != w) fail("identity endpoints", id);
    ++cat.identity_checks;
  }
  for (const Nesting& f : cat.arrows) {
    Word s = cat.source(a, f), t = InternalCategory::target(f);
    if (s.size() <= bound && !(composite(identity_on(g, s), f) == f)) fail("left unit", f);
    if (t.size() <= bound && !(composite(f, identity_on(g, t)) == f)) fail("right unit", f);
  }

  // Composition closes and is associative on composable triples.
  for (const Nesting& f : cat.arrows) {
    auto it = by_source.find(InternalCategory::target(f));
    if (it == by_source.end()) continue;
    for (std::size_t gi : it->second) {
      const Nesting& h = cat.arrows[gi];
      ++cat.composable_pairs;
      Nesting fh = composite(f, h);
      if (cat.source(a, fh) != cat.source(a, f) || InternalCategory::target(fh) != InternalCategory::target(h))
        fail("composite endpoints", fh);
      auto jt = by_source.find(InternalCategory::target(h));
      if (jt == by_source.end()) continue;
      for (std::size_t ki : jt->second) {
        const Nesting& k = cat.arrows[ki];
        if (!(composite(fh, k) == composite(f, composite(h, k)))) fail("associativity", f);
        ++cat.associativity_checks;
      }
    }
  }
  return cat;
}

}  // namespace parakit
