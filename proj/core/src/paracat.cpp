#include "parakit/paracat.hpp"

#include <algorithm>

#include "parakit/errors.hpp"

namespace parakit {

FiniteCategory::FiniteCategory(Graph graph, TotalMap identities, Table table)
    : graph_(std::move(graph)), identities_(std::move(identities)), comp_(std::move(table)) {
  const std::size_t n = graph_.edges().size();
  if (!(identities_.src() == graph_.nodes()) || !(identities_.dst() == graph_.edges()))
    throw InputError("category: identities must map nodes to arrows");
  if (comp_.size() != n) throw InputError("category: composition table has the wrong size");
  for (Node u = 0; u < graph_.nodes().size(); ++u)
    if (graph_.dom(identity(u)) != u || graph_.cod(identity(u)) != u)
      throw InputError("category: identity at " + graph_.nodes().label(u) + " is not a loop there");
  for (Elem f = 0; f < n; ++f) {
    if (comp_[f].size() != n) throw InputError("category: composition table has the wrong size");
    for (Elem g = 0; g < n; ++g) {
      const bool composable = graph_.cod(f) == graph_.dom(g);
      if (composable != comp_[f][g].has_value())
        throw InputError("category: composite of " + graph_.edges().label(f) + " and " + graph_.edges().label(g) +
                         (composable ? " missing" : " given for a non-composable pair"));
      if (!composable) continue;
      const Elem h = *comp_[f][g];
      if (h >= n || graph_.dom(h) != graph_.dom(f) || graph_.cod(h) != graph_.cod(g))
        throw InputError("category: composite of " + graph_.edges().label(f) + " and " + graph_.edges().label(g) +
                         " has the wrong endpoints");
    }
  }
  for (Elem f = 0; f < n; ++f) {
    if (comp(identity(graph_.dom(f)), f) != f || comp(f, identity(graph_.cod(f))) != f)
      throw InputError("category: identity law fails at " + graph_.edges().label(f));
    for (Elem g = 0; g < n; ++g) {
      if (graph_.cod(f) != graph_.dom(g)) continue;
      for (Elem h = 0; h < n; ++h)
        if (graph_.cod(g) == graph_.dom(h) && comp(comp(f, g), h) != comp(f, comp(g, h)))
          throw InputError("category: associativity fails");
    }
  }
}

Elem FiniteCategory::comp(Elem f, Elem g) const {
  const auto& h = comp_.at(f).at(g);
  if (!h) throw InputError("category: arrows are not composable");
  return *h;
}

Elem FiniteCategory::fold(const Word& path) const {
  require_path(graph_, path);
  Elem acc = identity(path.base);
  for (Elem e : path.letters) acc = comp(acc, e);
  return acc;
}

FiniteCategory FiniteCategory::from_monoid(const Monoid& m) {
  const FinSet one(std::vector<std::string>{"*"});
  std::vector<Elem> zeros(m.size(), 0);
  Graph g(one, m.carrier(), TotalMap(m.carrier(), one, zeros), TotalMap(m.carrier(), one, zeros));
  Table t(m.size(), std::vector<std::optional<Elem>>(m.size()));
  for (Elem a = 0; a < m.size(); ++a)
    for (Elem b = 0; b < m.size(); ++b) t[a][b] = m.mult(a, b);
  return FiniteCategory(std::move(g), TotalMap(one, m.carrier(), {m.unit()}), std::move(t));
}

namespace {
Graph restrict_edges(const Graph& g, const TotalMap& incl) {
  std::vector<Elem> dom, cod;
  for (Elem e : incl.table()) {
    dom.push_back(g.dom(e));
    cod.push_back(g.cod(e));
  }
  return Graph(g.nodes(), incl.src(), TotalMap(incl.src(), g.nodes(), std::move(dom)),
               TotalMap(incl.src(), g.nodes(), std::move(cod)));
}
}  // namespace

CategoryPathAlgebra::CategoryPathAlgebra(FiniteCategory category, Subset subset)
    : category_(std::move(category)), subset_(std::move(subset)), inclusion_(subset_.inclusion()),
      graph_(restrict_edges(category_.graph(), inclusion_)) {
  if (!(subset_.ambient() == category_.graph().edges())) throw InputError("from_category: subset of the wrong set");
  for (Node u = 0; u < category_.graph().nodes().size(); ++u)
    if (!subset_.contains(category_.identity(u)))
      throw InputError("from_category: identity at " + category_.graph().nodes().label(u) + " is not in the subset");
}

std::optional<Elem> CategoryPathAlgebra::evaluate(const Word& w) const {
  require_path(graph_, w);
  const Elem c = category_.fold(map_word(TotalMap::identity(graph_.nodes()), inclusion_, w));
  if (!subset_.contains(c)) return std::nullopt;
  return subset_.rank(c);
}

Paracategory::Paracategory(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw InputError("paracategory: null algebra");
}

std::optional<Elem> Paracategory::identity(Node u) const { return algebra_->evaluate(Word({}, u)); }

Paracategory from_category(const FiniteCategory& c, const Subset& p) {
  return Paracategory(std::make_shared<const CategoryPathAlgebra>(c, p));
}

ParaFunctor::ParaFunctor(Paracategory s, Paracategory t, TotalMap n, TotalMap e)
    : source(std::move(s)), target(std::move(t)), f0(std::move(n)), f1(std::move(e)) {
  (void)to_morphism();  // validates the graph morphism
}

AlgMorphism ParaFunctor::to_morphism() const { return AlgMorphism(source.algebra(), target.algebra(), f0, f1); }

Verdict check_freyd_axioms(const Paracategory& p, std::size_t bound) { return check_freyd_axioms(*p.algebra(), bound); }

Verdict check_parafunctor(const ParaFunctor& f, std::size_t bound) { return check_morphism(f.to_morphism(), bound); }

Verdict is_kleene_functor(const ParaFunctor& f, std::size_t bound) {
  if (!f.f0.injective() || !f.f1.injective()) throw InputError("is_kleene_functor: maps must be injective");
  const PartialAlgebra& s = *f.source.algebra();
  const PartialAlgebra& t = *f.target.algebra();
  const Graph& g = s.graph();
  for (const Word& x : enumerate_words(g, bound)) {
    const auto image = t.evaluate(map_word(f.f0, f.f1, x));
    if (!image) continue;
    const Node from = x.base;
    const Node to = end_node(g, x);
    for (Elem y = 0; y < g.edges().size(); ++y) {
      if (g.dom(y) != from || g.cod(y) != to || f.f1(y) != *image) continue;
      if (s.evaluate(x) != std::optional<Elem>(y))
        return Verdict::fail(bound, x, "image composite is f1(" + g.edges().label(y) + ") but the path does not compose to it");
    }
  }
  return Verdict::pass(bound);
}

// ---------------------------------------------------- enveloping category

EnvelopingCategory enveloping_category(const Paracategory& p, std::size_t work_len, std::size_t query_len) {
  if (query_len > work_len) throw InputError("query_len must not exceed work_len");
  const PartialAlgebra& a = *p.algebra();
  const Graph& g = a.graph();
  EnvelopingCategory out;
  out.envelope = std::make_shared<const Envelope>(a, work_len);
  const Envelope& env = *out.envelope;
  for (Node u = 0; u < g.nodes().size(); ++u) out.identities.push_back(static_cast<Elem>(env.class_of(Word({}, u))));
  out.distinguished = env.distinguished();

  const std::size_t nn = g.nodes().size();
  const auto unit = unit_map(env);
  std::vector<std::vector<Elem>> singles(env.num_classes());
  for (Elem b = 0; b < g.edges().size(); ++b) singles[unit.assignment(b)].push_back(b);
  for (Node u = 0; u < nn; ++u)
    for (Node v = 0; v < nn; ++v) out.homs.push_back({u, v, Verdict::pass(query_len), Verdict::pass(query_len)});
  auto hom = [&](Node u, Node v) -> HomCheck& { return out.homs[u * nn + v]; };

  for (const Word& w : enumerate_words(g, query_len)) {
    HomCheck& h = hom(w.base, end_node(g, w));
    if (!h.recovery) continue;
    const auto value = a.evaluate(w);
    const auto& bs = singles[env.class_of(w)];
    if (value ? !(bs.size() == 1 && bs[0] == *value) : !bs.empty())
      h.recovery = Verdict::fail(query_len, w, value ? "identified with another arrow" : "undefined path identified with an arrow");
  }

  const std::size_t sat_bound = std::min(query_len, a.effective_bound());
  for_each_nesting(g, sat_bound, [&](const Nesting& n) {
    Word results({}, n.base);
    for (const Word& piece : n.inner) {
      auto v = a.evaluate(piece);
      if (!v) return true;
      results.letters.push_back(*v);
    }
    const Word flat = mu(n);
    HomCheck& h = hom(n.base, end_node(g, flat));
    if (h.saturation && a.defined(flat) && !a.defined(results))
      h.saturation = Verdict::fail(sat_bound, n, "word of inner results undefined");
    return true;
  }, [sat_bound](std::size_t len) { return std::min(default_piece_bound(len), sat_bound); });
  return out;
}

}  // namespace parakit
