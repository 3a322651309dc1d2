#include "parakit/morphisms.hpp"

#include <algorithm>

#include "parakit/envelope.hpp"
#include "parakit/errors.hpp"

namespace parakit {

namespace {
void require_graph_morphism(const Graph& s, const Graph& t, const TotalMap& nodes, const TotalMap& edges) {
  if (!(nodes.src() == s.nodes()) || !(nodes.dst() == t.nodes()))
    throw InputError("morphism: node map has the wrong type");
  if (!(edges.src() == s.edges()) || !(edges.dst() == t.edges()))
    throw InputError("morphism: carrier map has the wrong type");
  for (Elem e = 0; e < s.edges().size(); ++e)
    if (t.dom(edges(e)) != nodes(s.dom(e)) || t.cod(edges(e)) != nodes(s.cod(e)))
      throw InputError("morphism: not a graph morphism at " + s.edges().label(e));
}

TotalMap trivial_node_map(const Graph& s, const Graph& t) {
  if (!s.is_bouquet() || !t.is_bouquet()) throw InputError("morphism: node map required for path algebras");
  return TotalMap::identity(s.nodes());
}
}  // namespace

AlgMorphism::AlgMorphism(AlgebraPtr s, AlgebraPtr t, TotalMap m)
    : AlgMorphism(s, t, trivial_node_map(s->graph(), t->graph()), std::move(m)) {}

AlgMorphism::AlgMorphism(AlgebraPtr s, AlgebraPtr t, TotalMap nodes, TotalMap m)
    : source(std::move(s)), target(std::move(t)), node_map(std::move(nodes)), map(std::move(m)) {
  require_graph_morphism(source->graph(), target->graph(), node_map, map);
}

AlgMorphism AlgMorphism::identity(AlgebraPtr a) {
  const Graph& g = a->graph();
  AlgMorphism f(a, a, TotalMap::identity(g.nodes()), TotalMap::identity(g.edges()));
  f.verified_bound = kUnbounded;
  return f;
}

AlgMorphism compose(const AlgMorphism& g, const AlgMorphism& f) {
  if (f.target != g.source) throw InputError("compose: morphisms are not composable");
  AlgMorphism h(f.source, g.target, compose(g.node_map, f.node_map), compose(g.map, f.map));
  h.verified_bound = std::min(f.verified_bound, g.verified_bound);
  return h;
}

Verdict check_morphism(const AlgMorphism& f, std::size_t bound) {
  const std::size_t b = std::min(bound, f.source->effective_bound());
  for (const Word& w : enumerate_words(f.source->graph(), b)) {
    auto v = f.source->evaluate(w);
    if (!v) continue;
    auto image = f.target->evaluate(f.apply(w));
    if (!image) return Verdict::fail(bound, w, "image undefined in the target");
    if (*image != f.map(*v)) return Verdict::fail(bound, w, "image has a different value");
  }
  return Verdict::pass(bound);
}

Verdict is_kleene(const AlgMorphism& f, std::size_t bound) {
  if (!f.injective()) throw InputError("is_kleene: carrier map is not injective");
  if (auto m = check_morphism(f, bound); !m) throw InputError("is_kleene: not a morphism up to bound");
  std::vector<std::optional<Elem>> preimage(f.target->carrier().size());
  for (Elem a = 0; a < f.map.src().size(); ++a) preimage[f.map(a)] = a;
  for (const Word& w : enumerate_words(f.source->graph(), bound)) {
    auto image = f.target->evaluate(f.apply(w));
    if (!image || !preimage[*image]) continue;
    auto v = f.source->evaluate(w);
    if (!v) return Verdict::fail(bound, w, "image defined over the subobject but word undefined");
    if (*v != *preimage[*image]) return Verdict::fail(bound, w, "value differs from the reflected one");
  }
  return Verdict::pass(bound);
}

// ------------------------------------------------------------- lifting

namespace {
Graph subgraph(const Graph& g, const TotalMap& incl) {
  std::vector<Elem> dom, cod;
  for (Elem e : incl.table()) {
    dom.push_back(g.dom(e));
    cod.push_back(g.cod(e));
  }
  return Graph(g.nodes(), incl.src(), TotalMap(incl.src(), g.nodes(), std::move(dom)),
               TotalMap(incl.src(), g.nodes(), std::move(cod)));
}
}  // namespace

LiftedAlgebra::LiftedAlgebra(AlgebraPtr base, Subset subset)
    : base_(std::move(base)), subset_(std::move(subset)), inclusion_(subset_.inclusion()),
      graph_(subgraph(base_->graph(), inclusion_)) {
  if (!(subset_.ambient() == base_->carrier())) throw InputError("cartesian_lift: subset of the wrong carrier");
}

std::optional<Elem> LiftedAlgebra::evaluate(const Word& w) const {
  require_path(graph_, w);
  auto v = base_->evaluate(map_word(inclusion_, w));
  if (!v) return std::nullopt;
  return subset_.rank(*v);
}

CartesianLift cartesian_lift(const Subset& m, AlgebraPtr b, std::size_t bound) {
  auto lifted = std::make_shared<const LiftedAlgebra>(b, m);
  AlgMorphism incl(lifted, b, TotalMap::identity(b->graph().nodes()), lifted->inclusion());
  incl.verified_bound = bound;
  return {std::move(lifted), std::move(incl)};
}

Factorisation factor(const AlgMorphism& f, std::size_t bound) {
  auto img = image_factorisation(f.map);
  auto lift = cartesian_lift(img.image, f.target, bound);
  AlgMorphism epi(f.source, lift.algebra, f.node_map, img.epi);
  epi.verified_bound = bound;
  Factorisation out{epi, lift.inclusion, check_morphism(epi, bound), is_kleene(lift.inclusion, bound), false};
  out.composite_matches = compose(out.kleene, out.epi).map == f.map;
  return out;
}

std::vector<TotalMap> diagonal_fill_ins(const AlgMorphism& e, const AlgMorphism& m, const AlgMorphism& u,
                                        const AlgMorphism& v, std::size_t bound) {
  std::vector<TotalMap> out;
  const AlgebraPtr b = e.target, c = m.source;
  for (const TotalMap& d : all_total_maps(b->carrier(), c->carrier())) {
    if (!(compose(d, e.map) == u.map) || !(compose(m.map, d) == v.map)) continue;
    try {
      AlgMorphism dm(b, c, d);
      if (check_morphism(dm, bound)) out.push_back(d);
    } catch (const InputError&) {
    }
  }
  return out;
}

FactorisationSaturationVerdict check_factorisation_saturation(const AlgebraPtr& a, std::size_t query_len,
                                                              std::size_t work_len) {
  FactorisationSaturationVerdict out;
  out.saturation = check_saturation(*a, std::min(query_len, a->effective_bound()));
  auto env = std::make_shared<const Envelope>(*a, work_len);
  const auto unit = unit_map(*env);
  AlgMorphism rho(a, env, TotalMap::identity(a->graph().nodes()), unit.assignment);
  for (const Word& w : enumerate_words(a->graph(), query_len)) {
    if (!env->defined(rho.apply(w))) {
      out.inconclusive = true;
      out.kleene_unit = Verdict::fail(query_len, w, "envelope product exceeds work_len");
      return out;
    }
  }
  if (!unit.injective) {
    out.kleene_unit = Verdict::fail(query_len, Word(), "unit is not injective");
    return out;
  }
  out.kleene_unit = is_kleene(rho, query_len);
  return out;
}

std::vector<AlgMorphism> all_morphisms(const AlgebraPtr& source, const AlgebraPtr& target, std::size_t bound) {
  std::vector<AlgMorphism> out;
  const Graph& s = source->graph();
  const Graph& t = target->graph();
  for (const TotalMap& nodes : all_total_maps(s.nodes(), t.nodes()))
    for (const TotalMap& edges : all_total_maps(s.edges(), t.edges())) {
      bool graph_ok = true;
      for (Elem e = 0; graph_ok && e < s.edges().size(); ++e)
        graph_ok = t.dom(edges(e)) == nodes(s.dom(e)) && t.cod(edges(e)) == nodes(s.cod(e));
      if (!graph_ok) continue;
      AlgMorphism f(source, target, nodes, edges);
      if (!check_morphism(f, bound)) continue;
      f.verified_bound = bound;
      out.push_back(std::move(f));
    }
  return out;
}

}  // namespace parakit
