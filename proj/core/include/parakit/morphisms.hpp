#pragma once

// Morphisms of partial algebras, Kleene morphisms, cartesian liftings along
// subsets and the (epi, monic Kleene) factorisation.

#include <memory>
#include <optional>
#include <vector>

#include "parakit/algebra.hpp"

namespace parakit {

// A graph morphism between carriers. In the monoid variant the node map is
// the unique map 1 -> 1.
struct AlgMorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  TotalMap node_map;
  TotalMap map;
  std::size_t verified_bound = 0;

  AlgMorphism(AlgebraPtr source, AlgebraPtr target, TotalMap map);
  AlgMorphism(AlgebraPtr source, AlgebraPtr target, TotalMap node_map, TotalMap map);

  static AlgMorphism identity(AlgebraPtr a);
  Word apply(const Word& w) const { return map_word(node_map, map, w); }
  bool injective() const { return map.injective() && node_map.injective(); }
};

// g after f. The verified bound of the composite is the smaller one.
AlgMorphism compose(const AlgMorphism& g, const AlgMorphism& f);

// Every defined source word of length <= bound maps to a defined target word
// with the image of its value.
Verdict check_morphism(const AlgMorphism& f, std::size_t bound);

// Definedness over the image reflects back: if the image of w is defined with
// a value f(z), then w is defined with value z. Input error unless f is
// injective and a morphism up to bound.
Verdict is_kleene(const AlgMorphism& f, std::size_t bound);

// The restriction of b to a subset of its carrier: a word over the subset is
// defined iff its image is defined in b with a value inside the subset.
class LiftedAlgebra : public PartialAlgebra {
 public:
  LiftedAlgebra(AlgebraPtr base, Subset subset);

  const Graph& graph() const override { return graph_; }
  std::optional<Elem> evaluate(const Word& w) const override;
  std::size_t effective_bound() const override { return base_->effective_bound(); }

  const AlgebraPtr& base() const { return base_; }
  const Subset& subset() const { return subset_; }
  const TotalMap& inclusion() const { return inclusion_; }

 private:
  AlgebraPtr base_;
  Subset subset_;
  TotalMap inclusion_;
  Graph graph_;
};

struct CartesianLift {
  std::shared_ptr<const LiftedAlgebra> algebra;
  AlgMorphism inclusion;
};

CartesianLift cartesian_lift(const Subset& m, AlgebraPtr b, std::size_t bound);

struct Factorisation {
  AlgMorphism epi;     // source -> lift along the image, carrier-surjective
  AlgMorphism kleene;  // the lift's inclusion into the target
  Verdict epi_is_morphism;
  Verdict kleene_is_kleene;
  bool composite_matches = false;  // kleene . epi == f on carriers
};

Factorisation factor(const AlgMorphism& f, std::size_t bound);

// All carrier maps d with d . e = u and m . d = v that are morphisms up to
// bound, found by exhaustive search over carrier maps.
std::vector<TotalMap> diagonal_fill_ins(const AlgMorphism& e, const AlgMorphism& m, const AlgMorphism& u,
                                        const AlgMorphism& v, std::size_t bound);

struct FactorisationSaturationVerdict {
  Verdict saturation;   // check_saturation(a, query_len)
  Verdict kleene_unit;  // unit into the total envelope is Kleene
  bool inconclusive = false;
  bool agree() const { return !inconclusive && saturation.holds == kleene_unit.holds; }
};

FactorisationSaturationVerdict check_factorisation_saturation(const AlgebraPtr& a, std::size_t query_len,
                                                              std::size_t work_len);

// Every carrier map between the two algebras' carriers that is a morphism up
// to bound (monoid variant, or identity node maps when both graphs agree).
std::vector<AlgMorphism> all_morphisms(const AlgebraPtr& source, const AlgebraPtr& target, std::size_t bound);

}  // namespace parakit
