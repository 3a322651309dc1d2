#pragma once

// Finite categories, the paracategories they induce on a subset of arrows,
// parafunctors and the enveloping category.

#include <memory>
#include <optional>
#include <vector>

#include "parakit/algebra.hpp"
#include "parakit/envelope.hpp"
#include "parakit/morphisms.hpp"

namespace parakit {

// Composition is in diagrammatic order: comp(f, g) is "f then g" and is
// defined exactly when cod f == dom g.
class FiniteCategory {
 public:
  using Table = std::vector<std::vector<std::optional<Elem>>>;

  FiniteCategory(Graph graph, TotalMap identities, Table comp);

  const Graph& graph() const { return graph_; }
  const TotalMap& identities() const { return identities_; }
  Elem identity(Node u) const { return identities_(u); }
  Elem comp(Elem f, Elem g) const;
  // Composite of a path; the empty path at u gives id_u.
  Elem fold(const Word& path) const;
  const Table& table() const { return comp_; }

  // One object, arrows the monoid elements.
  static FiniteCategory from_monoid(const Monoid& m);

 private:
  Graph graph_;
  TotalMap identities_;
  Table comp_;
};

// Paths over P (reindexed by rank) are defined iff their composite lies in P.
class CategoryPathAlgebra : public PartialAlgebra {
 public:
  CategoryPathAlgebra(FiniteCategory category, Subset subset);

  const Graph& graph() const override { return graph_; }
  std::optional<Elem> evaluate(const Word& w) const override;

  const FiniteCategory& category() const { return category_; }
  const Subset& subset() const { return subset_; }

 private:
  FiniteCategory category_;
  Subset subset_;
  TotalMap inclusion_;
  Graph graph_;
};

class Paracategory {
 public:
  explicit Paracategory(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Graph& graph() const { return algebra_->graph(); }
  // The value of the empty path at u, if defined.
  std::optional<Elem> identity(Node u) const;

 private:
  AlgebraPtr algebra_;
};

Paracategory from_category(const FiniteCategory& c, const Subset& p);

struct ParaFunctor {
  Paracategory source;
  Paracategory target;
  TotalMap f0;
  TotalMap f1;

  // Validates that (f0, f1) is a graph morphism.
  ParaFunctor(Paracategory source, Paracategory target, TotalMap f0, TotalMap f1);

  AlgMorphism to_morphism() const;
};

Verdict check_freyd_axioms(const Paracategory& p, std::size_t bound);

// Whether F preserves defined composites up to bound.
Verdict check_parafunctor(const ParaFunctor& f, std::size_t bound);

// "[f1 x] = f1 y implies [x] = y" over paths of length <= bound. Input error
// unless f0 and f1 are injective.
Verdict is_kleene_functor(const ParaFunctor& f, std::size_t bound);

struct HomCheck {
  Node from = 0;
  Node to = 0;
  Verdict recovery;
  Verdict saturation;
  bool agree() const { return recovery.holds == saturation.holds; }
};

// Truncated enveloping category: classes of paths are arrows, concatenation of
// representatives within work_len is composition.
struct EnvelopingCategory {
  std::shared_ptr<const Envelope> envelope;
  std::vector<Elem> identities;  // class of the empty path at each node
  Subset distinguished;
  std::vector<HomCheck> homs;  // one entry per (from, to), row-major

  const Graph& graph() const { return envelope->graph(); }
  std::optional<Elem> comp(Elem c1, Elem c2) const { return envelope->multiply(c1, c2); }
};

// Per-hom checks use paths of length <= query_len.
EnvelopingCategory enveloping_category(const Paracategory& p, std::size_t work_len, std::size_t query_len = 4);

}  // namespace parakit
