#pragma once

// Partial algebras for the free-monoid / free-path monad and the checkers for
// their laws. All universally quantified checks range over words whose
// flattening has length <= bound; a passing verdict means "verified up to
// bound", nothing more.

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "parakit/finset.hpp"
#include "parakit/words.hpp"

namespace parakit {

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

class PartialAlgebra {
 public:
  virtual ~PartialAlgebra() = default;

  // Carrier elements are the edges of the graph.
  virtual const Graph& graph() const = 0;
  // Throws InputError when w is not a path of graph().
  virtual std::optional<Elem> evaluate(const Word& w) const = 0;
  // Words longer than this are undefined; kUnbounded for intensional domains.
  virtual std::size_t effective_bound() const { return kUnbounded; }

  const FinSet& carrier() const { return graph().edges(); }
  bool defined(const Word& w) const { return evaluate(w).has_value(); }
};

using AlgebraPtr = std::shared_ptr<const PartialAlgebra>;

class Monoid {
 public:
  Monoid(FinSet carrier, Elem unit, std::vector<std::vector<Elem>> mult);

  static Monoid cyclic(std::size_t n);
  static Monoid trivial();

  const FinSet& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  Elem unit() const { return unit_; }
  Elem mult(Elem a, Elem b) const { return mult_[a][b]; }
  const std::vector<std::vector<Elem>>& table() const { return mult_; }
  Elem fold(const std::vector<Elem>& letters) const;

 private:
  FinSet carrier_;
  Elem unit_;
  std::vector<std::vector<Elem>> mult_;
};

// Extensional algebra: a finite table of defined words. Every edge's
// singleton must be present; the constructor does not insist on its value so
// that check_unit can report a wrong one.
class TableAlgebra : public PartialAlgebra {
 public:
  using Entries = std::map<Word, Elem>;

  TableAlgebra(Graph graph, Entries entries, std::optional<std::size_t> declared_bound = {});
  // Monoid variant over a bouquet.
  TableAlgebra(FinSet carrier, Entries entries, std::optional<std::size_t> declared_bound = {});

  const Graph& graph() const override { return graph_; }
  std::optional<Elem> evaluate(const Word& w) const override;
  std::size_t effective_bound() const override { return declared_bound_; }

  const Entries& entries() const { return entries_; }
  std::size_t declared_bound() const { return declared_bound_; }

 private:
  Graph graph_;
  Entries entries_;
  std::size_t declared_bound_;
};

// U(M, P): words over P are defined iff their product lies in P. Carrier
// index i stands for the i-th member of P.
class InducedAlgebra : public PartialAlgebra {
 public:
  InducedAlgebra(Monoid monoid, Subset subset);

  const Graph& graph() const override { return graph_; }
  std::optional<Elem> evaluate(const Word& w) const override;

  const Monoid& monoid() const { return monoid_; }
  const Subset& subset() const { return subset_; }

 private:
  Monoid monoid_;
  Subset subset_;
  std::vector<Elem> members_;
  Graph graph_;
};

// Materialise every defined word of length <= bound.
TableAlgebra tabulate(const PartialAlgebra& a, std::size_t bound);

using Witness = std::variant<Word, Nesting>;

struct Verdict {
  bool holds = true;
  std::size_t bound = 0;
  std::optional<Witness> witness;
  std::string detail;

  explicit operator bool() const { return holds; }
  static Verdict pass(std::size_t bound) { return {true, bound, std::nullopt, {}}; }
  static Verdict fail(std::size_t bound, Witness w, std::string detail = {}) {
    return {false, bound, std::move(w), std::move(detail)};
  }
};

std::string to_string(const Witness& w, const FinSet& alphabet);

Verdict check_unit(const PartialAlgebra& a);
Verdict check_laxity(const PartialAlgebra& a, std::size_t bound);
Verdict check_saturation(const PartialAlgebra& a, std::size_t bound);
// Saturation as surjectivity of the comparison between the pullbacks of the
// domain along d = Tx and c = mu . Td, computed over the full nesting
// enumeration rather than the pruned search.
Verdict check_descent_formulation(const PartialAlgebra& a, std::size_t bound);

// The three elementary axioms, checked directly on words: every empty path is
// defined (as a loop), singletons evaluate to themselves, and splicing a
// defined subword by its value is a Kleene equality.
Verdict check_freyd_axioms(const PartialAlgebra& a, std::size_t bound);

struct ParamonoidVerdict {
  Verdict lax_route;    // unit, empty words defined, laxity, saturation
  Verdict freyd_route;  // check_freyd_axioms
  bool agree() const { return lax_route.holds == freyd_route.holds; }
  explicit operator bool() const { return lax_route.holds; }
};

ParamonoidVerdict check_paramonoid(const PartialAlgebra& a, std::size_t bound);

// Unit insertion and the splice law; consequences of the paramonoid axioms.
Verdict derived_laws_check(const PartialAlgebra& a, std::size_t bound);

// Nonempty carrier: the empty word must be defined. Returns whether it is.
bool unit_totality_check(const PartialAlgebra& a);

// The internal category cat(x) truncated at `bound`: objects are words,
// arrows are nestings whose pieces are all defined.
struct InternalCategory {
  std::vector<Word> objects;
  std::vector<Nesting> arrows;
  std::size_t bound = 0;
  std::size_t composable_pairs = 0;
  std::size_t identity_checks = 0;
  std::size_t associativity_checks = 0;

  Word source(const PartialAlgebra& a, const Nesting& arrow) const;  // Tx
  static Word target(const Nesting& arrow) { return mu(arrow); }     // mu . Td
  static Nesting identity(const Graph& g, const Word& w);            // T eta'
  // Composite of f then g, requiring target(f) == source(g).
  static Nesting compose(const PartialAlgebra& a, const Nesting& f, const Nesting& g);
};

// Throws InternalError if a unit or associativity law fails within bound.
InternalCategory build_internal_category(const PartialAlgebra& a, std::size_t bound);

}  // namespace parakit
