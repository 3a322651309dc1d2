#pragma once

// Bounded congruence closure on words and the enveloping algebra built from
// it. Every word of length <= work_len is a node; one-step rewrites
// p.u.s <-> p.[x(u)].s (u defined) that stay within the bound are the
// edges. Classes are the connected components, so two words are identified
// exactly when a rewrite chain whose every word has length <= work_len joins
// them.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "parakit/algebra.hpp"

namespace parakit {

enum class StepDirection { Contract, Expand };

// Contract: the rule word occurring at `position` is replaced by its value.
// Expand: the letter at `position` (the rule's value) is replaced by the rule
// word. For the empty rule word, contraction inserts the unit letter.
struct RewriteStep {
  std::size_t position = 0;
  Word rule;
  StepDirection direction = StepDirection::Contract;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

std::optional<Word> apply_step(const PartialAlgebra& a, const Word& w, const RewriteStep& step);
// Replays a chain from `from`; true iff every step applies and it ends at `to`.
bool replay_chain(const PartialAlgebra& a, const Word& from, const std::vector<RewriteStep>& chain, const Word& to);

// Class labels over all words of length <= work_len, in Word order; classes
// are numbered by first occurrence.
struct Partition {
  std::vector<Word> words;
  std::vector<std::size_t> class_of;

  std::size_t num_classes() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

class Congruence {
 public:
  static Congruence close(const PartialAlgebra& a, std::size_t work_len);

  std::size_t work_len() const { return work_len_; }
  const Graph& graph() const { return graph_; }
  const std::vector<Word>& words() const { return words_; }
  std::optional<std::size_t> index_of(const Word& w) const;

  std::size_t num_classes() const { return representatives_.size(); }
  std::size_t class_of_index(std::size_t i) const { return class_of_[i]; }
  // Throws InputError for words longer than work_len.
  std::size_t class_of(const Word& w) const;
  const Word& representative(std::size_t c) const { return words_[representatives_[c]]; }
  std::size_t member_count(std::size_t c) const { return member_counts_[c]; }

  bool equivalent(const Word& w1, const Word& w2) const { return class_of(w1) == class_of(w2); }
  Partition partition() const;

  // Shortest rewrite chain from w1 to w2, if they are equivalent.
  std::optional<std::vector<RewriteStep>> certificate(const Word& w1, const Word& w2) const;

 private:
  struct Edge {
    std::size_t to;
    std::uint32_t position;
    std::uint32_t rule;  // index into words_
    StepDirection direction;
  };

  std::size_t work_len_ = 0;
  Graph graph_;
  std::vector<Word> words_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> representatives_;
  std::vector<std::size_t> member_counts_;
};

// Reference construction on an explicit relation: the generating pairs
// (w, [x(w)]) placed in every context that fits, then reflexivity, symmetry
// and transitivity iterated until nothing changes. Quadratic in the number of
// words; a test oracle only.
Partition naive_closure_oracle(const PartialAlgebra& a, std::size_t work_len);

// As above but concatenating arbitrary related pairs. This can identify words
// no chain within work_len joins (in N at work_len 4, [e,b,b] ~ [e,e] needs
// [e,a,a,a,a]), so it is coarser than Congruence::close in general.
Partition concatenation_closure(const PartialAlgebra& a, std::size_t work_len);

bool word_eq(const Congruence& c, const Word& w1, const Word& w2);

// E(x) truncated at work_len. As a PartialAlgebra its carrier is the set of
// classes (an edge per class, with the endpoints of its members) and a word
// of classes evaluates to the class of the concatenated representatives,
// when that concatenation fits in work_len.
class Envelope : public PartialAlgebra {
 public:
  Envelope(const PartialAlgebra& a, std::size_t work_len);

  const Graph& graph() const override { return graph_; }
  std::optional<Elem> evaluate(const Word& w) const override;
  std::size_t effective_bound() const override { return congruence_.work_len(); }

  const Congruence& congruence() const { return congruence_; }
  std::size_t num_classes() const { return congruence_.num_classes(); }
  const Word& representative(std::size_t c) const { return congruence_.representative(c); }
  std::size_t member_count(std::size_t c) const { return congruence_.member_count(c); }
  // Classes containing a singleton; equivalently the image of the domain.
  const Subset& distinguished() const { return distinguished_; }
  std::optional<std::size_t> multiply(std::size_t c1, std::size_t c2) const;
  std::size_t class_of(const Word& source_word) const { return congruence_.class_of(source_word); }

 private:
  Congruence congruence_;
  Graph graph_;
  Subset distinguished_;
};

struct UnitMap {
  TotalMap assignment;  // carrier -> classes, a |-> class([a])
  bool injective = false;
};

UnitMap unit_map(const Envelope& e);

struct RecoveryVerdict {
  Verdict recovery;
  Verdict saturation;
  bool agree() const { return recovery.holds == saturation.holds; }
};

// For every word w with |w| <= query_len: w ~ [b] iff w is defined with value
// b. Reported together with check_saturation(a, query_len).
RecoveryVerdict check_envelope_recovery(const PartialAlgebra& a, std::size_t query_len, std::size_t work_len);

// Pullback of U E(x) along the unit: entries {w -> b : |w| <= query_len, w ~ [b]}.
TableAlgebra saturate(const PartialAlgebra& a, std::size_t query_len, std::size_t work_len);

struct UniversalPropertyResult {
  enum class Status { Verified, Failed, Inconclusive };
  Status status = Status::Inconclusive;
  std::size_t left_count = 0;   // partial-algebra morphisms a -> U(target, P)
  std::size_t right_count = 0;  // subset-preserving monoid maps E(a) -> target
  bool transpose_injective = false;
  bool transpose_surjective = false;
  std::string detail;
};

UniversalPropertyResult check_universal_property(const PartialAlgebra& a, const Monoid& target,
                                                 const Subset& target_subset, std::size_t query_len,
                                                 std::size_t work_len);

}  // namespace parakit
