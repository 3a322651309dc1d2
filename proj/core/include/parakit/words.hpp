#pragma once

// The free-monoid monad on finite sets and the free-path monad on finite
// graphs. A monoid alphabet is modelled as a one-node graph whose edges are
// all loops (a bouquet), so both variants share one Word type.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parakit/finset.hpp"

namespace parakit {

using Node = Elem;

class Graph {
 public:
  Graph() = default;
  Graph(FinSet nodes, FinSet edges, TotalMap dom, TotalMap cod);

  // One node, every edge a loop on it.
  static Graph bouquet(const FinSet& alphabet);

  const FinSet& nodes() const { return nodes_; }
  const FinSet& edges() const { return edges_; }
  const TotalMap& dom() const { return dom_; }
  const TotalMap& cod() const { return cod_; }
  Node dom(Elem e) const { return dom_(e); }
  Node cod(Elem e) const { return cod_(e); }
  bool is_bouquet() const { return nodes_.size() == 1; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  FinSet nodes_;
  FinSet edges_;
  TotalMap dom_;
  TotalMap cod_;
};

// A path: base node plus a sequence of edges. For nonempty paths the base is
// the domain of the first letter; it only carries information for the empty
// path. In the monoid variant base is always 0.
struct Word {
  Node base = 0;
  std::vector<Elem> letters;

  Word() = default;
  explicit Word(std::vector<Elem> l, Node b = 0) : base(b), letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const Word&, const Word&) = default;
};

// Length, then lexicographic on letters, then base.
bool operator<(const Word& a, const Word& b);

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

// A word of words. The base of the nesting is the base of its flattening.
struct Nesting {
  Node base = 0;
  std::vector<Word> inner;

  friend bool operator==(const Nesting&, const Nesting&) = default;
};

std::size_t flat_length(const Nesting& n);

// Canonical enumeration order: flattening (as Word), then number of pieces,
// then the cut positions.
bool nesting_less(const Nesting& a, const Nesting& b);

bool is_path(const Graph& g, const Word& w);
Node end_node(const Graph& g, const Word& w);
// Throws InputError if w is not a path of g.
void require_path(const Graph& g, const Word& w);
bool is_valid_nesting(const Graph& g, const Nesting& n);

Word eta(Elem a);
Word eta(const Graph& g, Elem edge);
Word mu(const Nesting& n);
Word concat(const Word& a, const Word& b);
Word map_word(const TotalMap& f, const Word& w);
// Path variant: node map on the base, edge map on the letters.
Word map_word(const TotalMap& node_map, const TotalMap& edge_map, const Word& w);
Nesting map_nesting(const TotalMap& f, const Nesting& n);

// Process-wide cap on the number of words/nestings materialised by one
// enumeration. Read from PARAKIT_BUDGET (default 10^7) unless overridden.
std::uint64_t word_budget();
void set_word_budget(std::uint64_t limit);

// Number of paths of length <= max_len (from `base` if given). Saturates at
// UINT64_MAX.
std::uint64_t count_words(const Graph& g, std::size_t max_len, std::optional<Node> base = {});

// All paths of length <= max_len, each once, in Word order.
std::vector<Word> enumerate_words(const Graph& g, std::size_t max_len, std::optional<Node> base = {});
std::vector<Word> enumerate_words(std::size_t alphabet, std::size_t max_len);

// Default cap on the number of inner words of a nesting with flattening w.
inline std::size_t default_piece_bound(std::size_t flat_len) { return flat_len + 2; }

// Visits every nesting whose flattening has length <= max_total_len and whose
// piece count is <= piece_bound(flat length), in canonical order. The visitor
// returns false to stop early.
void for_each_nesting(const Graph& g, std::size_t max_total_len,
                      const std::function<bool(const Nesting&)>& visit,
                      const std::function<std::size_t(std::size_t)>& piece_bound = default_piece_bound);

std::uint64_t count_nestings(const Graph& g, std::size_t max_total_len,
                             const std::function<std::size_t(std::size_t)>& piece_bound = default_piece_bound);

std::vector<Nesting> enumerate_nestings(const Graph& g, std::size_t max_total_len,
                                        const std::function<std::size_t(std::size_t)>& piece_bound = default_piece_bound);

// Whether the naturality square of eta at f is a pullback, checked on all
// words of length <= max_len over f's source.
bool eta_is_cartesian_check(const TotalMap& f, std::size_t max_len = 3);

std::string to_string(const Word& w, const FinSet& alphabet);
std::string to_string(const Word& w);
std::string to_string(const Nesting& n, const FinSet& alphabet);
std::string to_string(const Nesting& n);

}  // namespace parakit
