#include "parakit/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "parakit/errors.hpp"

namespace parakit {

Graph::Graph(FinSet nodes, FinSet edges, TotalMap dom, TotalMap cod)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), dom_(std::move(dom)), cod_(std::move(cod)) {
  if (!(dom_.src() == edges_) || !(cod_.src() == edges_) || !(dom_.dst() == nodes_) || !(cod_.dst() == nodes_))
    throw InputError("Graph: dom/cod must map edges to nodes");
}

Graph Graph::bouquet(const FinSet& alphabet) {
  FinSet one(1);
  return Graph(one, alphabet, TotalMap::constant(alphabet, one, 0), TotalMap::constant(alphabet, one, 0));
}

bool operator<(const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
  if (a.letters != b.letters) return a.letters < b.letters;
  return a.base < b.base;
}

std::size_t WordHash::operator()(const Word& w) const {
  std::size_t h = 1469598103934665603ull ^ w.base;
  for (Elem e : w.letters) h = (h ^ (e + 0x9e3779b9u)) * 1099511628211ull;
  return h ^ (w.letters.size() << 1);
}

std::size_t flat_length(const Nesting& n) {
  std::size_t len = 0;
  for (const auto& w : n.inner) len += w.size();
  return len;
}

namespace {
std::vector<std::size_t> cut_positions(const Nesting& n) {
  std::vector<std::size_t> cuts;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < n.inner.size(); ++i) {
    pos += n.inner[i].size();
    cuts.push_back(pos);
  }
  return cuts;
}
}  // namespace

bool nesting_less(const Nesting& a, const Nesting& b) {
  Word fa = mu(a), fb = mu(b);
  if (fa < fb) return true;
  if (fb < fa) return false;
  if (a.inner.size() != b.inner.size()) return a.inner.size() < b.inner.size();
  return cut_positions(a) < cut_positions(b);
}

bool is_path(const Graph& g, const Word& w) {
  if (w.base >= g.nodes().size()) return false;
  Node at = w.base;
  for (Elem e : w.letters) {
    if (e >= g.edges().size() || g.dom(e) != at) return false;
    at = g.cod(e);
  }
  return true;
}

Node end_node(const Graph& g, const Word& w) { return w.empty() ? w.base : g.cod(w.letters.back()); }

void require_path(const Graph& g, const Word& w) {
  if (!is_path(g, w)) throw InputError("not a path of the carrier graph: " + to_string(w));
}

bool is_valid_nesting(const Graph& g, const Nesting& n) {
  Node at = n.base;
  for (const auto& w : n.inner) {
    if (w.base != at || !is_path(g, w)) return false;
    at = end_node(g, w);
  }
  return true;
}

Word eta(Elem a) { return Word({a}); }
Word eta(const Graph& g, Elem edge) { return Word({edge}, g.dom(edge)); }

Word mu(const Nesting& n) {
  Word out;
  out.base = n.base;
  for (const auto& w : n.inner) out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  if (a.empty()) out.base = b.base;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

Word map_word(const TotalMap& f, const Word& w) {
  Word out;
  out.base = w.base;
  out.letters.reserve(w.size());
  for (Elem e : w.letters) out.letters.push_back(f(e));
  return out;
}

Word map_word(const TotalMap& node_map, const TotalMap& edge_map, const Word& w) {
  Word out = map_word(edge_map, w);
  out.base = node_map(w.base);
  return out;
}

Nesting map_nesting(const TotalMap& f, const Nesting& n) {
  Nesting out;
  out.base = n.base;
  for (const auto& w : n.inner) out.inner.push_back(map_word(f, w));
  return out;
}

namespace {
std::uint64_t& budget_slot() {
  static std::uint64_t limit = [] {
    std::uint64_t v = 10'000'000;
    if (const char* env = std::getenv("PARAKIT_BUDGET")) {
      char* end = nullptr;
      unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0') v = parsed;
    }
    return v;
  }();
  return limit;
}

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSat / b ? kSat : a * b;
}

// counts[k] = number of paths of length exactly k.
std::vector<std::uint64_t> counts_by_length(const Graph& g, std::size_t max_len, std::optional<Node> base) {
  const auto n = g.nodes().size();
  std::vector<std::uint64_t> from(n, 1);  // paths of current length from each node
  std::vector<std::uint64_t> out(max_len + 1, 0);
  auto total = [&](const std::vector<std::uint64_t>& c) {
    if (base) return *base < n ? c[*base] : std::uint64_t{0};
    std::uint64_t s = 0;
    for (auto v : c) s = sat_add(s, v);
    return s;
  };
  out[0] = total(from);
  for (std::size_t k = 1; k <= max_len; ++k) {
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      auto d = g.dom(static_cast<Elem>(e));
      next[d] = sat_add(next[d], from[g.cod(static_cast<Elem>(e))]);
    }
    from = std::move(next);
    out[k] = total(from);
  }
  return out;
}

void check_budget(std::uint64_t n, const char* what) {
  if (n > word_budget())
    throw BudgetError(std::string(what) + ": " + std::to_string(n) + " items exceed budget " +
                      std::to_string(word_budget()) + " (PARAKIT_BUDGET)");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    std::uint64_t num = sat_mul(r, n - k + i);
    if (num == kSat) return kSat;
    r = num / i;
  }
  return r;
}

// Nestings with a fixed flattening of length n.
std::uint64_t nestings_per_word(std::size_t n, std::size_t pieces) {
  std::uint64_t c = (n == 0) ? 1 : 0;  // the empty nesting
  for (std::size_t k = 1; k <= pieces; ++k) c = sat_add(c, binomial(n + k - 1, k - 1));
  return c;
}
}  // namespace

std::uint64_t word_budget() { return budget_slot(); }
void set_word_budget(std::uint64_t limit) { budget_slot() = limit; }

std::uint64_t count_words(const Graph& g, std::size_t max_len, std::optional<Node> base) {
  std::uint64_t s = 0;
  for (auto v : counts_by_length(g, max_len, base)) s = sat_add(s, v);
  return s;
}

std::vector<Word> enumerate_words(const Graph& g, std::size_t max_len, std::optional<Node> base) {
  check_budget(count_words(g, max_len, base), "enumerate_words");
  std::vector<Word> out;
  std::vector<Word> layer;
  for (Node u = 0; u < g.nodes().size(); ++u)
    if (!base || *base == u) layer.push_back(Word({}, u));
  out.insert(out.end(), layer.begin(), layer.end());
  for (std::size_t k = 1; k <= max_len; ++k) {
    std::vector<Word> next;
    if (k == 1) {
      for (Elem e = 0; e < g.edges().size(); ++e)
        if (!base || g.dom(e) == *base) next.push_back(eta(g, e));
    } else {
      for (const auto& w : layer) {
        Node at = end_node(g, w);
        for (Elem e = 0; e < g.edges().size(); ++e) {
          if (g.dom(e) != at) continue;
          Word x = w;
          x.letters.push_back(e);
          next.push_back(std::move(x));
        }
      }
    }
    layer = std::move(next);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Word> enumerate_words(std::size_t alphabet, std::size_t max_len) {
  return enumerate_words(Graph::bouquet(FinSet(alphabet)), max_len);
}

std::uint64_t count_nestings(const Graph& g, std::size_t max_total_len,
                             const std::function<std::size_t(std::size_t)>& piece_bound) {
  auto by_len = counts_by_length(g, max_total_len, std::nullopt);
  std::uint64_t s = 0;
  for (std::size_t n = 0; n <= max_total_len; ++n) s = sat_add(s, sat_mul(by_len[n], nestings_per_word(n, piece_bound(n))));
  return s;
}

void for_each_nesting(const Graph& g, std::size_t max_total_len, const std::function<bool(const Nesting&)>& visit,
                      const std::function<std::size_t(std::size_t)>& piece_bound) {
  check_budget(count_nestings(g, max_total_len, piece_bound), "enumerate_nestings");
  for (const Word& w : enumerate_words(g, max_total_len)) {
    const std::size_t n = w.size();
    // node_at[i] = node before letter i.
    std::vector<Node> node_at(n + 1);
    node_at[0] = w.base;
    for (std::size_t i = 0; i < n; ++i) node_at[i + 1] = g.cod(w.letters[i]);
    if (n == 0 && !visit(Nesting{w.base, {}})) return;
    const std::size_t max_pieces = piece_bound(n);
    for (std::size_t k = 1; k <= max_pieces; ++k) {
      std::vector<std::size_t> cuts(k - 1, 0);
      while (true) {
        Nesting nest{w.base, {}};
        std::size_t prev = 0;
        for (std::size_t i = 0; i <= cuts.size(); ++i) {
          std::size_t next = i < cuts.size() ? cuts[i] : n;
          Word piece(std::vector<Elem>(w.letters.begin() + prev, w.letters.begin() + next), node_at[prev]);
          nest.inner.push_back(std::move(piece));
          prev = next;
        }
        if (!visit(nest)) return;
        // Next nondecreasing sequence in lex order.
        std::size_t i = cuts.size();
        while (i > 0 && cuts[i - 1] == n) --i;
        if (i == 0) break;
        ++cuts[i - 1];
        for (std::size_t j = i; j < cuts.size(); ++j) cuts[j] = cuts[i - 1];
      }
    }
  }
}

std::vector<Nesting> enumerate_nestings(const Graph& g, std::size_t max_total_len,
                                        const std::function<std::size_t(std::size_t)>& piece_bound) {
  std::vector<Nesting> out;
  for_each_nesting(g, max_total_len, [&](const Nesting& n) { out.push_back(n); return true; }, piece_bound);
  return out;
}

bool eta_is_cartesian_check(const TotalMap& f, std::size_t max_len) {
  // The pullback of eta_Y along Tf is {w : Tf(w) is a singleton}; eta_X
  // factors through it bijectively iff every such w is itself a singleton.
  for (const Word& w : enumerate_words(f.src().size(), max_len)) {
    if (map_word(f, w).size() == 1 && w.size() != 1) return false;
  }
  return true;
}

std::string to_string(const Word& w, const FinSet& alphabet) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << alphabet.label(w.letters[i]);
  os << ']';
  return os.str();
}

std::string to_string(const Word& w) { return to_string(w, FinSet()); }

std::string to_string(const Nesting& n, const FinSet& alphabet) {
  std::string s = "[";
  for (std::size_t i = 0; i < n.inner.size(); ++i) s += (i ? "," : "") + to_string(n.inner[i], alphabet);
  return s + "]";
}

std::string to_string(const Nesting& n) { return to_string(n, FinSet()); }

}  // namespace parakit
