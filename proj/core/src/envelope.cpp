#include "parakit/envelope.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "parakit/errors.hpp"

namespace parakit {

namespace {

std::vector<Node> nodes_along(const Graph& g, const Word& w) {
  std::vector<Node> at(w.size() + 1);
  at[0] = w.base;
  for (std::size_t i = 0; i < w.size(); ++i) at[i + 1] = g.cod(w.letters[i]);
  return at;
}

Word splice(const Word& w, std::size_t pos, std::size_t len, const std::vector<Elem>& replacement, Node base_at_pos) {
  Word out({}, w.base);
  out.letters.assign(w.letters.begin(), w.letters.begin() + pos);
  out.letters.insert(out.letters.end(), replacement.begin(), replacement.end());
  out.letters.insert(out.letters.end(), w.letters.begin() + pos + len, w.letters.end());
  if (out.empty() && pos == 0) out.base = base_at_pos;
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::optional<Word> apply_step(const PartialAlgebra& a, const Word& w, const RewriteStep& step) {
  const Graph& g = a.graph();
  if (!is_path(g, w) || !is_path(g, step.rule)) return std::nullopt;
  auto value = a.evaluate(step.rule);
  if (!value) return std::nullopt;
  const auto at = nodes_along(g, w);
  const std::size_t pos = step.position;
  if (step.direction == StepDirection::Contract) {
    if (pos + step.rule.size() > w.size() || at[pos] != step.rule.base) return std::nullopt;
    if (!std::equal(step.rule.letters.begin(), step.rule.letters.end(), w.letters.begin() + pos)) return std::nullopt;
    return splice(w, pos, step.rule.size(), {*value}, at[pos]);
  }
  if (pos >= w.size() || w.letters[pos] != *value) return std::nullopt;
  return splice(w, pos, 1, step.rule.letters, step.rule.base);
}

bool replay_chain(const PartialAlgebra& a, const Word& from, const std::vector<RewriteStep>& chain, const Word& to) {
  Word cur = from;
  for (const auto& step : chain) {
    auto next = apply_step(a, cur, step);
    if (!next) return false;
    cur = std::move(*next);
  }
  return cur == to;
}

std::size_t Partition::num_classes() const {
  return class_of.empty() ? 0 : *std::max_element(class_of.begin(), class_of.end()) + 1;
}

// ------------------------------------------------------------ Congruence

Congruence Congruence::close(const PartialAlgebra& a, std::size_t work_len) {
  Congruence c;
  c.work_len_ = work_len;
  c.graph_ = a.graph();
  c.words_ = enumerate_words(c.graph_, work_len);
  const std::size_t n = c.words_.size();
  c.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.index_.emplace(c.words_[i], i);

  std::vector<std::optional<Elem>> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a.evaluate(c.words_[i]);

  c.adjacency_.assign(n, {});
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Word& w = c.words_[i];
    const auto at = nodes_along(c.graph_, w);
    for (std::size_t p = 0; p <= w.size(); ++p) {
      for (std::size_t q = p; q <= w.size(); ++q) {
        Word u(std::vector<Elem>(w.letters.begin() + p, w.letters.begin() + q), at[p]);
        const std::size_t ui = c.index_.at(u);
        if (!values[ui]) continue;
        if (w.size() - u.size() + 1 > work_len) continue;  // only the empty rule grows
        Word r = splice(w, p, u.size(), {*values[ui]}, at[p]);
        const std::size_t ri = c.index_.at(r);
        if (ri == i) continue;
        uf.unite(i, ri);
        const auto pos = static_cast<std::uint32_t>(p);
        const auto rule = static_cast<std::uint32_t>(ui);
        c.adjacency_[i].push_back({ri, pos, rule, StepDirection::Contract});
        c.adjacency_[ri].push_back({i, pos, rule, StepDirection::Expand});
      }
    }
  }

  c.class_of_.assign(n, 0);
  std::unordered_map<std::size_t, std::size_t> root_class;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = root_class.emplace(uf.find(i), c.representatives_.size());
    if (fresh) {
      c.representatives_.push_back(i);
      c.member_counts_.push_back(0);
    }
    c.class_of_[i] = it->second;
    ++c.member_counts_[it->second];
  }
  return c;
}

std::optional<std::size_t> Congruence::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Congruence::class_of(const Word& w) const {
  auto i = index_of(w);
  if (!i) throw InputError("word " + to_string(w, graph_.edges()) + " is not within work_len " + std::to_string(work_len_));
  return class_of_[*i];
}

Partition Congruence::partition() const { return Partition{words_, class_of_}; }

std::optional<std::vector<RewriteStep>> Congruence::certificate(const Word& w1, const Word& w2) const {
  const auto s = index_of(w1), t = index_of(w2);
  if (!s || !t || class_of_[*s] != class_of_[*t]) return std::nullopt;
  std::vector<std::optional<std::pair<std::size_t, const Edge*>>> came(words_.size());
  std::vector<bool> seen(words_.size(), false);
  std::deque<std::size_t> queue{*s};
  seen[*s] = true;
  while (!queue.empty() && !seen[*t]) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const Edge& e : adjacency_[cur]) {
      if (seen[e.to]) continue;
      seen[e.to] = true;
      came[e.to] = std::make_pair(cur, &e);
      queue.push_back(e.to);
    }
  }
  std::vector<RewriteStep> chain;
  for (std::size_t cur = *t; cur != *s;) {
    const auto& [prev, edge] = *came[cur];
    chain.push_back({edge->position, words_[edge->rule], edge->direction});
    cur = prev;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

bool word_eq(const Congruence& c, const Word& w1, const Word& w2) { return c.equivalent(w1, w2); }

// ---------------------------------------------------------------- oracle

namespace {
// Explicit relation on all words of length <= work_len, closed under
// reflexivity, symmetry and transitivity by naive iteration. With
// `derived_contexts` the concatenation step applies to every related pair;
// without it only the generating pairs are placed in contexts.
Partition relation_closure(const PartialAlgebra& a, std::size_t work_len, bool derived_contexts) {
  const Graph& g = a.graph();
  const auto words = enumerate_words(g, work_len);
  const std::size_t n = words.size();
  if (static_cast<double>(n) * static_cast<double>(n) > 64.0 * static_cast<double>(word_budget()))
    throw BudgetError("naive_closure_oracle: relation on " + std::to_string(n) + " words exceeds budget");

  std::unordered_map<Word, std::size_t, WordHash> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(words[i], i);

  // upto[k] = number of words of length <= k (words are length-sorted).
  std::vector<std::size_t> upto(work_len + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++upto[words[i].size()];
  for (std::size_t k = 1; k <= work_len; ++k) upto[k] += upto[k - 1];

  // cat[i][j] = index of words[i].words[j], or npos if not composable.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> cat(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t room = work_len - words[i].size();
    cat[i].assign(upto[room], npos);
    const Node end = end_node(g, words[i]);
    for (std::size_t j = 0; j < upto[room]; ++j)
      if (words[j].base == end) cat[i][j] = index.at(concat(words[i], words[j]));
  }

  const std::size_t blocks = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rel(n, std::vector<std::uint64_t>(blocks, 0));
  auto has = [&](std::size_t i, std::size_t j) { return (rel[i][j / 64] >> (j % 64)) & 1u; };
  auto add = [&](std::size_t i, std::size_t j) {
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    if (rel[i][j / 64] & bit) return false;
    rel[i][j / 64] |= bit;
    return true;
  };
  auto row_members = [&](std::size_t i, std::size_t limit) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < blocks && b * 64 < limit; ++b)
      for (std::uint64_t bits = rel[i][b]; bits; bits &= bits - 1) {
        std::size_t j = b * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        if (j < limit) out.push_back(j);
      }
    return out;
  };

  for (std::size_t i = 0; i < n; ++i) {
    add(i, i);
    if (auto v = a.evaluate(words[i])) add(i, index.at(eta(g, *v)));
  }
  if (!derived_contexts) {
    // (p u s, p [x(u)] s) for every factorisation with u defined.
    for (std::size_t i = 0; i < n; ++i) {
      const Word& w = words[i];
      Node at = w.base;
      for (std::size_t l = 0; l <= w.size(); ++l) {
        for (std::size_t r = l; r <= w.size(); ++r) {
          auto v = a.evaluate(Word(std::vector<Elem>(w.letters.begin() + l, w.letters.begin() + r), at));
          if (!v) continue;
          Word out({}, w.base);
          out.letters.assign(w.letters.begin(), w.letters.begin() + l);
          out.letters.push_back(*v);
          out.letters.insert(out.letters.end(), w.letters.begin() + r, w.letters.end());
          if (auto it = index.find(out); it != index.end()) add(i, it->second);
        }
        if (l < w.size()) at = g.cod(w.letters[l]);
      }
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : row_members(i, n))
        if (add(j, i)) changed = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j : row_members(i, n)) {
        if (j == i) continue;
        for (std::size_t b = 0; b < blocks; ++b) {
          const std::uint64_t merged = rel[i][b] | rel[j][b];
          if (merged != rel[i][b]) {
            rel[i][b] = merged;
            changed = true;
          }
        }
      }
    // (x, y), (z, t) related  =>  (xz, yt) related, within the bound.
    for (std::size_t x = 0; derived_contexts && x < n; ++x) {
      const std::size_t room_x = cat[x].size();
      for (std::size_t y : row_members(x, n)) {
        const std::size_t room_y = cat[y].size();
        for (std::size_t z = 0; z < room_x; ++z) {
          const std::size_t xz = cat[x][z];
          if (xz == npos) continue;
          for (std::size_t t : row_members(z, room_y)) {
            const std::size_t yt = cat[y][t];
            if (yt != npos && add(xz, yt)) changed = true;
          }
        }
      }
    }
  }

  Partition p{words, std::vector<std::size_t>(n, 0)};
  std::vector<std::size_t> label(n, npos);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != npos) continue;
    for (std::size_t j = i; j < n; ++j)
      if (has(i, j)) label[j] = next;
    ++next;
  }
  for (std::size_t i = 0; i < n; ++i) p.class_of[i] = label[i];
  return p;
}
}  // namespace

Partition naive_closure_oracle(const PartialAlgebra& a, std::size_t work_len) {
  return relation_closure(a, work_len, false);
}

Partition concatenation_closure(const PartialAlgebra& a, std::size_t work_len) {
  return relation_closure(a, work_len, true);
}

// -------------------------------------------------------------- Envelope

namespace {
Graph class_graph(const Congruence& c) {
  const Graph& g = c.graph();
  std::vector<std::string> labels;
  std::vector<Elem> dom, cod;
  for (std::size_t k = 0; k < c.num_classes(); ++k) {
    const Word& rep = c.representative(k);
    labels.push_back(to_string(rep, g.edges()) + (g.is_bouquet() || !rep.empty() ? "" : "@" + g.nodes().label(rep.base)));
    dom.push_back(rep.base);
    cod.push_back(end_node(g, rep));
  }
  FinSet edges(std::move(labels));
  return Graph(g.nodes(), edges, TotalMap(edges, g.nodes(), std::move(dom)), TotalMap(edges, g.nodes(), std::move(cod)));
}
}  // namespace

Envelope::Envelope(const PartialAlgebra& a, std::size_t work_len)
    : congruence_(Congruence::close(a, work_len)), graph_(class_graph(congruence_)) {
  const Graph& g = a.graph();
  std::vector<Elem> singles;
  if (work_len >= 1)
    for (Elem e = 0; e < g.edges().size(); ++e) singles.push_back(static_cast<Elem>(congruence_.class_of(eta(g, e))));
  distinguished_ = Subset::of(graph_.edges(), singles);
}

std::optional<Elem> Envelope::evaluate(const Word& w) const {
  require_path(graph_, w);
  Word acc({}, w.base);
  for (Elem c : w.letters) {
    acc = concat(acc, representative(c));
    if (acc.size() > congruence_.work_len()) return std::nullopt;
  }
  return static_cast<Elem>(congruence_.class_of(acc));
}

std::optional<std::size_t> Envelope::multiply(std::size_t c1, std::size_t c2) const {
  const auto a = static_cast<Elem>(c1), b = static_cast<Elem>(c2);
  if (graph_.cod(a) != graph_.dom(b)) return std::nullopt;
  auto v = evaluate(Word({a, b}, graph_.dom(a)));
  if (!v) return std::nullopt;
  return *v;
}

UnitMap unit_map(const Envelope& e) {
  const Graph& g = e.congruence().graph();
  std::vector<Elem> t;
  for (Elem a = 0; a < g.edges().size(); ++a) t.push_back(static_cast<Elem>(e.class_of(eta(g, a))));
  TotalMap m(g.edges(), e.graph().edges(), std::move(t));
  const bool inj = m.injective();
  return {std::move(m), inj};
}

// --------------------------------------------------- recovery, saturation

namespace {
void require_query(std::size_t query_len, std::size_t work_len) {
  if (query_len > work_len) throw InputError("query_len must not exceed work_len");
  if (work_len == 0) throw InputError("work_len must be positive");
}

// singleton_of[c] = carrier elements b with class([b]) == c.
std::vector<std::vector<Elem>> singletons_by_class(const Envelope& e) {
  std::vector<std::vector<Elem>> out(e.num_classes());
  const auto u = unit_map(e);
  for (Elem b = 0; b < u.assignment.src().size(); ++b) out[u.assignment(b)].push_back(b);
  return out;
}
}  // namespace

RecoveryVerdict check_envelope_recovery(const PartialAlgebra& a, std::size_t query_len, std::size_t work_len) {
  require_query(query_len, work_len);
  Envelope env(a, work_len);
  const auto singles = singletons_by_class(env);
  RecoveryVerdict out;
  out.saturation = check_saturation(a, std::min(query_len, a.effective_bound()));
  out.recovery = Verdict::pass(query_len);
  for (const Word& w : enumerate_words(a.graph(), query_len)) {
    const auto value = a.evaluate(w);
    const auto& bs = singles[env.class_of(w)];
    bool ok = true;
    std::string why;
    if (value) {
      // w ~ [x(w)] always; the class must name no other singleton.
      ok = bs.size() == 1 && bs[0] == *value;
      why = "defined word identified with a different singleton";
    } else if (!bs.empty()) {
      ok = false;
      why = "undefined word identified with singleton [" + a.carrier().label(bs[0]) + "]";
    }
    if (!ok) {
      out.recovery = Verdict::fail(query_len, w, why);
      break;
    }
  }
  return out;
}

TableAlgebra saturate(const PartialAlgebra& a, std::size_t query_len, std::size_t work_len) {
  require_query(query_len, work_len);
  Envelope env(a, work_len);
  if (!unit_map(env).injective) throw InternalError("saturate: unit map is not injective");
  const auto singles = singletons_by_class(env);
  TableAlgebra::Entries entries;
  for (const Word& w : enumerate_words(a.graph(), query_len)) {
    const auto& bs = singles[env.class_of(w)];
    if (!bs.empty()) entries.emplace(w, bs[0]);
  }
  return TableAlgebra(a.graph(), std::move(entries), std::max<std::size_t>(query_len, 1));
}

// ---------------------------------------------------- universal property

UniversalPropertyResult check_universal_property(const PartialAlgebra& a, const Monoid& target,
                                                 const Subset& target_subset, std::size_t query_len,
                                                 std::size_t work_len) {
  using Status = UniversalPropertyResult::Status;
  require_query(query_len, work_len);
  if (!a.graph().is_bouquet()) throw InputError("check_universal_property: monoid-variant algebras only");
  UniversalPropertyResult res;
  const InducedAlgebra u(target, target_subset);
  const auto p_members = target_subset.members();

  // Left: carrier maps X -> P that are morphisms a -> U(target, P) up to query_len.
  const auto domain = [&] {
    std::vector<std::pair<Word, Elem>> d;
    for (const Word& w : enumerate_words(a.graph(), std::min(query_len, a.effective_bound())))
      if (auto v = a.evaluate(w)) d.emplace_back(w, *v);
    return d;
  }();
  std::vector<TotalMap> left;
  for (const TotalMap& f : all_total_maps(a.carrier(), u.carrier())) {
    bool ok = true;
    for (const auto& [w, v] : domain) {
      if (u.evaluate(map_word(f, w)) != std::optional<Elem>(f(v))) { ok = false; break; }
    }
    if (ok) left.push_back(f);
  }

  // Right: the class monoid generated by the distinguished classes, closed
  // under multiplication within work_len.
  Envelope env(a, work_len);
  std::vector<std::size_t> gen{env.class_of(Word())};
  for (Elem c : env.distinguished().members()) gen.push_back(c);
  std::sort(gen.begin(), gen.end());
  gen.erase(std::unique(gen.begin(), gen.end()), gen.end());
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < gen.size(); ++i)
      for (std::size_t j = 0; j < gen.size(); ++j) {
        auto m = env.multiply(gen[i], gen[j]);
        if (!m) {
          res.status = Status::Inconclusive;
          res.detail = "class monoid not closed within work_len; raise work_len";
          return res;
        }
        if (!std::binary_search(gen.begin(), gen.end(), *m)) {
          gen.insert(std::lower_bound(gen.begin(), gen.end(), *m), *m);
          grew = true;
        }
      }
  }
  auto slot = [&](std::size_t c) { return static_cast<std::size_t>(std::lower_bound(gen.begin(), gen.end(), c) - gen.begin()); };
  const std::size_t unit_slot = slot(env.class_of(Word()));

  const std::size_t ny = target.size();
  double combos = 1;
  for (std::size_t i = 0; i < gen.size(); ++i) combos *= static_cast<double>(ny);
  if (combos > static_cast<double>(word_budget())) throw BudgetError("check_universal_property: too many candidate maps");

  std::vector<std::vector<Elem>> right;
  std::vector<Elem> h(gen.size(), 0);
  while (true) {
    bool ok = h[unit_slot] == target.unit();
    for (std::size_t i = 0; ok && i < gen.size(); ++i)
      for (std::size_t j = 0; ok && j < gen.size(); ++j)
        ok = h[slot(*env.multiply(gen[i], gen[j]))] == target.mult(h[i], h[j]);
    for (Elem d : env.distinguished().members())
      if (ok && !target_subset.contains(h[slot(d)])) ok = false;
    if (ok) right.push_back(h);
    std::size_t k = h.size();
    while (k > 0 && h[k - 1] + 1 == ny) h[--k] = 0;
    if (k == 0) break;
    ++h[k - 1];
  }

  // Transpose f |-> f^ with f^(class(w)) = product of f over w.
  std::vector<std::vector<Elem>> images;
  bool all_in_right = true;
  for (const TotalMap& f : left) {
    std::vector<Elem> fh(gen.size());
    for (std::size_t i = 0; i < gen.size(); ++i) {
      Elem acc = target.unit();
      for (Elem x : env.representative(gen[i]).letters) acc = target.mult(acc, p_members[f(x)]);
      fh[i] = acc;
    }
    if (!std::binary_search(right.begin(), right.end(), fh)) all_in_right = false;
    images.push_back(std::move(fh));
  }
  res.left_count = left.size();
  res.right_count = right.size();
  auto sorted = images;
  std::sort(sorted.begin(), sorted.end());
  res.transpose_injective = all_in_right && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  res.transpose_surjective = all_in_right && sorted == right;
  const bool bij = res.transpose_injective && res.transpose_surjective && res.left_count == res.right_count;
  res.status = bij ? Status::Verified : Status::Failed;
  if (!bij) res.detail = all_in_right ? "transposition is not a bijection" : "a transpose is not a subset-preserving monoid map";
  return res;
}

}  // namespace parakit
