#include "io.hpp"

#include <fstream>
#include <sstream>

#include "parakit/envelope.hpp"
#include "parakit/errors.hpp"

namespace parakit::io {

namespace {

std::string where(const std::string& field) { return "input: " + field + ": "; }

Elem resolve(const FinSet& s, const json& ref, const std::string& field) {
  if (ref.is_number_unsigned()) {
    const auto i = ref.get<std::uint64_t>();
    if (i >= s.size()) throw InputError(where(field) + "index " + std::to_string(i) + " out of range");
    return static_cast<Elem>(i);
  }
  if (ref.is_string()) {
    const std::string label = ref.get<std::string>();
    if (auto e = s.find_label(label)) return *e;
    if (!s.has_labels() && !label.empty() && label.find_first_not_of("0123456789") == std::string::npos) {
      const auto i = std::stoull(label);
      if (i < s.size()) return static_cast<Elem>(i);
    }
    throw InputError(where(field) + "unknown element '" + label + "'");
  }
  throw InputError(where(field) + "expected a label or an index");
}

const json& need(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where(ctx) + "missing field '" + key + "'");
  return j.at(key);
}

FinSet labelled_set(const json& j, const std::string& field) {
  if (j.is_number_unsigned()) return FinSet(j.get<std::size_t>());
  if (!j.is_array()) throw InputError(where(field) + "expected a list of labels or a size");
  std::vector<std::string> labels;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError(where(field) + "labels must be strings");
    labels.push_back(x.get<std::string>());
  }
  return FinSet(std::move(labels));
}

Monoid parse_monoid(const json& j) {
  if (j.contains("cyclic")) return Monoid::cyclic(j.at("cyclic").get<std::size_t>());
  FinSet c = labelled_set(need(j, "elements", "monoid"), "monoid.elements");
  const Elem unit = resolve(c, need(j, "unit", "monoid"), "monoid.unit");
  const json& rows = need(j, "table", "monoid");
  if (!rows.is_array() || rows.size() != c.size()) throw InputError(where("monoid.table") + "expected one row per element");
  std::vector<std::vector<Elem>> t;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != c.size()) throw InputError(where("monoid.table") + "row of the wrong length");
    std::vector<Elem> r;
    for (const auto& x : row) r.push_back(resolve(c, x, "monoid.table"));
    t.push_back(std::move(r));
  }
  return Monoid(std::move(c), unit, std::move(t));
}

Subset parse_subset(const FinSet& ambient, const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(where(field) + "expected a list");
  std::vector<Elem> members;
  for (const auto& x : j) members.push_back(resolve(ambient, x, field));
  return Subset::of(ambient, members);
}

Graph parse_graph(const json& j, const char* edges_key) {
  FinSet nodes = labelled_set(need(j, "nodes", "graph"), "nodes");
  const json& es = need(j, edges_key, "graph");
  if (!es.is_array()) throw InputError(where(edges_key) + "expected a list");
  std::vector<std::string> names;
  std::vector<Elem> dom, cod;
  for (const auto& e : es) {
    names.push_back(need(e, "name", edges_key).get<std::string>());
    dom.push_back(resolve(nodes, need(e, "dom", edges_key), edges_key));
    cod.push_back(resolve(nodes, need(e, "cod", edges_key), edges_key));
  }
  FinSet edges(std::move(names));
  return Graph(nodes, edges, TotalMap(edges, nodes, std::move(dom)), TotalMap(edges, nodes, std::move(cod)));
}

Word parse_json_word(const Graph& g, const json& entry, const char* key) {
  const json& letters = need(entry, key, "entries");
  if (!letters.is_array()) throw InputError(where("entries") + "a word is a list of letters");
  Word w;
  for (const auto& x : letters) w.letters.push_back(resolve(g.edges(), x, "entries"));
  if (!w.empty()) w.base = g.dom(w.letters.front());
  else if (entry.contains("at")) w.base = resolve(g.nodes(), entry.at("at"), "entries.at");
  else if (!g.is_bouquet()) throw InputError(where("entries") + "empty path needs 'at'");
  return w;
}

AlgebraPtr parse_table(const json& j, Graph g) {
  TableAlgebra::Entries entries;
  const json& es = need(j, "entries", "table");
  if (!es.is_array()) throw InputError(where("entries") + "expected a list");
  const char* key = g.is_bouquet() && !j.contains("nodes") ? "word" : "path";
  for (const auto& e : es) {
    Word w = parse_json_word(g, e, e.contains("word") ? "word" : key);
    const Elem v = resolve(g.edges(), need(e, "value", "entries"), "entries.value");
    if (!entries.emplace(w, v).second) throw InputError(where("entries") + "duplicate word " + format_word(g, w));
  }
  // Unlisted singletons evaluate to themselves.
  for (Elem x = 0; x < g.edges().size(); ++x) entries.emplace(eta(g, x), x);
  std::optional<std::size_t> bound;
  if (j.contains("declared_bound")) bound = j.at("declared_bound").get<std::size_t>();
  return std::make_shared<const TableAlgebra>(std::move(g), std::move(entries), bound);
}

FiniteCategory parse_category(const json& j) {
  Graph g = parse_graph(j, "arrows");
  const json& ids = need(j, "identities", "category");
  std::vector<Elem> id_table(g.nodes().size());
  for (Node u = 0; u < g.nodes().size(); ++u) {
    const std::string label = g.nodes().label(u);
    if (!ids.contains(label)) throw InputError(where("identities") + "no identity for " + label);
    id_table[u] = resolve(g.edges(), ids.at(label), "identities");
  }
  const std::size_t n = g.edges().size();
  FiniteCategory::Table t(n, std::vector<std::optional<Elem>>(n));
  for (Elem f = 0; f < n; ++f) {
    t[id_table[g.dom(f)]][f] = f;
    t[f][id_table[g.cod(f)]] = f;
  }
  if (j.contains("composites"))
    for (const auto& c : j.at("composites")) {
      const Elem f = resolve(g.edges(), need(c, "first", "composites"), "composites.first");
      const Elem s = resolve(g.edges(), need(c, "then", "composites"), "composites.then");
      t[f][s] = resolve(g.edges(), need(c, "is", "composites"), "composites.is");
    }
  TotalMap ids_map(g.nodes(), g.edges(), std::move(id_table));
  return FiniteCategory(std::move(g), std::move(ids_map), std::move(t));
}

AlgebraPtr parse_algebra(const json& j, const std::string& kind) {
  if (kind == "monoid_subset") {
    Monoid m = parse_monoid(need(j, "monoid", kind));
    Subset p = parse_subset(m.carrier(), need(j, "subset", kind), "subset");
    return std::make_shared<const InducedAlgebra>(std::move(m), std::move(p));
  }
  if (kind == "table") return parse_table(j, Graph::bouquet(labelled_set(need(j, "carrier", kind), "carrier")));
  if (kind == "path_table") return parse_table(j, parse_graph(j, "edges"));
  if (kind == "category_subset") {
    FiniteCategory c = parse_category(j);
    Subset p = parse_subset(c.graph().edges(), need(j, "subset", kind), "subset");
    return std::make_shared<const CategoryPathAlgebra>(std::move(c), std::move(p));
  }
  throw InputError(where("kind") + "'" + kind + "' is not an algebra kind");
}

TotalMap parse_map(const FinSet& src, const FinSet& dst, const json& j, const std::string& field) {
  std::vector<Elem> t(src.size());
  if (j.is_array()) {
    if (j.size() != src.size()) throw InputError(where(field) + "expected one image per element");
    for (std::size_t i = 0; i < src.size(); ++i) t[i] = resolve(dst, j[i], field);
  } else if (j.is_object()) {
    for (Elem a = 0; a < src.size(); ++a) {
      const std::string label = src.label(a);
      if (!j.contains(label)) throw InputError(where(field) + "no image for " + label);
      t[a] = resolve(dst, j.at(label), field);
    }
    if (j.size() != src.size()) throw InputError(where(field) + "unknown source element");
  } else {
    throw InputError(where(field) + "expected a list or an object");
  }
  return TotalMap(src, dst, std::move(t));
}

Bounds parse_bounds(const json& j) {
  Bounds b;
  if (!j.contains("bounds")) return b;
  const json& x = j.at("bounds");
  if (x.contains("query_len")) b.query_len = x.at("query_len").get<std::size_t>();
  if (x.contains("work_len")) b.work_len = x.at("work_len").get<std::size_t>();
  return b;
}

}  // namespace

bool is_algebra_kind(const std::string& kind) {
  return kind == "monoid_subset" || kind == "table" || kind == "category_subset" || kind == "path_table";
}

bool is_paracategory(const PartialAlgebra& a) {
  return !a.graph().is_bouquet() || dynamic_cast<const CategoryPathAlgebra*>(&a) != nullptr;
}

Document parse_document(const json& j) {
  try {
    Document d;
    d.kind = need(j, "kind", "document").get<std::string>();
    d.bounds = parse_bounds(j);
    if (is_algebra_kind(d.kind)) {
      d.algebra = parse_algebra(j, d.kind);
    } else if (d.kind == "morphism" || d.kind == "functor") {
      const Document s = parse_document(need(j, "source", d.kind));
      const Document t = parse_document(need(j, "target", d.kind));
      if (!s.algebra || !t.algebra) throw InputError(where(d.kind) + "source and target must be algebras");
      const bool functor = d.kind == "functor";
      const char* arrows = functor ? "arrow_map" : "map";
      const char* objects = functor ? "object_map" : "node_map";
      TotalMap f1 = parse_map(s.algebra->carrier(), t.algebra->carrier(), need(j, arrows, d.kind), arrows);
      const Graph& sg = s.algebra->graph();
      const Graph& tg = t.algebra->graph();
      TotalMap f0 = j.contains(objects) ? parse_map(sg.nodes(), tg.nodes(), j.at(objects), objects)
                    : tg.nodes().size() == 1 ? TotalMap::constant(sg.nodes(), tg.nodes(), 0)
                                             : throw InputError(where(d.kind) + "missing field '" + objects + "'");
      d.morphism.emplace(s.algebra, t.algebra, std::move(f0), std::move(f1));
    } else {
      throw InputError(where("kind") + "unknown kind '" + d.kind + "'");
    }
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("input: ") + e.what());
  }
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
  return parse_document(j);
}

// ------------------------------------------------------------- writing

namespace {

json labels_of(const FinSet& s) {
  json out = json::array();
  for (Elem a = 0; a < s.size(); ++a) out.push_back(s.label(a));
  return out;
}

json monoid_json(const Monoid& m) {
  json t = json::array();
  for (Elem a = 0; a < m.size(); ++a) {
    json row = json::array();
    for (Elem b = 0; b < m.size(); ++b) row.push_back(m.carrier().label(m.mult(a, b)));
    t.push_back(std::move(row));
  }
  return {{"elements", labels_of(m.carrier())}, {"unit", m.carrier().label(m.unit())}, {"table", std::move(t)}};
}

json subset_json(const FinSet& ambient, const std::vector<Elem>& members) {
  json out = json::array();
  for (Elem m : members) out.push_back(ambient.label(m));
  return out;
}

json edges_json(const Graph& g) {
  json es = json::array();
  for (Elem e = 0; e < g.edges().size(); ++e)
    es.push_back({{"name", g.edges().label(e)}, {"dom", g.nodes().label(g.dom(e))}, {"cod", g.nodes().label(g.cod(e))}});
  return es;
}

json category_json(const FiniteCategory& c, const std::vector<Elem>& subset) {
  const Graph& g = c.graph();
  json ids = json::object();
  for (Node u = 0; u < g.nodes().size(); ++u) ids[g.nodes().label(u)] = g.edges().label(c.identity(u));
  json comps = json::array();
  for (Elem f = 0; f < g.edges().size(); ++f)
    for (Elem s = 0; s < g.edges().size(); ++s) {
      if (g.cod(f) != g.dom(s)) continue;
      if (f == c.identity(g.dom(f)) || s == c.identity(g.cod(f))) continue;
      comps.push_back({{"first", g.edges().label(f)}, {"then", g.edges().label(s)}, {"is", g.edges().label(c.comp(f, s))}});
    }
  return {{"kind", "category_subset"}, {"nodes", labels_of(g.nodes())}, {"arrows", edges_json(g)}, {"identities", ids},
          {"composites", comps}, {"subset", subset_json(g.edges(), subset)}};
}

json table_json(const Graph& g, const TableAlgebra::Entries& entries, std::size_t bound) {
  const bool bouquet = g.is_bouquet();
  json es = json::array();
  for (const auto& [w, v] : entries) {
    json letters = json::array();
    for (Elem x : w.letters) letters.push_back(g.edges().label(x));
    json e = {{bouquet ? "word" : "path", std::move(letters)}, {"value", g.edges().label(v)}};
    if (!bouquet && w.empty()) e["at"] = g.nodes().label(w.base);
    es.push_back(std::move(e));
  }
  json out = bouquet ? json{{"kind", "table"}, {"carrier", labels_of(g.edges())}}
                     : json{{"kind", "path_table"}, {"nodes", labels_of(g.nodes())}, {"edges", edges_json(g)}};
  out["declared_bound"] = bound;
  out["entries"] = std::move(es);
  return out;
}

}  // namespace

json algebra_to_json(const PartialAlgebra& a, std::size_t bound) {
  if (const auto* u = dynamic_cast<const InducedAlgebra*>(&a))
    return {{"kind", "monoid_subset"}, {"monoid", monoid_json(u->monoid())},
            {"subset", subset_json(u->monoid().carrier(), u->subset().members())}};
  if (const auto* c = dynamic_cast<const CategoryPathAlgebra*>(&a)) return category_json(c->category(), c->subset().members());
  if (const auto* t = dynamic_cast<const TableAlgebra*>(&a)) return table_json(t->graph(), t->entries(), t->declared_bound());
  if (const auto* l = dynamic_cast<const LiftedAlgebra*>(&a)) {
    // A lift of an induced or category algebra is again one, on a smaller subset.
    std::vector<Elem> members;
    for (Elem m : l->subset().members()) members.push_back(m);
    if (const auto* u = dynamic_cast<const InducedAlgebra*>(l->base().get())) {
      const auto outer = u->subset().members();
      std::vector<Elem> in_monoid;
      for (Elem m : members) in_monoid.push_back(outer[m]);
      return {{"kind", "monoid_subset"}, {"monoid", monoid_json(u->monoid())},
              {"subset", subset_json(u->monoid().carrier(), in_monoid)}};
    }
  }
  const std::size_t b = std::min(bound, a.effective_bound());
  return table_json(a.graph(), tabulate(a, b).entries(), std::max<std::size_t>(b, 1));
}

json morphism_to_json(const AlgMorphism& f, std::size_t bound) {
  json m = json::object();
  for (Elem a = 0; a < f.map.src().size(); ++a) m[f.map.src().label(a)] = f.map.dst().label(f.map(a));
  json out = {{"kind", "morphism"}, {"source", algebra_to_json(*f.source, bound)},
              {"target", algebra_to_json(*f.target, bound)}, {"map", std::move(m)}};
  if (!f.source->graph().is_bouquet() || !f.target->graph().is_bouquet()) {
    json n = json::object();
    for (Node u = 0; u < f.node_map.src().size(); ++u) n[f.node_map.src().label(u)] = f.node_map.dst().label(f.node_map(u));
    out["node_map"] = std::move(n);
  }
  return out;
}

// ----------------------------------------------------------- word syntax

namespace {
std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Elem letter(const Graph& g, const std::string& token) { return resolve(g.edges(), json(trim(token)), "word"); }

// Splits "body@node" and returns the node, if any.
std::optional<Node> split_base(const Graph& g, std::string& text) {
  const auto at = text.rfind('@');
  if (at == std::string::npos) return std::nullopt;
  const std::string node = trim(text.substr(at + 1));
  text = trim(text.substr(0, at));
  return resolve(g.nodes(), json(node), "word base");
}

std::vector<Elem> letters_of(const Graph& g, std::string body) {
  body = trim(body);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw InputError("word: unbalanced brackets in '" + body + "'");
    body = trim(body.substr(1, body.size() - 2));
  }
  std::vector<Elem> out;
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(letter(g, tok));
  return out;
}
}  // namespace

Word parse_word(const Graph& g, const std::string& text) {
  std::string body = trim(text);
  const auto base = split_base(g, body);
  Word w(letters_of(g, body));
  if (!w.empty()) w.base = g.dom(w.letters.front());
  else if (base) w.base = *base;
  else if (!g.is_bouquet()) throw InputError("word: the empty path needs '@node'");
  if (base && *base != w.base) throw InputError("word: '@' node does not match the first letter");
  require_path(g, w);
  return w;
}

Nesting parse_nesting(const Graph& g, const std::string& text) {
  std::string body = trim(text);
  const auto base = split_base(g, body);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw InputError("nesting: expected [[...],...] but got '" + text + "'");
  body = trim(body.substr(1, body.size() - 2));
  std::vector<std::vector<Elem>> pieces;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == ',' || body[i] == ' ') {
      ++i;
      continue;
    }
    if (body[i] != '[') throw InputError("nesting: expected '[' in '" + text + "'");
    const auto close = body.find(']', i);
    if (close == std::string::npos) throw InputError("nesting: unbalanced brackets in '" + text + "'");
    pieces.push_back(letters_of(g, body.substr(i, close - i + 1)));
    i = close + 1;
  }
  Nesting n;
  std::optional<Node> start = base;
  for (const auto& p : pieces)
    if (!start && !p.empty()) start = g.dom(p.front());
  if (!start && !g.is_bouquet()) throw InputError("nesting: an all-empty nesting needs '@node'");
  n.base = start.value_or(0);
  Node at = n.base;
  for (auto& p : pieces) {
    Word w(std::move(p), at);
    require_path(g, w);
    at = end_node(g, w);
    n.inner.push_back(std::move(w));
  }
  if (!is_valid_nesting(g, n)) throw InputError("nesting: pieces do not form a path");
  return n;
}

std::string format_word(const Graph& g, const Word& w) {
  std::string s = to_string(w, g.edges());
  if (w.empty() && !g.is_bouquet()) s += "@" + g.nodes().label(w.base);
  return s;
}

std::string format_nesting(const Graph& g, const Nesting& n) {
  std::string s = to_string(n, g.edges());
  if (flat_length(n) == 0 && !g.is_bouquet()) s += "@" + g.nodes().label(n.base);
  return s;
}

std::string format_witness(const Graph& g, const Witness& w) {
  if (const auto* word = std::get_if<Word>(&w)) return format_word(g, *word);
  return format_nesting(g, std::get<Nesting>(w));
}

}  // namespace parakit::io
