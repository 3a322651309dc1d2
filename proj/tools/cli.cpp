#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "io.hpp"
#include "parakit/envelope.hpp"
#include "parakit/errors.hpp"
#include "parakit/morphisms.hpp"
#include "parakit/paracat.hpp"

namespace parakit::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::optional<std::size_t> query_len;
  std::optional<std::size_t> work_len;
  bool json = false;
  bool timing = false;
  // command specific
  bool print_classes = false;
  bool certify = false;
  std::string output;
  std::string target;
  std::string witness;
  std::string w1, w2;
};

struct Bounds {
  std::size_t query = 4;
  std::size_t work = 6;
};

Bounds resolve_bounds(const Options& o, const io::Document& d) {
  Bounds b;
  const auto q = o.query_len ? o.query_len : d.bounds.query_len;
  const auto w = o.work_len ? o.work_len : d.bounds.work_len;
  if (q) b.query = *q;
  b.work = w ? *w : b.query + 2;
  if (b.work < b.query) throw InputError("work-len must be at least query-len");
  return b;
}

const char* verdict_name(int code) {
  switch (code) {
    case kPass: return "pass";
    case kFail: return "fail";
    default: return "inconclusive";
  }
}

struct Report {
  Json body;
  int code = kPass;

  Report(const std::string& command, const std::string& file) {
    body["command"] = command;
    body["file"] = file;
  }
  void set_bound(std::size_t b) { body["bound_used"] = b; }
  void add_check(const std::string& name, const Verdict& v, const Graph& g) {
    Json c;
    c["name"] = name;
    c["verdict"] = v.holds ? "pass" : "fail";
    c["bound"] = v.bound;
    if (v.witness) c["witness"] = io::format_witness(g, *v.witness);
    if (!v.detail.empty()) c["detail"] = v.detail;
    body["checks"].push_back(std::move(c));
    if (!v.holds && code == kPass) code = kFail;
  }
};

Json certificate_json(const PartialAlgebra& a, const Word& from, const std::vector<RewriteStep>& chain) {
  const Graph& g = a.graph();
  Json steps = Json::array();
  Word w = from;
  for (const RewriteStep& s : chain) {
    auto next = apply_step(a, w, s);
    if (!next) throw InternalError("certificate does not replay");
    steps.push_back({{"position", s.position},
                     {"rule", io::format_word(g, s.rule)},
                     {"direction", s.direction == StepDirection::Contract ? "contract" : "expand"},
                     {"result", io::format_word(g, *next)}});
    w = std::move(*next);
  }
  return steps;
}

// ------------------------------------------------------------ rendering

void render_text(const Json& r, std::ostream& out) {
  out << r["command"].get<std::string>() << " " << r["file"].get<std::string>() << "\n";
  if (r.contains("bound_used")) out << "bound used: " << r["bound_used"].get<std::size_t>() << "\n";
  if (r.contains("checks"))
    for (const auto& c : r["checks"]) {
      out << "  " << std::left << std::setw(22) << c["name"].get<std::string>() << c["verdict"].get<std::string>();
      out << "  (bound " << c["bound"].get<std::size_t>() << ")";
      if (c.contains("witness")) out << "  witness " << c["witness"].get<std::string>();
      if (c.contains("detail")) out << "  " << c["detail"].get<std::string>();
      out << "\n";
    }
  for (const auto& [key, value] : r.items()) {
    if (key == "command" || key == "file" || key == "bound_used" || key == "checks" || key == "verdict" ||
        key == "classes" || key == "certificates" || key == "timing_s")
      continue;
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  if (r.contains("classes")) {
    out << "classes:\n";
    for (const auto& c : r["classes"])
      out << "  " << std::setw(4) << c["index"].get<std::size_t>() << "  " << std::setw(16)
          << c["representative"].get<std::string>() << " members " << c["members"].get<std::size_t>()
          << (c["distinguished"].get<bool>() ? "  distinguished" : "") << "\n";
  }
  if (r.contains("certificates"))
    for (const auto& c : r["certificates"]) {
      out << "certificate " << c["from"].get<std::string>() << " ~ " << c["to"].get<std::string>() << " ("
          << c["steps"].size() << " steps)\n";
      std::string at = c["from"].get<std::string>();
      for (const auto& s : c["steps"]) {
        out << "  " << at << "  " << s["direction"].get<std::string>() << " " << s["rule"].get<std::string>() << " at "
            << s["position"].get<std::size_t>() << "  ->  " << s["result"].get<std::string>() << "\n";
        at = s["result"].get<std::string>();
      }
    }
  if (r.contains("timing_s")) out << "time: " << std::fixed << std::setprecision(3) << r["timing_s"].get<double>() << " s\n";
  out << "verdict: " << r["verdict"].get<std::string>() << "\n";
}

// ------------------------------------------------------------- commands

AlgebraPtr need_algebra(const io::Document& d) {
  if (!d.algebra) throw InputError("expected an algebra document, got kind '" + d.kind + "'");
  return d.algebra;
}

const AlgMorphism& need_morphism(const io::Document& d) {
  if (!d.morphism) throw InputError("expected a morphism or functor document, got kind '" + d.kind + "'");
  return *d.morphism;
}

// Replays a reported witness: true iff it exhibits a failure.
bool replay_witness(const PartialAlgebra& a, const std::string& text, std::size_t bound, Json& out) {
  const Graph& g = a.graph();
  std::string t = text;
  t.erase(0, t.find_first_not_of(' '));
  if (t.rfind("[[", 0) == 0 || (t.rfind("[]", 0) == 0 && t.size() > 2 && t[2] != '@')) {
    const Nesting n = io::parse_nesting(g, t);
    Word results({}, n.base);
    bool pieces = true;
    for (const Word& p : n.inner) {
      auto v = a.evaluate(p);
      if (!v) {
        pieces = false;
        break;
      }
      results.letters.push_back(*v);
    }
    out["pieces_defined"] = pieces;
    if (!pieces) return false;
    const auto flat = a.evaluate(mu(n));
    const auto outer = a.evaluate(results);
    out["word_of_results"] = io::format_word(g, results);
    out["flattening_defined"] = flat.has_value();
    out["results_defined"] = outer.has_value();
    const bool lax_fail = outer && (!flat || *flat != *outer);
    const bool sat_fail = flat && !outer;
    if (lax_fail) out["violates"] = "laxity";
    if (sat_fail) out["violates"] = "saturation";
    return lax_fail || sat_fail;
  }
  const Word w = io::parse_word(g, t);
  if (w.empty() && !a.defined(w)) {
    out["violates"] = "empty word undefined";
    return true;
  }
  if (w.size() == 1 && a.evaluate(w) != std::optional<Elem>(w.letters[0])) {
    out["violates"] = "unit";
    return true;
  }
  // Splices inside w exactly as the elementary axioms do.
  const auto whole = a.evaluate(w);
  for (std::size_t i = 0; i <= w.size(); ++i) {
    const Node at = i == 0 ? w.base : g.cod(w.letters[i - 1]);
    for (std::size_t j = i; j <= w.size(); ++j) {
      auto vy = a.evaluate(Word(std::vector<Elem>(w.letters.begin() + i, w.letters.begin() + j), at));
      if (!vy) continue;
      Word s({}, w.base);
      s.letters.assign(w.letters.begin(), w.letters.begin() + i);
      s.letters.push_back(*vy);
      s.letters.insert(s.letters.end(), w.letters.begin() + j, w.letters.end());
      if (s.size() <= bound && a.evaluate(s) != whole) {
        out["violates"] = "splice";
        out["spliced"] = io::format_word(g, s);
        return true;
      }
    }
  }
  return false;
}

Report cmd_check(const Options& o, const io::Document& d, const Bounds& b) {
  Report r("check", o.file);
  if (d.morphism) {
    r.set_bound(b.query);
    r.add_check(d.kind == "functor" ? "functor" : "morphism", check_morphism(*d.morphism, b.query),
                d.morphism->source->graph());
    return r;
  }
  const AlgebraPtr a = need_algebra(d);
  const Graph& g = a->graph();
  const std::size_t bound = std::min(b.query, a->effective_bound());
  r.set_bound(bound);
  if (!o.witness.empty()) {
    Json replay;
    const bool failed = replay_witness(*a, o.witness, bound, replay);
    replay["witness"] = o.witness;
    r.body["replay"] = std::move(replay);
    r.code = failed ? kFail : kPass;
    return r;
  }
  r.add_check("unit", check_unit(*a), g);
  r.add_check("laxity", check_laxity(*a, bound), g);
  r.add_check("saturation", check_saturation(*a, bound), g);
  if (io::is_paracategory(*a)) r.add_check("freyd_axioms", check_freyd_axioms(*a, bound), g);
  return r;
}

Report cmd_envelope(const Options& o, const io::Document& d, const Bounds& b) {
  Report r("envelope", o.file);
  const AlgebraPtr a = need_algebra(d);
  const Graph& g = a->graph();
  const std::size_t query = std::min(b.query, b.work);
  const Envelope env(*a, b.work);
  r.body["work_len"] = b.work;
  r.set_bound(query);
  r.body["num_classes"] = env.num_classes();
  r.body["distinguished"] = env.distinguished().count();
  const auto unit = unit_map(env);
  r.body["unit_injective"] = unit.injective;
  const auto rec = check_envelope_recovery(*a, query, b.work);
  r.add_check("recovery", rec.recovery, g);
  r.add_check("saturation", rec.saturation, g);
  if (o.print_classes) {
    Json classes = Json::array();
    for (std::size_t c = 0; c < env.num_classes(); ++c)
      classes.push_back({{"index", c},
                         {"representative", io::format_word(g, env.representative(c))},
                         {"members", env.member_count(c)},
                         {"distinguished", env.distinguished().contains(static_cast<Elem>(c))}});
    r.body["classes"] = std::move(classes);
  }
  if (o.certify) {
    // Words identified with a singleton they do not evaluate to.
    const Congruence& cong = env.congruence();
    Json certs = Json::array();
    for (const Word& w : enumerate_words(g, query)) {
      if (w.size() == 1) continue;
      const auto value = a->evaluate(w);
      for (Elem x = 0; x < g.edges().size(); ++x) {
        if (value == std::optional<Elem>(x) || cong.class_of(w) != unit.assignment(x)) continue;
        const Word target = eta(g, x);
        auto chain = cong.certificate(w, target);
        if (!chain) throw InternalError("no certificate for equivalent words");
        certs.push_back({{"from", io::format_word(g, w)},
                         {"to", io::format_word(g, target)},
                         {"steps", certificate_json(*a, w, *chain)}});
      }
    }
    r.body["certificates"] = std::move(certs);
  }
  return r;
}

void write_json(const std::string& path, const io::json& j) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << j.dump(2) << "\n";
}

Report cmd_saturate(const Options& o, const io::Document& d, const Bounds& b) {
  Report r("saturate", o.file);
  const AlgebraPtr a = need_algebra(d);
  const Graph& g = a->graph();
  const std::size_t query = std::min(b.query, b.work);
  const TableAlgebra sat = saturate(*a, query, b.work);
  r.set_bound(query);
  r.body["work_len"] = b.work;
  Json added = Json::array();
  for (const auto& [w, v] : sat.entries())
    if (a->evaluate(w) != std::optional<Elem>(v)) added.push_back(io::format_word(g, w) + " -> " + g.edges().label(v));
  r.body["entries"] = sat.entries().size();
  r.body["added"] = std::move(added);
  r.add_check("saturation_of_result", check_saturation(sat, query), g);
  if (!o.output.empty()) {
    write_json(o.output, io::algebra_to_json(sat, query));
    r.body["output"] = o.output;
  }
  return r;
}

Report cmd_word_eq(const Options& o, const io::Document& d, const Bounds& b) {
  Report r("word-eq", o.file);
  const AlgebraPtr a = need_algebra(d);
  const Graph& g = a->graph();
  const Word w1 = io::parse_word(g, o.w1);
  const Word w2 = io::parse_word(g, o.w2);
  if (w1.size() > b.work || w2.size() > b.work) throw InputError("word-eq: words must have length <= work_len");
  const Congruence c = Congruence::close(*a, b.work);
  r.body["work_len"] = b.work;
  const bool eq = word_eq(c, w1, w2);
  r.body["equivalent"] = eq;
  if (eq) {
    auto chain = c.certificate(w1, w2);
    if (!chain) throw InternalError("no certificate for equivalent words");
    r.body["certificates"] = Json::array(
        {{{"from", io::format_word(g, w1)}, {"to", io::format_word(g, w2)}, {"steps", certificate_json(*a, w1, *chain)}}});
  }
  r.code = eq ? kPass : kFail;
  return r;
}

Report cmd_kleene(const Options& o, const io::Document& d, const Bounds& b) {
  Report r("kleene", o.file);
  const AlgMorphism& f = need_morphism(d);
  r.set_bound(b.query);
  r.add_check("kleene", is_kleene(f, b.query), f.source->graph());
  if (d.kind == "functor") {
    const ParaFunctor pf(Paracategory(f.source), Paracategory(f.target), f.node_map, f.map);
    r.add_check("kleene_functor", is_kleene_functor(pf, b.query), f.source->graph());
  }
  return r;
}

Report cmd_factor(const Options& o, const io::Document& d, const Bounds& b) {
  Report r("factor", o.file);
  const AlgMorphism& f = need_morphism(d);
  r.set_bound(b.query);
  const Factorisation fac = factor(f, b.query);
  r.body["image_size"] = fac.kleene.source->carrier().size();
  r.body["epi_surjective"] = fac.epi.map.surjective();
  r.body["composite_matches"] = fac.composite_matches;
  r.add_check("epi_is_morphism", fac.epi_is_morphism, f.source->graph());
  r.add_check("kleene_part_is_kleene", fac.kleene_is_kleene, fac.kleene.source->graph());
  if (!fac.composite_matches || !fac.epi.map.surjective()) r.code = kFail;
  if (!o.output.empty()) {
    write_json(o.output + ".epi.json", io::morphism_to_json(fac.epi, b.query));
    write_json(o.output + ".kleene.json", io::morphism_to_json(fac.kleene, b.query));
    r.body["outputs"] = Json::array({o.output + ".epi.json", o.output + ".kleene.json"});
  }
  return r;
}

Report cmd_universal(const Options& o, const io::Document& d, const Bounds& b) {
  Report r("universal", o.file);
  const AlgebraPtr a = need_algebra(d);
  const io::Document t = io::load_document(o.target);
  const auto* u = dynamic_cast<const InducedAlgebra*>(t.algebra.get());
  if (!u) throw InputError("universal: --target must be a monoid_subset document");
  const std::size_t query = std::min(b.query, b.work);
  const auto res = check_universal_property(*a, u->monoid(), u->subset(), query, b.work);
  r.set_bound(query);
  r.body["work_len"] = b.work;
  r.body["target"] = o.target;
  r.body["left_count"] = res.left_count;
  r.body["right_count"] = res.right_count;
  r.body["transpose_injective"] = res.transpose_injective;
  r.body["transpose_surjective"] = res.transpose_surjective;
  if (!res.detail.empty()) r.body["detail"] = res.detail;
  using Status = UniversalPropertyResult::Status;
  r.code = res.status == Status::Verified ? kPass : res.status == Status::Failed ? kFail : kInconclusive;
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite partial algebras: law checks, envelopes, saturation and factorisation", "parakit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "input document")->required();
    sub->add_option("--query-len", o.query_len, "length bound for checked words (default 4)");
    sub->add_option("--work-len", o.work_len, "length bound for the congruence closure (default query-len + 2)");
    sub->add_flag("--json", o.json, "print the report as JSON");
    sub->add_flag("--timing", o.timing, "include wall-clock time in the report");
  };
  using Command = Report (*)(const Options&, const io::Document&, const Bounds&);
  std::vector<std::pair<CLI::App*, Command>> commands;

  auto* check = app.add_subcommand("check", "unit, laxity and saturation (and the elementary axioms for paths)");
  common(check);
  check->add_option("--witness", o.witness, "replay a reported witness instead of searching");
  commands.emplace_back(check, cmd_check);

  auto* envelope = app.add_subcommand("envelope", "bounded enveloping algebra");
  common(envelope);
  envelope->add_flag("--print-classes", o.print_classes, "list every class");
  envelope->add_flag("--certify", o.certify, "rewrite chains for words identified with a foreign singleton");
  commands.emplace_back(envelope, cmd_envelope);

  auto* sat = app.add_subcommand("saturate", "write the saturation as a table document");
  common(sat);
  sat->add_option("-o,--output", o.output, "output document");
  commands.emplace_back(sat, cmd_saturate);

  auto* weq = app.add_subcommand("word-eq", "decide equality of two words in the bounded envelope");
  common(weq);
  weq->add_option("w1", o.w1, "first word, e.g. a,b")->required();
  weq->add_option("w2", o.w2, "second word")->required();
  commands.emplace_back(weq, cmd_word_eq);

  auto* kleene = app.add_subcommand("kleene", "is the morphism Kleene");
  common(kleene);
  commands.emplace_back(kleene, cmd_kleene);

  auto* fac = app.add_subcommand("factor", "epi / Kleene factorisation of a morphism");
  common(fac);
  fac->add_option("-o,--output", o.output, "prefix for the two output documents");
  commands.emplace_back(fac, cmd_factor);

  auto* uni = app.add_subcommand("universal", "verify the hom-set bijection against a monoid with a subset");
  common(uni);
  uni->add_option("--target", o.target, "monoid_subset document")->required();
  commands.emplace_back(uni, cmd_universal);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "parakit: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const io::Document doc = io::load_document(o.file);
    const Bounds b = resolve_bounds(o, doc);
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      Report r = fn(o, doc, b);
      r.body["verdict"] = verdict_name(r.code);
      if (o.timing) r.body["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (o.json) out << r.body.dump(2) << "\n";
      else render_text(r.body, out);
      return r.code;
    }
    return kInputError;
  } catch (const InputError& e) {
    err << "parakit: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetError& e) {
    err << "parakit: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    err << "parakit: internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace parakit::cli
