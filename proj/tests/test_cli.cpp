#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "io.hpp"
#include "parakit/algebra.hpp"
#include "parakit/catalog.hpp"
#include "parakit/errors.hpp"
#include "parakit/words.hpp"

using namespace parakit;
namespace fs = std::filesystem;

namespace {
std::string data(const std::string& name) { return std::string(PARAKIT_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

io::json run_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--json");
  const Run r = run(args);
  CHECK(r.code == expected_code);
  INFO(r.out << r.err);
  return io::json::parse(r.out);
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "parakit_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct BudgetGuard {
  std::uint64_t saved = word_budget();
  ~BudgetGuard() { set_word_budget(saved); }
};
}  // namespace

TEST_CASE("cli: check") {
  CHECK(run({"check", data("z3_01.json")}).code == cli::kPass);
  CHECK(run({"check", data("z3_full.json")}).code == cli::kPass);
  CHECK(run({"check", data("category_c2.json")}).code == cli::kPass);

  const io::json n = run_json({"check", data("table_n.json")}, cli::kFail);
  CHECK(n["verdict"] == "fail");
  CHECK(n["bound_used"] == 4);
  // Queries are capped at the declared bound.
  CHECK(run_json({"check", data("table_n.json"), "--query-len", "5"}, cli::kFail)["bound_used"] == 4);
  CHECK(n["checks"][2]["name"] == "saturation");
  CHECK(n["checks"][2]["witness"] == "[[a,a],[a,a]]");
  CHECK(n["checks"][1]["verdict"] == "pass");

  CHECK(run({"check", data("path_table.json")}).code == cli::kFail);
  // Only singletons are defined: trivially lax and saturated.
  const io::json d = run_json({"check", data("discrete.json"), "--query-len", "3"}, cli::kPass);
  CHECK(d["bound_used"] == 1);
}

TEST_CASE("cli: witness replay") {
  const Run r = run({"check", data("table_n.json"), "--witness", "[[a,a],[a,a]]"});
  CHECK(r.code == cli::kFail);
  CHECK(r.out.find("[[a,a],[a,a]]") != std::string::npos);
  CHECK(run({"check", data("table_n.json"), "--witness", "[[a],[a]]"}).code == cli::kPass);
  CHECK(run({"check", data("table_n.json"), "--witness", "[[c]]"}).code == cli::kInputError);
}

TEST_CASE("cli: output is deterministic") {
  for (const char* cmd : {"check", "envelope"}) {
    const Run a = run({cmd, data("table_n.json"), "--json"});
    const Run b = run({cmd, data("table_n.json"), "--json"});
    CHECK(a.out == b.out);
    const Run c = run({cmd, data("z3_01.json")});
    const Run d = run({cmd, data("z3_01.json")});
    CHECK(c.out == d.out);
  }
}

TEST_CASE("cli: input errors") {
  const fs::path bad = scratch("bad.json");
  write(bad, "{ \"kind\": \"table\", ");
  CHECK(run({"check", bad.string()}).code == cli::kInputError);
  write(bad, R"({"kind": "table", "carrier": ["a"], "entries": [{"word": ["a", "b"], "value": "a"}]})");
  CHECK(run({"check", bad.string()}).code == cli::kInputError);
  write(bad, R"({"kind": "nonsense"})");
  CHECK(run({"check", bad.string()}).code == cli::kInputError);
  CHECK(run({"check", scratch("missing.json").string()}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"envelope", data("z3_01.json"), "--query-len", "5", "--work-len", "4"}).code == cli::kInputError);
}

TEST_CASE("cli: budget exhaustion is inconclusive") {
  BudgetGuard guard;
  set_word_budget(10);
  const Run r = run({"check", data("z3_full.json")});
  CHECK(r.code == cli::kInconclusive);
}

TEST_CASE("cli: envelope") {
  const io::json z = run_json({"envelope", data("z3_01.json")}, cli::kPass);
  CHECK(z["num_classes"] == 3);
  CHECK(z["distinguished"] == 2);
  CHECK(z["unit_injective"] == true);

  const Run classes = run({"envelope", data("z3_01.json"), "--print-classes"});
  CHECK(classes.code == cli::kPass);
  CHECK(classes.out.find("[1,1]") != std::string::npos);

  const io::json n = run_json({"envelope", data("table_n.json"), "--certify"}, cli::kFail);
  bool found = false;
  for (const auto& c : n["certificates"])
    if (c["from"] == "[b,b]" && c["to"] == "[e]") {
      found = true;
      CHECK(c["steps"].size() == 3);
    }
  CHECK(found);
}

TEST_CASE("cli: word-eq") {
  CHECK(run({"word-eq", data("z3_01.json"), "1,1,1", "0"}).code == cli::kPass);
  CHECK(run({"word-eq", data("z3_01.json"), "1,1", "1"}).code == cli::kFail);
  CHECK(run({"word-eq", data("z3_01.json"), "", "0"}).code == cli::kPass);
  const io::json j = run_json({"word-eq", data("table_n.json"), "b,b", "e"}, cli::kPass);
  CHECK(j["equivalent"] == true);
  const auto& steps = j["certificates"][0]["steps"];
  REQUIRE(steps.size() == 3);
  CHECK(steps[2]["result"] == "[e]");
  CHECK(run({"word-eq", data("table_n.json"), "b,b", "q"}).code == cli::kInputError);
}

TEST_CASE("cli: saturate") {
  const fs::path out = scratch("sat_n.json");
  CHECK(run({"saturate", data("table_n.json"), "-o", out.string()}).code == cli::kPass);
  const io::Document doc = io::load_document(out.string());
  const auto& t = dynamic_cast<const TableAlgebra&>(*doc.algebra);
  CHECK(t.entries().size() == table_n()->entries().size() + 4);
  CHECK(run({"check", out.string()}).code == cli::kPass);
}

TEST_CASE("cli: kleene") {
  CHECK(run({"kleene", data("morphism_identity.json")}).code == cli::kPass);
  CHECK(run({"kleene", data("morphism_inclusion.json")}).code == cli::kPass);
  CHECK(run({"kleene", data("functor_inclusion.json")}).code == cli::kPass);
  CHECK(run({"kleene", data("morphism_constant.json")}).code == cli::kInputError);
  CHECK(run({"kleene", data("z3_01.json")}).code == cli::kInputError);
  CHECK(run({"check", data("morphism_constant.json")}).code == cli::kPass);
}

TEST_CASE("cli: factor") {
  const fs::path prefix = scratch("fac");
  const io::json j = run_json({"factor", data("morphism_constant.json"), "-o", prefix.string()}, cli::kPass);
  CHECK(j["image_size"] == 1);
  CHECK(j["composite_matches"] == true);
  CHECK(run({"kleene", prefix.string() + ".kleene.json"}).code == cli::kPass);
  CHECK(run({"check", prefix.string() + ".epi.json"}).code == cli::kPass);
}

TEST_CASE("cli: universal") {
  const io::json j = run_json({"universal", data("z3_01.json"), "--target", data("z3_01.json")}, cli::kPass);
  CHECK(j["left_count"] == j["right_count"]);
  CHECK(run({"universal", data("z3_01.json"), "--target", data("z3_full.json")}).code == cli::kPass);
  CHECK(run({"universal", data("table_n.json"), "--target", data("z3_full.json")}).code == cli::kInconclusive);
  CHECK(run({"universal", data("z3_01.json"), "--target", data("table_n.json")}).code == cli::kInputError);
}

TEST_CASE("cli: documents round-trip") {
  for (const char* name : {"z3_01.json", "table_n.json", "path_table.json", "category_c2.json", "discrete.json"}) {
    INFO(name);
    const io::Document doc = io::load_document(data(name));
    const io::json j = io::algebra_to_json(*doc.algebra, 4);
    const fs::path p = scratch(std::string("rt_") + name);
    write(p, j.dump());
    const io::Document back = io::load_document(p.string());
    for (const Word& w : enumerate_words(doc.algebra->graph(), 3)) CHECK(back.algebra->evaluate(w) == doc.algebra->evaluate(w));
  }
}

TEST_CASE("cli: word syntax") {
  const Graph abc = Graph::bouquet(FinSet(std::vector<std::string>{"a", "b", "c"}));
  CHECK(io::format_word(abc, Word({0, 2})) == "[a,c]");
  CHECK(io::parse_word(abc, "a,c") == Word({0, 2}));
  CHECK(io::parse_word(abc, "[a,c]") == Word({0, 2}));
  CHECK(io::parse_word(abc, "") == Word());
  CHECK(io::parse_nesting(abc, "[[a,a],[]]") == Nesting{0, {Word({0, 0}), Word()}});
  CHECK(io::format_nesting(abc, Nesting{0, {Word({1}), Word()}}) == "[[b],[]]");
  CHECK_THROWS_AS(io::parse_word(abc, "a,d"), InputError);
  CHECK_THROWS_AS(io::parse_nesting(abc, "[[a]"), InputError);

  const Graph c2 = two_object_category().graph();
  CHECK(io::parse_word(c2, "@B") == Word({}, 1));
  CHECK(io::parse_word(c2, "x,y") == Word({2, 3}, 0));
  CHECK_THROWS_AS(io::parse_word(c2, "x,x"), InputError);
}
