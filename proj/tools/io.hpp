#pragma once

// JSON documents for algebras and morphisms, and the textual word syntax
// used on the command line.

#include <optional>
#include <string>

#include <json.hpp>

#include "parakit/algebra.hpp"
#include "parakit/morphisms.hpp"
#include "parakit/paracat.hpp"

namespace parakit::io {

using json = nlohmann::ordered_json;

struct Bounds {
  std::optional<std::size_t> query_len;
  std::optional<std::size_t> work_len;
};

struct Document {
  std::string kind;
  Bounds bounds;
  AlgebraPtr algebra;                 // algebra kinds
  std::optional<AlgMorphism> morphism;  // morphism and functor
};

bool is_algebra_kind(const std::string& kind);
bool is_paracategory(const PartialAlgebra& a);

// Both throw InputError with a message naming the offending field.
Document parse_document(const json& j);
Document load_document(const std::string& path);

// Serialises an algebra in the most specific document kind available;
// anything without a finite description is tabulated up to `bound`.
json algebra_to_json(const PartialAlgebra& a, std::size_t bound);
json morphism_to_json(const AlgMorphism& f, std::size_t bound);

// Comma-separated edge labels or indices. The empty word is "" in the monoid
// variant and "@node" for paths.
Word parse_word(const Graph& g, const std::string& text);
// "[[a,a],[a]]"; empty pieces are "[]" and an empty nesting at a node "[]@A".
Nesting parse_nesting(const Graph& g, const std::string& text);
std::string format_word(const Graph& g, const Word& w);
std::string format_nesting(const Graph& g, const Nesting& n);
std::string format_witness(const Graph& g, const Witness& w);

}  // namespace parakit::io
