#pragma once

// Built-in example families used by the tests and the acceptance suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parakit/algebra.hpp"
#include "parakit/paracat.hpp"

namespace parakit {

// Monoids with unit 0, one per isomorphism class, in a fixed order.
std::vector<Monoid> monoids_up_to_iso(std::size_t max_size);

struct CatalogEntry {
  enum class Kind { Induced, Table, Category };
  std::string name;
  Kind kind = Kind::Induced;
  AlgebraPtr algebra;
  std::optional<Monoid> monoid;  // Induced only
  std::optional<Subset> subset;  // Induced and Category
};

// Every monoid of size <= 3 with every subset of it (the empty one included).
std::vector<CatalogEntry> induced_catalog();

// {e, a, b}: singletons, [a,a] -> b and [a,a,a,a] -> e, declared bound 4. The
// empty word is undefined.
std::shared_ptr<const TableAlgebra> table_n();

// Objects A, B; x: A -> B, y: B -> A; lA = x;y, lB = y;x idempotent with
// lA;x = x = x;lB and lB;y = y = y;lA.
FiniteCategory two_object_category();
// A -> B -> C with the composite h = f;g.
FiniteCategory chain_category();

// Both categories with every arrow subset containing the identities.
std::vector<CatalogEntry> category_catalog();

// Induced, N, and the category entries.
std::vector<CatalogEntry> catalog();

// Lax table algebras: a truncated induced algebra with some non-forced
// entries removed, so laxity holds but saturation may not.
std::vector<CatalogEntry> random_tables(std::size_t count, std::uint64_t seed);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

}  // namespace parakit
