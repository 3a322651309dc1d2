#pragma once

// Finite sets with total and partial maps between them. Elements of a set of
// size n are the naturals 0..n-1; labels are for display only.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace parakit {

using Elem = std::uint32_t;

class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::size_t size);
  explicit FinSet(std::vector<std::string> labels);

  std::size_t size() const { return size_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem a) const;
  std::optional<Elem> find_label(const std::string& label) const;

  // Sets are compared by cardinality; labels never affect equality.
  friend bool operator==(const FinSet& a, const FinSet& b) { return a.size_ == b.size_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::string> labels_;
};

class TotalMap {
 public:
  TotalMap() = default;
  TotalMap(FinSet src, FinSet dst, std::vector<Elem> table);

  static TotalMap identity(const FinSet& s);
  static TotalMap constant(const FinSet& src, const FinSet& dst, Elem value);

  const FinSet& src() const { return src_; }
  const FinSet& dst() const { return dst_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem a) const { return table_.at(a); }

  bool injective() const;
  bool surjective() const;

  friend bool operator==(const TotalMap&, const TotalMap&) = default;

 private:
  FinSet src_;
  FinSet dst_;
  std::vector<Elem> table_;
};

// g after f.
TotalMap compose(const TotalMap& g, const TotalMap& f);

class Subset {
 public:
  Subset() = default;
  Subset(FinSet ambient, std::vector<bool> mask);

  static Subset full(const FinSet& s);
  static Subset empty(const FinSet& s);
  static Subset of(const FinSet& s, const std::vector<Elem>& members);

  const FinSet& ambient() const { return ambient_; }
  const std::vector<bool>& mask() const { return mask_; }
  bool contains(Elem a) const { return a < mask_.size() && mask_[a]; }
  std::size_t count() const;
  std::vector<Elem> members() const;

  // Position of a member in members(), i.e. its index in the carrier P.
  std::optional<Elem> rank(Elem a) const;

  // The canonical mono P >-> ambient with P = {0..count-1}.
  TotalMap inclusion() const;

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  FinSet ambient_;
  std::vector<bool> mask_;
};

class PartialMap {
 public:
  PartialMap() = default;
  PartialMap(FinSet src, FinSet dst, std::vector<std::optional<Elem>> assignment);

  static PartialMap identity(const FinSet& s);
  static PartialMap from_total(const TotalMap& f);
  static PartialMap undefined(const FinSet& src, const FinSet& dst);

  const FinSet& src() const { return src_; }
  const FinSet& dst() const { return dst_; }
  const std::vector<std::optional<Elem>>& assignment() const { return assignment_; }
  std::optional<Elem> operator()(Elem a) const { return assignment_.at(a); }

  Subset domain() const;
  // The total part restricted to the domain, indexed as domain().members().
  TotalMap total_part() const;

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  FinSet src_;
  FinSet dst_;
  std::vector<std::optional<Elem>> assignment_;
};

PartialMap compose_partial(const PartialMap& g, const PartialMap& f);
bool leq(const PartialMap& f, const PartialMap& g);
bool kleene_eq(const PartialMap& f, const PartialMap& g);
bool is_total(const PartialMap& f);

// Componentwise action on the cartesian products, using the encoding
// (a, b) -> a * |B| + b.
PartialMap product(const PartialMap& f, const PartialMap& g);
FinSet product_set(const FinSet& a, const FinSet& b);

Subset inverse_image(const TotalMap& f, const Subset& s);

struct ImageFactorisation {
  TotalMap epi;     // src -> image, surjective
  Subset image;     // image as a subset of dst
  TotalMap mono() const { return image.inclusion(); }
};

ImageFactorisation image_factorisation(const TotalMap& f);

// All |dst+1|^|src| partial maps, in lexicographic order of assignments with
// "undefined" first.
std::vector<PartialMap> all_partial_maps(const FinSet& src, const FinSet& dst);
std::vector<TotalMap> all_total_maps(const FinSet& src, const FinSet& dst);

}  // namespace parakit
