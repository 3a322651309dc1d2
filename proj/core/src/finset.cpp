#include "parakit/finset.hpp"

#include <set>

#include "parakit/errors.hpp"

namespace parakit {

FinSet::FinSet(std::size_t size) : size_(size) {}

FinSet::FinSet(std::vector<std::string> labels) : size_(labels.size()), labels_(std::move(labels)) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw InputError("FinSet: duplicate labels");
}

std::string FinSet::label(Elem a) const {
  if (a < labels_.size()) return labels_[a];
  return std::to_string(a);
}

std::optional<Elem> FinSet::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Elem>(i);
  return std::nullopt;
}

TotalMap::TotalMap(FinSet src, FinSet dst, std::vector<Elem> table)
    : src_(std::move(src)), dst_(std::move(dst)), table_(std::move(table)) {
  if (table_.size() != src_.size()) throw InputError("TotalMap: table length != source size");
  for (Elem v : table_)
    if (v >= dst_.size()) throw InputError("TotalMap: entry out of range");
}

TotalMap TotalMap::identity(const FinSet& s) {
  std::vector<Elem> t(s.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Elem>(i);
  return TotalMap(s, s, std::move(t));
}

TotalMap TotalMap::constant(const FinSet& src, const FinSet& dst, Elem value) {
  return TotalMap(src, dst, std::vector<Elem>(src.size(), value));
}

bool TotalMap::injective() const {
  std::set<Elem> seen(table_.begin(), table_.end());
  return seen.size() == table_.size();
}

bool TotalMap::surjective() const {
  std::set<Elem> seen(table_.begin(), table_.end());
  return seen.size() == dst_.size();
}

TotalMap compose(const TotalMap& g, const TotalMap& f) {
  if (!(f.dst() == g.src())) throw InputError("compose: set mismatch");
  std::vector<Elem> t(f.src().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g(f(static_cast<Elem>(i)));
  return TotalMap(f.src(), g.dst(), std::move(t));
}

Subset::Subset(FinSet ambient, std::vector<bool> mask) : ambient_(std::move(ambient)), mask_(std::move(mask)) {
  if (mask_.size() != ambient_.size()) throw InputError("Subset: mask length != ambient size");
}

Subset Subset::full(const FinSet& s) { return Subset(s, std::vector<bool>(s.size(), true)); }
Subset Subset::empty(const FinSet& s) { return Subset(s, std::vector<bool>(s.size(), false)); }

Subset Subset::of(const FinSet& s, const std::vector<Elem>& members) {
  std::vector<bool> mask(s.size(), false);
  for (Elem a : members) {
    if (a >= s.size()) throw InputError("Subset: member out of range");
    mask[a] = true;
  }
  return Subset(s, std::move(mask));
}

std::size_t Subset::count() const {
  std::size_t n = 0;
  for (bool b : mask_) n += b;
  return n;
}

std::vector<Elem> Subset::members() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(static_cast<Elem>(i));
  return out;
}

std::optional<Elem> Subset::rank(Elem a) const {
  if (!contains(a)) return std::nullopt;
  Elem r = 0;
  for (Elem i = 0; i < a; ++i) r += mask_[i];
  return r;
}

TotalMap Subset::inclusion() const {
  auto m = members();
  std::vector<std::string> labels;
  if (ambient_.has_labels())
    for (Elem a : m) labels.push_back(ambient_.label(a));
  FinSet p = labels.empty() ? FinSet(m.size()) : FinSet(std::move(labels));
  return TotalMap(std::move(p), ambient_, std::move(m));
}

PartialMap::PartialMap(FinSet src, FinSet dst, std::vector<std::optional<Elem>> assignment)
    : src_(std::move(src)), dst_(std::move(dst)), assignment_(std::move(assignment)) {
  if (assignment_.size() != src_.size()) throw InputError("PartialMap: assignment length != source size");
  for (const auto& v : assignment_)
    if (v && *v >= dst_.size()) throw InputError("PartialMap: entry out of range");
}

PartialMap PartialMap::identity(const FinSet& s) { return from_total(TotalMap::identity(s)); }

PartialMap PartialMap::from_total(const TotalMap& f) {
  std::vector<std::optional<Elem>> a(f.table().begin(), f.table().end());
  return PartialMap(f.src(), f.dst(), std::move(a));
}

PartialMap PartialMap::undefined(const FinSet& src, const FinSet& dst) {
  return PartialMap(src, dst, std::vector<std::optional<Elem>>(src.size()));
}

Subset PartialMap::domain() const {
  std::vector<bool> mask(assignment_.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = assignment_[i].has_value();
  return Subset(src_, std::move(mask));
}

TotalMap PartialMap::total_part() const {
  Subset d = domain();
  std::vector<Elem> t;
  for (Elem a : d.members()) t.push_back(*assignment_[a]);
  return TotalMap(d.inclusion().src(), dst_, std::move(t));
}

PartialMap compose_partial(const PartialMap& g, const PartialMap& f) {
  if (!(f.dst() == g.src())) throw InputError("compose_partial: set mismatch");
  std::vector<std::optional<Elem>> a(f.src().size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto fi = f(static_cast<Elem>(i))) a[i] = g(*fi);
  }
  return PartialMap(f.src(), g.dst(), std::move(a));
}

namespace {
void require_same_type(const PartialMap& f, const PartialMap& g, const char* op) {
  if (!(f.src() == g.src()) || !(f.dst() == g.dst())) throw InputError(std::string(op) + ": set mismatch");
}
}  // namespace

bool leq(const PartialMap& f, const PartialMap& g) {
  require_same_type(f, g, "leq");
  for (std::size_t i = 0; i < f.src().size(); ++i) {
    auto fi = f(static_cast<Elem>(i));
    if (fi && fi != g(static_cast<Elem>(i))) return false;
  }
  return true;
}

bool kleene_eq(const PartialMap& f, const PartialMap& g) {
  require_same_type(f, g, "kleene_eq");
  return f.assignment() == g.assignment();
}

bool is_total(const PartialMap& f) {
  for (const auto& v : f.assignment())
    if (!v) return false;
  return true;
}

FinSet product_set(const FinSet& a, const FinSet& b) { return FinSet(a.size() * b.size()); }

PartialMap product(const PartialMap& f, const PartialMap& g) {
  FinSet src = product_set(f.src(), g.src());
  FinSet dst = product_set(f.dst(), g.dst());
  std::vector<std::optional<Elem>> a(src.size());
  const auto nb = g.src().size();
  const auto nd = g.dst().size();
  for (std::size_t i = 0; i < f.src().size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      auto fi = f(static_cast<Elem>(i));
      auto gj = g(static_cast<Elem>(j));
      if (fi && gj) a[i * nb + j] = static_cast<Elem>(*fi * nd + *gj);
    }
  return PartialMap(std::move(src), std::move(dst), std::move(a));
}

Subset inverse_image(const TotalMap& f, const Subset& s) {
  if (!(f.dst() == s.ambient())) throw InputError("inverse_image: set mismatch");
  std::vector<bool> mask(f.src().size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = s.contains(f(static_cast<Elem>(i)));
  return Subset(f.src(), std::move(mask));
}

ImageFactorisation image_factorisation(const TotalMap& f) {
  std::vector<bool> mask(f.dst().size(), false);
  for (Elem v : f.table()) mask[v] = true;
  Subset image(f.dst(), std::move(mask));
  std::vector<Elem> t;
  t.reserve(f.src().size());
  for (Elem v : f.table()) t.push_back(*image.rank(v));
  TotalMap epi(f.src(), image.inclusion().src(), std::move(t));
  return {std::move(epi), std::move(image)};
}

std::vector<PartialMap> all_partial_maps(const FinSet& src, const FinSet& dst) {
  std::vector<PartialMap> out;
  std::vector<std::optional<Elem>> a(src.size());
  // Odometer over {undefined, 0, .., |dst|-1}^|src|.
  while (true) {
    out.emplace_back(src, dst, a);
    std::size_t i = src.size();
    while (i > 0) {
      --i;
      if (!a[i]) {
        if (dst.size() > 0) { a[i] = 0; break; }
      } else if (*a[i] + 1 < dst.size()) {
        a[i] = *a[i] + 1;
        break;
      }
      a[i].reset();
      if (i == 0) return out;
    }
    if (src.size() == 0) return out;
  }
}

std::vector<TotalMap> all_total_maps(const FinSet& src, const FinSet& dst) {
  std::vector<TotalMap> out;
  if (dst.size() == 0 && src.size() > 0) return out;
  std::vector<Elem> t(src.size(), 0);
  while (true) {
    out.emplace_back(src, dst, t);
    std::size_t i = src.size();
    while (true) {
      if (i == 0) return out;
      --i;
      if (t[i] + 1 < dst.size()) { ++t[i]; break; }
      t[i] = 0;
    }
  }
}

}  // namespace parakit
