#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "factorlab/abelian_group.hpp"
#include "factorlab/davenport.hpp"
#include "factorlab/error.hpp"

namespace factorlab {

// Reduced seminormal finitely primary monoid of rank s, modelled inside
// E x [q_1, ..., q_s]: its non-identity elements are (eps, k) with every k_j >= 1.
// E stands for the finite group of ambient units modulo local units.
struct LocalComponent {
  int rank = 1;
  AbelianGroup unit_group;
  std::vector<GroupElement> unit_class_images;  // one per invariant-factor generator of E
  std::vector<GroupElement> prime_classes;      // [q_1], ..., [q_s]

  friend bool operator==(const LocalComponent&, const LocalComponent&) = default;
};

// Element of a LocalComponent. An empty exponent tuple is the identity.
struct LocalElement {
  int unit = 0;  // index into unit_group.elements()
  std::vector<int> exponents;

  bool is_identity() const noexcept { return exponents.empty(); }
  int min_exponent() const { return *std::min_element(exponents.begin(), exponents.end()); }
  int max_exponent() const { return *std::max_element(exponents.begin(), exponents.end()); }

  friend bool operator==(const LocalElement&, const LocalElement&) = default;
};

// Non-identity parts sort before the identity, then by unit residues, then exponents.
inline std::strong_ordering compare_parts(const LocalElement& a, const LocalElement& b) {
  if (a.is_identity() != b.is_identity()) return a.is_identity() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.is_identity()) return std::strong_ordering::equal;
  if (auto c = a.unit <=> b.unit; c != 0) return c;
  return a.exponents <=> b.exponents;
}

// Element S*t of F(G_P) x T: a multiset over the free prime slots plus one local part per component.
struct ModelElement {
  std::vector<int> free;  // multiplicity per free prime slot
  std::vector<LocalElement> parts;

  std::size_t free_length() const {
    std::size_t n = 0;
    for (int c : free) n += static_cast<std::size_t>(c);
    return n;
  }

  bool is_identity() const {
    for (int c : free)
      if (c) return false;
    for (const auto& p : parts)
      if (!p.is_identity()) return false;
    return true;
  }

  // Largest local exponent over all components (0 when every part is the identity).
  int max_exponent() const {
    int m = 0;
    for (const auto& p : parts)
      if (!p.is_identity()) m = std::max(m, p.max_exponent());
    return m;
  }

  friend bool operator==(const ModelElement&, const ModelElement&) = default;

  // Canonical order: total free length, lexicographic free multiset, then the component parts.
  friend std::strong_ordering operator<=>(const ModelElement& a, const ModelElement& b) {
    if (auto c = a.free_length() <=> b.free_length(); c != 0) return c;
    // Slots are ordered by class, so the first slot whose multiplicity differs decides:
    // the multiset holding more copies of the smaller slot is the smaller sequence.
    for (std::size_t i = 0; i < a.free.size() && i < b.free.size(); ++i)
      if (a.free[i] != b.free[i]) return b.free[i] <=> a.free[i];
    for (std::size_t i = 0; i < a.parts.size() && i < b.parts.size(); ++i)
      if (auto c = compare_parts(a.parts[i], b.parts[i]); c != 0) return c;
    return a.parts.size() <=> b.parts.size();
  }
};

struct ModelElementHash {
  std::size_t operator()(const ModelElement& x) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (int c : x.free) mix(static_cast<std::uint64_t>(c));
    for (const auto& p : x.parts) {
      mix(0xabcdefULL + static_cast<std::uint64_t>(p.unit));
      mix(p.exponents.size());
      for (int k : p.exponents) mix(static_cast<std::uint64_t>(k));
    }
    return static_cast<std::size_t>(h);
  }
};

// Bounds every enumeration: free length, local exponent per prime axis, and atom tuple size.
struct DegreeBound {
  int max_free_length = 8;
  int max_exponent = 6;
  int max_atom_count = 8;

  friend bool operator==(const DegreeBound&, const DegreeBound&) = default;
};

inline constexpr DegreeBound kDefaultBound{8, 6, 8};

class BlockModel;

namespace detail {

struct AtomCache {
  std::mutex mutex;
  std::unordered_map<ModelElement, bool, ModelElementHash> is_atom;
  int table_free = -1;
  int table_exponent = -1;
  std::vector<ModelElement> table;  // canonical order
};

}  // namespace detail

// The T-block monoid B(G_P, T, iota) = { S t : sigma(S) + iota(t) = 0 } inside F(G_P) x T.
// Free primes are "slots", each carrying a class; the usual instance has exactly one slot
// per class in free_classes. Several slots in one class model distinctly labelled primes.
class BlockModel {
 public:
  static constexpr std::size_t kMaxGroupOrder = 1024;

  BlockModel(AbelianGroup group, std::vector<LocalComponent> components, std::vector<GroupElement> slot_classes)
      : group_(std::move(group)), components_(std::move(components)), cache_(std::make_shared<detail::AtomCache>()) {
    const std::size_t n = group_.order();
    if (n > kMaxGroupOrder) throw Error(ErrorCode::InvalidModel, "class group of order " + std::to_string(n) + " is too large");
    add_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        add_[a * n + b] = static_cast<int>(group_.index_of(group_.add(group_.element_at(a), group_.element_at(b))));

    for (const auto& g : slot_classes)
      if (!group_.contains(g)) throw Error(ErrorCode::InvalidModel, "free class " + to_string(g) + " is not in the class group");
    std::vector<int> idx;
    for (const auto& g : slot_classes) idx.push_back(static_cast<int>(group_.index_of(g)));
    std::sort(idx.begin(), idx.end());
    slot_class_ = idx;
    std::vector<int> seen(n, 0);
    for (int c : idx) seen[c]++;
    every_class_free_ = std::all_of(seen.begin(), seen.end(), [](int c) { return c > 0; });
    labeled_ = std::any_of(seen.begin(), seen.end(), [](int c) { return c > 1; });

    for (std::size_t i = 0; i < components_.size(); ++i) build_component(i);
  }

  const AbelianGroup& class_group() const noexcept { return group_; }
  const std::vector<LocalComponent>& components() const noexcept { return components_; }
  std::size_t component_count() const noexcept { return components_.size(); }
  std::size_t slot_count() const noexcept { return slot_class_.size(); }
  int slot_class(std::size_t slot) const { return slot_class_.at(slot); }
  GroupElement slot_class_element(std::size_t slot) const { return group_.element_at(slot_class_.at(slot)); }

  // Distinct classes that hold a free prime, in class order.
  std::vector<GroupElement> free_classes() const {
    std::vector<GroupElement> out;
    for (std::size_t s = 0; s < slot_class_.size(); ++s)
      if (s == 0 || slot_class_[s] != slot_class_[s - 1]) out.push_back(group_.element_at(slot_class_[s]));
    return out;
  }

  bool every_class_has_free_prime() const noexcept { return every_class_free_; }
  bool has_labeled_primes() const noexcept { return labeled_; }

  int zero_class() const noexcept { return 0; }
  int add_class(int a, int b) const noexcept { return add_[static_cast<std::size_t>(a) * group_.order() + b]; }
  int multiple_class(int a, int k) const noexcept {
    int r = 0;
    for (int i = 0; i < k; ++i) r = add_class(r, a);
    return r;
  }

  std::size_t unit_count(std::size_t comp) const { return comp_.at(comp).unit_class.size(); }
  int unit_class(std::size_t comp, int unit) const { return comp_[comp].unit_class.at(unit); }
  int prime_class(std::size_t comp, std::size_t axis) const { return comp_[comp].prime_class.at(axis); }
  int unit_product(std::size_t comp, int u, int v) const {
    const auto& c = comp_[comp];
    return c.unit_mul[static_cast<std::size_t>(u) * c.unit_class.size() + v];
  }
  int unit_inverse(std::size_t comp, int u) const { return comp_[comp].unit_inv.at(u); }

  // iota on one component: class(eps) + sum_j k_j [q_j].
  int local_class(std::size_t comp, const LocalElement& x) const {
    if (x.is_identity()) return 0;
    const auto& c = comp_[comp];
    int cls = c.unit_class[x.unit];
    for (std::size_t j = 0; j < x.exponents.size(); ++j) cls = add_class(cls, multiple_class(c.prime_class[j], x.exponents[j]));
    return cls;
  }

  detail::AtomCache& cache() const { return *cache_; }

  friend bool operator==(const BlockModel& a, const BlockModel& b) {
    return a.group_ == b.group_ && a.components_ == b.components_ && a.slot_class_ == b.slot_class_;
  }

 private:
  struct ComponentTables {
    std::vector<int> unit_class;  // class index of each unit
    std::vector<int> prime_class;
    std::vector<int> unit_mul;
    std::vector<int> unit_inv;
  };

  void build_component(std::size_t i) {
    const auto& c = components_[i];
    const std::string where = "component " + std::to_string(i);
    if (c.rank < 1) throw Error(ErrorCode::InvalidModel, where + ": rank must be >= 1");
    if (c.prime_classes.size() != static_cast<std::size_t>(c.rank))
      throw Error(ErrorCode::InvalidModel, where + ": expected " + std::to_string(c.rank) + " prime classes");
    const auto& e = c.unit_group;
    if (c.unit_class_images.size() != e.rank())
      throw Error(ErrorCode::InvalidModel, where + ": expected one unit class image per invariant factor of E");
    if (e.order() > kMaxGroupOrder) throw Error(ErrorCode::InvalidModel, where + ": unit group too large");
    for (const auto& g : c.prime_classes)
      if (!group_.contains(g)) throw Error(ErrorCode::InvalidModel, where + ": prime class " + to_string(g) + " is not in the class group");
    for (std::size_t j = 0; j < c.unit_class_images.size(); ++j) {
      const auto& img = c.unit_class_images[j];
      if (!group_.contains(img)) throw Error(ErrorCode::InvalidModel, where + ": unit class image " + to_string(img) + " is not in the class group");
      if (e.invariant_factors()[j] % group_.order_of(img) != 0)
        throw Error(ErrorCode::InvalidModel, where + ": unit class images do not define a homomorphism E -> G");
    }

    ComponentTables t;
    const std::size_t m = e.order();
    for (std::size_t u = 0; u < m; ++u) {
      GroupElement eps = e.element_at(u);
      GroupElement cls = group_.zero();
      for (std::size_t j = 0; j < eps.residues.size(); ++j)
        cls = group_.add(cls, group_.multiple(c.unit_class_images[j], eps.residues[j]));
      t.unit_class.push_back(static_cast<int>(group_.index_of(cls)));
    }
    for (const auto& g : c.prime_classes) t.prime_class.push_back(static_cast<int>(group_.index_of(g)));
    t.unit_mul.resize(m * m);
    t.unit_inv.resize(m);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v)
        t.unit_mul[u * m + v] = static_cast<int>(e.index_of(e.add(e.element_at(u), e.element_at(v))));
      t.unit_inv[u] = static_cast<int>(e.index_of(e.negate(e.element_at(u))));
    }
    comp_.push_back(std::move(t));
  }

  AbelianGroup group_;
  std::vector<LocalComponent> components_;
  std::vector<int> slot_class_;
  std::vector<int> add_;
  std::vector<ComponentTables> comp_;
  bool every_class_free_ = false;
  bool labeled_ = false;
  std::shared_ptr<detail::AtomCache> cache_;
};

// One free prime per class listed (all classes when free_classes is empty-optional).
inline BlockModel make_block_model(AbelianGroup group, std::vector<LocalComponent> components,
                                   std::optional<std::vector<GroupElement>> free_classes = std::nullopt) {
  std::vector<GroupElement> classes = free_classes ? *free_classes : group.elements();
  std::sort(classes.begin(), classes.end());
  if (std::adjacent_find(classes.begin(), classes.end()) != classes.end())
    throw Error(ErrorCode::InvalidModel, "free_classes lists a class twice");
  return BlockModel(std::move(group), std::move(components), std::move(classes));
}

// Same model shape, but with the given (possibly repeated) class for every free prime slot.
inline BlockModel make_labeled_block_model(AbelianGroup group, std::vector<LocalComponent> components,
                                           std::vector<GroupElement> slot_classes) {
  return BlockModel(std::move(group), std::move(components), std::move(slot_classes));
}

// ---------------------------------------------------------------------------
// Elements

inline ModelElement identity(const BlockModel& m) {
  return ModelElement{std::vector<int>(m.slot_count(), 0), std::vector<LocalElement>(m.component_count())};
}

inline void check_shape(const BlockModel& m, const ModelElement& x) {
  if (x.free.size() != m.slot_count() || x.parts.size() != m.component_count())
    throw Error(ErrorCode::ElementModelMismatch, "element shape does not match the model");
  for (int c : x.free)
    if (c < 0) throw Error(ErrorCode::ElementModelMismatch, "negative multiplicity");
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    const auto& p = x.parts[i];
    if (p.is_identity()) {
      if (p.unit != 0) throw Error(ErrorCode::ElementModelMismatch, "identity part with a non-trivial unit");
      continue;
    }
    if (p.exponents.size() != static_cast<std::size_t>(m.components()[i].rank))
      throw Error(ErrorCode::ElementModelMismatch, "component " + std::to_string(i) + ": exponent tuple has wrong length");
    if (p.unit < 0 || static_cast<std::size_t>(p.unit) >= m.unit_count(i))
      throw Error(ErrorCode::ElementModelMismatch, "component " + std::to_string(i) + ": unit out of range");
    for (int k : p.exponents)
      if (k < 1) throw Error(ErrorCode::ElementModelMismatch, "component " + std::to_string(i) + ": exponents must be >= 1");
  }
}

inline int class_index(const BlockModel& m, const ModelElement& x) {
  int cls = 0;
  for (std::size_t s = 0; s < x.free.size(); ++s) cls = m.add_class(cls, m.multiple_class(m.slot_class(s), x.free[s]));
  for (std::size_t i = 0; i < x.parts.size(); ++i) cls = m.add_class(cls, m.local_class(i, x.parts[i]));
  return cls;
}

inline GroupElement class_of(const BlockModel& m, const ModelElement& x) {
  check_shape(m, x);
  return m.class_group().element_at(class_index(m, x));
}

inline bool contains(const BlockModel& m, const ModelElement& x) {
  check_shape(m, x);
  return class_index(m, x) == 0;
}

inline void require_member(const BlockModel& m, const ModelElement& x) {
  if (!contains(m, x)) throw Error(ErrorCode::NotInMonoid, "element has class " + to_string(class_of(m, x)) + ", not 0");
}

inline ModelElement multiply(const BlockModel& m, const ModelElement& x, const ModelElement& y) {
  check_shape(m, x);
  check_shape(m, y);
  ModelElement z = x;
  for (std::size_t s = 0; s < z.free.size(); ++s) z.free[s] += y.free[s];
  for (std::size_t i = 0; i < z.parts.size(); ++i) {
    const auto& b = y.parts[i];
    if (b.is_identity()) continue;
    auto& a = z.parts[i];
    if (a.is_identity()) {
      a = b;
      continue;
    }
    a.unit = m.unit_product(i, a.unit, b.unit);
    for (std::size_t j = 0; j < a.exponents.size(); ++j) a.exponents[j] += b.exponents[j];
  }
  return z;
}

namespace detail {

// Quotient y / x in F(G_P) x T without shape checks; nullopt when x does not divide y there.
inline std::optional<ModelElement> ambient_quotient(const BlockModel& m, const ModelElement& x, const ModelElement& y) {
  ModelElement q = y;
  for (std::size_t s = 0; s < q.free.size(); ++s) {
    q.free[s] -= x.free[s];
    if (q.free[s] < 0) return std::nullopt;
  }
  for (std::size_t i = 0; i < q.parts.size(); ++i) {
    const auto& a = x.parts[i];
    if (a.is_identity()) continue;
    auto& b = q.parts[i];
    if (b.is_identity()) return std::nullopt;
    if (a == b) {
      b = LocalElement{};
      continue;
    }
    for (std::size_t j = 0; j < b.exponents.size(); ++j) {
      b.exponents[j] -= a.exponents[j];
      if (b.exponents[j] < 1) return std::nullopt;
    }
    b.unit = m.unit_product(i, b.unit, m.unit_inverse(i, a.unit));
  }
  return q;
}

inline bool ambient_divides(const ModelElement& x, const ModelElement& y) {
  for (std::size_t s = 0; s < x.free.size(); ++s)
    if (x.free[s] > y.free[s]) return false;
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    const auto& a = x.parts[i];
    const auto& b = y.parts[i];
    if (a.is_identity() || a == b) continue;
    if (b.is_identity()) return false;
    for (std::size_t j = 0; j < a.exponents.size(); ++j)
      if (b.exponents[j] - a.exponents[j] < 1) return false;
  }
  return true;
}

// Visits every divisor of x in F(G_P) x T; the visitor returns false to stop early.
// Returns false iff the visit was stopped.
inline bool visit_ambient_divisors(const BlockModel& m, const ModelElement& x,
                                   const std::function<bool(const ModelElement&)>& visit) {
  ModelElement d = identity(m);
  std::function<bool(std::size_t)> parts_rec;
  std::function<bool(std::size_t)> free_rec = [&](std::size_t s) -> bool {
    if (s == x.free.size()) return parts_rec(0);
    for (int c = 0; c <= x.free[s]; ++c) {
      d.free[s] = c;
      if (!free_rec(s + 1)) return false;
    }
    d.free[s] = 0;
    return true;
  };
  parts_rec = [&](std::size_t i) -> bool {
    if (i == x.parts.size()) return visit(d);
    const auto& p = x.parts[i];
    d.parts[i] = LocalElement{};
    if (!parts_rec(i + 1)) return false;
    if (p.is_identity()) return true;
    d.parts[i] = p;
    if (!parts_rec(i + 1)) return false;
    if (p.min_exponent() >= 2) {
      // proper local divisors: any unit, 1 <= k'_j <= k_j - 1
      LocalElement cand;
      cand.exponents.assign(p.exponents.size(), 1);
      const int units = static_cast<int>(m.unit_count(i));
      while (true) {
        for (int u = 0; u < units; ++u) {
          cand.unit = u;
          d.parts[i] = cand;
          if (!parts_rec(i + 1)) return false;
        }
        std::size_t j = 0;
        while (j < cand.exponents.size() && ++cand.exponents[j] > p.exponents[j] - 1) cand.exponents[j++] = 1;
        if (j == cand.exponents.size()) break;
      }
    }
    d.parts[i] = LocalElement{};
    return true;
  };
  return free_rec(0);
}

}  // namespace detail

// Divisibility x | y. Ambient: in F(G_P) x T (the quotient must be a valid local element).
// Otherwise in B: additionally x itself must lie in B (the quotient then does too).
inline bool divides(const BlockModel& m, const ModelElement& x, const ModelElement& y, bool ambient) {
  check_shape(m, x);
  check_shape(m, y);
  if (!detail::ambient_divides(x, y)) return false;
  return ambient || class_index(m, x) == class_index(m, y);
}

inline std::optional<ModelElement> divide_exact(const BlockModel& m, const ModelElement& x, const ModelElement& y,
                                                bool ambient) {
  if (!divides(m, x, y, ambient)) return std::nullopt;
  return detail::ambient_quotient(m, x, y);
}

inline std::vector<ModelElement> ambient_divisors(const BlockModel& m, const ModelElement& x) {
  check_shape(m, x);
  std::vector<ModelElement> out;
  detail::visit_ambient_divisors(m, x, [&](const ModelElement& d) {
    out.push_back(d);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Divisors of x that lie in B (for x in B, exactly its divisors in B).
inline std::vector<ModelElement> model_divisors(const BlockModel& m, const ModelElement& x) {
  check_shape(m, x);
  const int target = class_index(m, x);
  std::vector<ModelElement> out;
  detail::visit_ambient_divisors(m, x, [&](const ModelElement& d) {
    if (class_index(m, d) == 0 && target == 0) out.push_back(d);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline bool is_pure_local(const ModelElement& x, std::size_t* comp = nullptr) {
  for (int c : x.free)
    if (c) return false;
  int found = -1;
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    if (x.parts[i].is_identity()) continue;
    if (found >= 0) return false;
    found = static_cast<int>(i);
  }
  if (found < 0) return false;
  if (comp) *comp = static_cast<std::size_t>(found);
  return true;
}

inline bool scan_is_atom(const BlockModel& m, const ModelElement& x) {
  if (x.is_identity()) return false;
  std::size_t comp = 0;
  // an atom of the local monoid that lies in B is an atom of B
  if (is_pure_local(x, &comp) && x.parts[comp].min_exponent() == 1) return true;
  return visit_ambient_divisors(m, x, [&](const ModelElement& d) {
    if (class_index(m, d) != 0 || d.is_identity() || d == x) return true;
    return false;
  });
}

}  // namespace detail

inline bool is_atom(const BlockModel& m, const ModelElement& x) {
  require_member(m, x);
  auto& cache = m.cache();
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.is_atom.find(x); it != cache.is_atom.end()) return it->second;
  }
  const bool result = detail::scan_is_atom(m, x);
  std::lock_guard lock(cache.mutex);
  cache.is_atom.emplace(x, result);
  return result;
}

// All elements of B within the bound (free length, local exponents), in canonical order.
inline std::vector<ModelElement> enumerate_elements(const BlockModel& m, const DegreeBound& bound) {
  std::vector<ModelElement> out;
  ModelElement x = identity(m);
  std::function<void(std::size_t, int)> parts_rec;
  std::function<void(std::size_t, int, int)> free_rec = [&](std::size_t s, int remaining, int cls) {
    if (s == x.free.size()) {
      parts_rec(0, cls);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      x.free[s] = c;
      free_rec(s + 1, remaining - c, m.add_class(cls, m.multiple_class(m.slot_class(s), c)));
    }
    x.free[s] = 0;
  };
  parts_rec = [&](std::size_t i, int cls) {
    if (i == x.parts.size()) {
      if (cls == 0) out.push_back(x);
      return;
    }
    x.parts[i] = LocalElement{};
    parts_rec(i + 1, cls);
    if (bound.max_exponent < 1) return;
    const int rank = m.components()[i].rank;
    LocalElement p;
    p.exponents.assign(static_cast<std::size_t>(rank), 1);
    while (true) {
      for (int u = 0; u < static_cast<int>(m.unit_count(i)); ++u) {
        p.unit = u;
        x.parts[i] = p;
        parts_rec(i + 1, m.add_class(cls, m.local_class(i, p)));
      }
      std::size_t j = 0;
      while (j < p.exponents.size() && ++p.exponents[j] > bound.max_exponent) p.exponents[j++] = 1;
      if (j == p.exponents.size()) break;
    }
    x.parts[i] = LocalElement{};
  };
  free_rec(0, std::max(bound.max_free_length, 0), 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct AtomList {
  std::vector<ModelElement> atoms;
  bool complete = false;  // true when no atom of B lies outside the bound
};

namespace detail {

inline const std::vector<ModelElement>& atom_table(const BlockModel& m, int free_len, int exponent) {
  auto& cache = m.cache();
  {
    std::lock_guard lock(cache.mutex);
    if (cache.table_free >= free_len && cache.table_exponent >= exponent) return cache.table;
  }
  int f = 0, e = 0;
  {
    std::lock_guard lock(cache.mutex);
    f = std::max(cache.table_free, free_len);
    e = std::max(cache.table_exponent, exponent);
  }
  std::vector<ModelElement> table;
  for (const auto& x : enumerate_elements(m, DegreeBound{f, e, 0}))
    if (is_atom(m, x)) table.push_back(x);
  std::lock_guard lock(cache.mutex);
  if (cache.table_free < f || cache.table_exponent < e) {
    cache.table = std::move(table);
    cache.table_free = f;
    cache.table_exponent = e;
  }
  return cache.table;
}

}  // namespace detail

// Atoms u of B with u | x, canonical order, without duplicates.
inline std::vector<ModelElement> atoms_dividing(const BlockModel& m, const ModelElement& x) {
  require_member(m, x);
  if (x.is_identity()) return {};
  std::vector<ModelElement> out;
  const auto& table = detail::atom_table(m, static_cast<int>(x.free_length()), x.max_exponent());
  for (const auto& u : table)
    if (detail::ambient_divides(u, x)) out.push_back(u);
  return out;
}

inline AtomList enumerate_atoms(const BlockModel& m, const DegreeBound& bound) {
  AtomList list;
  for (const auto& x : enumerate_elements(m, bound))
    if (is_atom(m, x)) list.atoms.push_back(x);
  // Every atom has length at most D(G) in F(G) x T. With rank-one components that length is
  // free length + sum of exponents; higher rank components carry infinitely many atoms.
  bool all_rank_one = std::all_of(m.components().begin(), m.components().end(),
                                  [](const LocalComponent& c) { return c.rank == 1; });
  if (all_rank_one) {
    const int d = davenport(m.class_group());
    list.complete = d <= bound.max_free_length && (m.component_count() == 0 || d <= bound.max_exponent);
  }
  return list;
}

// Convenience constructors ---------------------------------------------------

// Free-only element from a list of classes (first slot of each class).
inline ModelElement free_element(const BlockModel& m, const std::vector<GroupElement>& classes) {
  ModelElement x = identity(m);
  for (const auto& g : classes) {
    if (!m.class_group().contains(g)) throw Error(ErrorCode::ElementGroupMismatch, "class " + to_string(g) + " not in the class group");
    const int idx = static_cast<int>(m.class_group().index_of(g));
    bool placed = false;
    for (std::size_t s = 0; s < m.slot_count(); ++s)
      if (m.slot_class(s) == idx) {
        x.free[s]++;
        placed = true;
        break;
      }
    if (!placed) throw Error(ErrorCode::ElementModelMismatch, "class " + to_string(g) + " holds no free prime");
  }
  return x;
}

inline LocalElement local_element(const BlockModel& m, std::size_t comp, const GroupElement& unit, std::vector<int> exponents) {
  if (comp >= m.component_count()) throw Error(ErrorCode::ElementModelMismatch, "no component " + std::to_string(comp));
  const auto& e = m.components()[comp].unit_group;
  if (!e.contains(unit)) throw Error(ErrorCode::ElementModelMismatch, "unit " + to_string(unit) + " not in E of component " + std::to_string(comp));
  return LocalElement{static_cast<int>(e.index_of(unit)), std::move(exponents)};
}

inline ModelElement with_part(const BlockModel& m, ModelElement x, std::size_t comp, LocalElement part) {
  if (comp >= m.component_count()) throw Error(ErrorCode::ElementModelMismatch, "no component " + std::to_string(comp));
  x.parts[comp] = std::move(part);
  check_shape(m, x);
  return x;
}

// Text form used by the element grammar: "free:[..] c0: u=[..] q^[..]"; the identity prints as "1".
inline std::string format_class(const AbelianGroup& g, const GroupElement& x) {
  if (g.is_trivial()) return "0";
  if (g.rank() == 1) return std::to_string(x.residues[0]);
  return to_string(x);
}

inline std::string format_element(const BlockModel& m, const ModelElement& x) {
  if (x.is_identity()) return "1";
  std::string out;
  if (x.free_length() > 0) {
    out += "free:[";
    bool first = true;
    for (std::size_t s = 0; s < x.free.size(); ++s)
      for (int c = 0; c < x.free[s]; ++c) {
        if (!first) out += ",";
        first = false;
        if (m.has_labeled_primes())
          out += "p" + std::to_string(s);
        else
          out += format_class(m.class_group(), m.slot_class_element(s));
      }
    out += "]";
  }
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    const auto& p = x.parts[i];
    if (p.is_identity()) continue;
    if (!out.empty()) out += " ";
    out += "c" + std::to_string(i) + ": u=" + to_string(m.components()[i].unit_group.element_at(p.unit)) + " q^[";
    for (std::size_t j = 0; j < p.exponents.size(); ++j) {
      if (j) out += ",";
      out += std::to_string(p.exponents[j]);
    }
    out += "]";
  }
  return out;
}

}  // namespace factorlab
