#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "factorlab/davenport.hpp"
#include "factorlab/factorization.hpp"
#include "factorlab/structure.hpp"

namespace factorlab {

// Gaps between adjacent lengths.
inline std::vector<int> set_distances(const LengthSet& l) {
  std::set<int> d;
  for (std::size_t i = 1; i < l.size(); ++i) d.insert(l[i] - l[i - 1]);
  return {d.begin(), d.end()};
}

namespace detail {

// Minimax (bottleneck) connectivity of the complete graph on the chosen factorizations,
// weighted by distance: the largest edge of a minimum spanning tree (Prim, O(n^2)).
inline int bottleneck(const std::vector<IndexedFactorization>& zs, const std::vector<std::size_t>& nodes) {
  const std::size_t n = nodes.size();
  if (n <= 1) return 0;
  std::vector<int> best(n, std::numeric_limits<int>::max());
  std::vector<char> in_tree(n, 0);
  best[0] = 0;
  int worst = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t v = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!in_tree[i] && (v == n || best[i] < best[v])) v = i;
    in_tree[v] = 1;
    worst = std::max(worst, best[v]);
    for (std::size_t i = 0; i < n; ++i)
      if (!in_tree[i]) best[i] = std::min(best[i], indexed_distance(zs[nodes[v]], zs[nodes[i]]));
  }
  return worst;
}

}  // namespace detail

struct ElementInvariants {
  LengthSet lengths;
  std::vector<int> delta;
  std::size_t factorization_count = 0;
  int catenary = 0;
  int catenary_eq = 0;
  int catenary_adj = 0;
  int catenary_mon = 0;
};

inline ElementInvariants element_invariants(const FactorizationSet& z) {
  ElementInvariants r;
  r.lengths = z.lengths();
  r.delta = set_distances(r.lengths);
  r.factorization_count = z.factorizations.size();
  std::vector<std::size_t> all(z.factorizations.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  r.catenary = detail::bottleneck(z.factorizations, all);

  std::map<int, std::vector<std::size_t>> by_length;
  for (std::size_t i = 0; i < z.factorizations.size(); ++i) by_length[z.lengths_of[i]].push_back(i);
  for (const auto& [len, nodes] : by_length) r.catenary_eq = std::max(r.catenary_eq, detail::bottleneck(z.factorizations, nodes));
  for (auto it = by_length.begin(); it != by_length.end(); ++it) {
    auto next = std::next(it);
    if (next == by_length.end()) break;
    int d = std::numeric_limits<int>::max();
    for (std::size_t a : it->second)
      for (std::size_t b : next->second) d = std::min(d, indexed_distance(z.factorizations[a], z.factorizations[b]));
    r.catenary_adj = std::max(r.catenary_adj, d);
  }
  r.catenary_mon = std::max(r.catenary_eq, r.catenary_adj);
  return r;
}

inline ElementInvariants element_invariants(const BlockModel& m, const ModelElement& a, const SearchOptions& opts = {}) {
  return element_invariants(factorization_set(m, a, opts));
}

inline int catenary(const BlockModel& m, const ModelElement& a, const SearchOptions& opts = {}) {
  return element_invariants(m, a, opts).catenary;
}

struct RefinedCatenary {
  int eq = 0;
  int adj = 0;
  int mon = 0;
};

inline RefinedCatenary catenary_refined(const BlockModel& m, const ModelElement& a, const SearchOptions& opts = {}) {
  auto e = element_invariants(m, a, opts);
  return {e.catenary_eq, e.catenary_adj, e.catenary_mon};
}

// ---------------------------------------------------------------------------
// Monoid level: suprema over all elements within a bound.

struct Exactness {
  bool exact = false;
  std::string clause;  // certifying clause when exact
  DegreeBound bound;   // scan bound when only a lower bound

  friend bool operator==(const Exactness&, const Exactness&) = default;
};

inline Exactness exact_by(std::string clause) { return Exactness{true, std::move(clause), {}}; }
inline Exactness lower_bound_at(const DegreeBound& b) { return Exactness{false, {}, b}; }

struct MonoidScan {
  DegreeBound bound;
  std::vector<ModelElement> elements;  // non-identity elements of B within bound, canonical order
  std::vector<ElementInvariants> data;
};

inline MonoidScan scan_monoid(const BlockModel& m, const DegreeBound& bound, const SearchOptions& opts = {}) {
  MonoidScan s;
  s.bound = bound;
  for (auto& x : enumerate_elements(m, bound)) {
    if (x.is_identity()) continue;
    s.data.push_back(element_invariants(m, x, opts));
    s.elements.push_back(std::move(x));
  }
  return s;
}

struct DeltaResult {
  std::vector<int> set;
  Exactness exactness;
  std::optional<ModelElement> witness_max;  // element realising max of the set
};

inline DeltaResult delta_set(const BlockModel& m, const MonoidScan& scan) {
  DeltaResult r;
  std::set<int> d;
  int best = 0;
  for (std::size_t i = 0; i < scan.elements.size(); ++i)
    for (int v : scan.data[i].delta) {
      d.insert(v);
      if (v > best) {
        best = v;
        r.witness_max = scan.elements[i];
      }
    }
  r.set.assign(d.begin(), d.end());
  auto cls = classify(m);
  r.exactness = lower_bound_at(scan.bound);
  if (const auto* p = cls.find("delta"); p && p->set == r.set) r.exactness = exact_by(p->clause);
  return r;
}

inline DeltaResult delta_set(const BlockModel& m, const DegreeBound& bound, const SearchOptions& opts = {}) {
  return delta_set(m, scan_monoid(m, bound, opts));
}

struct UnionResult {
  int k = 0;
  std::vector<int> set;
  bool is_interval = false;
  int rho = 0;
  int lambda = 0;
  Exactness exactness;
};

inline bool is_interval(const std::vector<int>& s) { return s.empty() || s.back() - s.front() + 1 == static_cast<int>(s.size()); }

inline UnionResult union_of_lengths(const MonoidScan& scan, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidModel, "k must be >= 1");
  std::set<int> u;
  if (k == 1) u.insert(1);  // atoms; also the only length set containing 1
  for (const auto& d : scan.data)
    if (std::binary_search(d.lengths.begin(), d.lengths.end(), k)) u.insert(d.lengths.begin(), d.lengths.end());
  UnionResult r;
  r.k = k;
  r.set.assign(u.begin(), u.end());
  r.is_interval = is_interval(r.set);
  if (!r.set.empty()) {
    r.lambda = r.set.front();
    r.rho = r.set.back();
  }
  // a union over infinitely many elements is never pinned by a finite scan
  r.exactness = lower_bound_at(scan.bound);
  return r;
}

inline UnionResult union_of_lengths(const BlockModel& m, int k, const DegreeBound& bound, const SearchOptions& opts = {}) {
  return union_of_lengths(scan_monoid(m, bound, opts), k);
}

struct HalfFactorialResult {
  bool value = true;
  Exactness exactness;
  std::optional<ModelElement> witness;
  LengthSet witness_lengths;
};

inline HalfFactorialResult is_half_factorial(const BlockModel& m, const MonoidScan& scan) {
  HalfFactorialResult r;
  for (std::size_t i = 0; i < scan.elements.size(); ++i)
    if (scan.data[i].lengths.size() > 1) {
      r.value = false;
      r.witness = scan.elements[i];
      r.witness_lengths = scan.data[i].lengths;
      r.exactness = exact_by("counterexample");
      return r;
    }
  auto cls = classify(m);
  if (const auto* p = cls.find("half_factorial"); p && p->flag)
    r.exactness = exact_by(p->clause);
  else
    r.exactness = lower_bound_at(scan.bound);
  return r;
}

inline HalfFactorialResult is_half_factorial(const BlockModel& m, const DegreeBound& bound, const SearchOptions& opts = {}) {
  return is_half_factorial(m, scan_monoid(m, bound, opts));
}

// ---------------------------------------------------------------------------
// omega

struct OmegaResult {
  int value = 0;             // best n found (a lower bound unless exact)
  bool infinite = false;     // certified infinite
  bool search_complete = false;
  std::vector<ModelElement> witness;  // a_1, ..., a_n with u | product, no proper subproduct divisible
  std::optional<ModelElement> atom;   // the atom u (monoid level)
  Exactness exactness;
};

struct OmegaOptions {
  std::uint64_t node_budget = 2'000'000;  // per atom
};

namespace detail {

inline bool supports_meet(const ModelElement& a, const ModelElement& b) {
  for (std::size_t s = 0; s < a.free.size(); ++s)
    if (a.free[s] && b.free[s]) return true;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (!a.parts[i].is_identity() && !b.parts[i].is_identity()) return true;
  return false;
}

// Every factor of a minimal tuple is needed for some coordinate of u; per free slot at most
// u_s factors can be needed, per component at most max_j k_j + 1.
inline int omega_upper_bound(const ModelElement& u) {
  int b = static_cast<int>(u.free_length());
  for (const auto& p : u.parts)
    if (!p.is_identity()) b += p.max_exponent() + 1;
  return b;
}

// Depth-first over multisets of candidates (non-decreasing index). A branch stops as soon
// as u divides the product; it counts when dropping any one factor breaks divisibility.
inline void omega_search(const BlockModel& m, const ModelElement& u, const std::vector<ModelElement>& cands, int max_n,
                         std::uint64_t budget, OmegaResult& r) {
  const int cap = std::min(max_n, omega_upper_bound(u));
  std::vector<std::size_t> tuple;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  bool done = false;

  auto minimal = [&](const std::vector<std::size_t>& t) {
    for (std::size_t drop = 0; drop < t.size(); ++drop) {
      if (drop > 0 && t[drop] == t[drop - 1]) continue;
      ModelElement p = identity(m);
      for (std::size_t i = 0; i < t.size(); ++i)
        if (i != drop) p = multiply(m, p, cands[t[i]]);
      if (ambient_divides(u, p)) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t from, const ModelElement& prod) -> void {
    for (std::size_t j = from; j < cands.size() && !done; ++j) {
      if (++nodes > budget) {
        exhausted = done = true;
        return;
      }
      ModelElement next = multiply(m, prod, cands[j]);
      tuple.push_back(j);
      if (ambient_divides(u, next)) {
        const int n = static_cast<int>(tuple.size());
        if (n > r.value && minimal(tuple)) {
          r.value = n;
          r.witness.clear();
          for (std::size_t i : tuple) r.witness.push_back(cands[i]);
          if (r.value >= cap) done = true;
        }
      } else if (static_cast<int>(tuple.size()) < cap) {
        self(self, j, next);
      }
      tuple.pop_back();
    }
  };
  rec(rec, 0, identity(m));
  r.search_complete = !exhausted;
}

}  // namespace detail

inline bool atoms_complete(const BlockModel& m, const DegreeBound& bound) {
  return enumerate_atoms(m, DegreeBound{bound.max_free_length, bound.max_exponent, 0}).complete;
}

// omega(H, u) restricted to tuples of atoms within the bound (tuple size <= max_atom_count).
inline OmegaResult omega(const BlockModel& m, const ModelElement& u, const DegreeBound& bound, const OmegaOptions& opts = {}) {
  if (!is_atom(m, u)) throw Error(ErrorCode::NotAtom, format_element(m, u) + " is not an atom");
  std::vector<ModelElement> cands;
  for (auto& a : enumerate_atoms(m, bound).atoms)
    if (detail::supports_meet(a, u)) cands.push_back(std::move(a));
  OmegaResult r;
  r.atom = u;
  detail::omega_search(m, u, cands, bound.max_atom_count, opts.node_budget, r);
  if (r.value == 0 && !r.search_complete)
    throw Error(ErrorCode::SearchBudgetExceeded, "omega search found no witness within " + std::to_string(opts.node_budget) + " nodes");
  r.exactness = lower_bound_at(bound);
  if (r.search_complete && r.value == detail::omega_upper_bound(u))
    r.exactness = exact_by("structural-upper-bound");
  else if (r.search_complete && atoms_complete(m, bound) && bound.max_atom_count >= detail::omega_upper_bound(u))
    r.exactness = exact_by("exhaustive");
  return r;
}

// Cross-check: factors may be arbitrary non-identity elements of B within the bound.
inline OmegaResult omega_general(const BlockModel& m, const ModelElement& u, const DegreeBound& bound,
                                 const OmegaOptions& opts = {}) {
  if (!is_atom(m, u)) throw Error(ErrorCode::NotAtom, format_element(m, u) + " is not an atom");
  std::vector<ModelElement> cands;
  for (auto& a : enumerate_elements(m, bound))
    if (!a.is_identity() && detail::supports_meet(a, u)) cands.push_back(std::move(a));
  OmegaResult r;
  r.atom = u;
  detail::omega_search(m, u, cands, bound.max_atom_count, opts.node_budget, r);
  r.exactness = lower_bound_at(bound);
  return r;
}

// omega(H) over the atoms within the bound. Atoms are visited by decreasing structural
// upper bound so the search can stop once no remaining atom could beat the best value.
inline OmegaResult omega_monoid(const BlockModel& m, const DegreeBound& bound, const OmegaOptions& opts = {}) {
  auto atoms = enumerate_atoms(m, bound);
  std::vector<ModelElement> order = atoms.atoms;
  std::stable_sort(order.begin(), order.end(), [](const ModelElement& a, const ModelElement& b) {
    return detail::omega_upper_bound(a) > detail::omega_upper_bound(b);
  });
  OmegaResult best;
  best.search_complete = atoms.complete;
  for (const auto& u : order) {
    if (detail::omega_upper_bound(u) <= best.value) break;
    OmegaResult r;
    r.atom = u;
    std::vector<ModelElement> cands;
    for (const auto& a : atoms.atoms)
      if (detail::supports_meet(a, u)) cands.push_back(a);
    detail::omega_search(m, u, cands, bound.max_atom_count, opts.node_budget, r);
    if (!r.search_complete) best.search_complete = false;
    if (r.value > best.value) {
      const bool complete = best.search_complete;
      best = r;
      best.search_complete = complete && r.search_complete;
    }
  }
  auto cls = classify(m);
  best.exactness = lower_bound_at(bound);
  if (const auto* p = cls.find("omega")) {
    if (p->relation == Relation::Infinite) {
      best.infinite = true;
      best.exactness = exact_by(p->clause);
    } else if (p->relation == Relation::Equal && p->value == best.value) {
      best.exactness = exact_by(p->clause);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Report

struct UnionEntry {
  std::vector<int> set;
  bool is_interval = false;

  friend bool operator==(const UnionEntry&, const UnionEntry&) = default;
};

struct InvariantReport {
  DegreeBound bound;
  std::vector<int> delta;
  std::map<int, UnionEntry> unions;
  std::map<int, int> rho;
  std::map<int, int> lambda;
  int catenary = 0;
  int catenary_eq = 0;
  int catenary_adj = 0;
  int catenary_mon = 0;
  int omega = 0;
  bool omega_infinite = false;
  bool half_factorial = true;
  std::map<std::string, Exactness> exactness;  // per field name

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

struct ReportOptions {
  SearchOptions search;
  OmegaOptions omega;
  int min_k = 2;
  int max_k = 5;
  bool compute_omega = true;
};

inline InvariantReport invariant_report(const BlockModel& m, const DegreeBound& bound, const ReportOptions& opts = {}) {
  const auto scan = scan_monoid(m, bound, opts.search);
  const auto cls = classify(m);
  InvariantReport r;
  r.bound = bound;

  auto certify = [&](const std::string& field, const std::string& quantity, int computed) {
    Exactness e = lower_bound_at(bound);
    if (const auto* p = cls.find(quantity); p && p->relation == Relation::Equal && p->value == computed) e = exact_by(p->clause);
    r.exactness[field] = e;
  };

  for (const auto& d : scan.data) {
    r.catenary = std::max(r.catenary, d.catenary);
    r.catenary_eq = std::max(r.catenary_eq, d.catenary_eq);
    r.catenary_adj = std::max(r.catenary_adj, d.catenary_adj);
    r.catenary_mon = std::max(r.catenary_mon, d.catenary_mon);
  }
  certify("catenary", "catenary", r.catenary);
  certify("catenary_eq", "catenary_eq", r.catenary_eq);
  certify("catenary_adj", "catenary_adj", r.catenary_adj);
  certify("catenary_mon", "catenary_mon", r.catenary_mon);

  auto delta = delta_set(m, scan);
  r.delta = delta.set;
  r.exactness["delta"] = delta.exactness;

  for (int k = opts.min_k; k <= opts.max_k; ++k) {
    auto u = union_of_lengths(scan, k);
    r.unions[k] = UnionEntry{u.set, u.is_interval};
    r.rho[k] = u.rho;
    r.lambda[k] = u.lambda;
  }
  r.exactness["unions"] = lower_bound_at(bound);

  auto hf = is_half_factorial(m, scan);
  r.half_factorial = hf.value;
  r.exactness["half_factorial"] = hf.exactness;

  if (opts.compute_omega) {
    auto om = omega_monoid(m, bound, opts.omega);
    r.omega = om.value;
    r.omega_infinite = om.infinite;
    r.exactness["omega"] = om.exactness;
  }
  return r;
}

}  // namespace factorlab
