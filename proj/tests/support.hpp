#pragma once

// Shared fixtures and independent oracles for the test binaries. The oracles never call the
// factorization engine or the invariant code; check_properties compares the two.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "factorlab/factorlab.hpp"

namespace testing_support {

using namespace factorlab;

inline BlockModel load(const std::string& name) { return parse_instance(std::string(FACTORLAB_INSTANCES) + "/" + name + ".json"); }

inline ModelElement el(const BlockModel& m, const std::string& text) { return parse_element(text, m); }

// Davenport constant by plain enumeration: longest minimal zero-sum sequence, tested through
// all sub-multisets of every multiset of group elements up to length |G|.
inline int brute_davenport(const AbelianGroup& g) {
  const auto elems = g.elements();
  const std::size_t n = elems.size();
  int best = 0;
  std::vector<std::size_t> seq;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!seq.empty()) {
      std::vector<GroupElement> s;
      for (auto i : seq) s.push_back(elems[i]);
      if (g.sum(s) == g.zero()) {
        bool minimal = true;
        const std::size_t len = s.size();
        for (unsigned long mask = 1; mask + 1 < (1ul << len) && minimal; ++mask) {
          std::vector<GroupElement> sub;
          for (std::size_t i = 0; i < len; ++i)
            if (mask >> i & 1) sub.push_back(s[i]);
          if (g.sum(sub) == g.zero()) minimal = false;
        }
        if (minimal) best = std::max(best, static_cast<int>(len));
      }
    }
    if (seq.size() == n) return;
    for (std::size_t i = from; i < n; ++i) {
      seq.push_back(i);
      rec(i);
      seq.pop_back();
    }
  };
  rec(0);
  return best;
}

// Factorizations of an exponent vector k in the rank-s local monoid with E trivial:
// partitions of k into vectors with every entry >= 1 and some entry equal to 1.
// Parts are produced in non-increasing lexicographic order.
using Vec = std::vector<int>;
inline std::vector<std::vector<Vec>> vector_partitions(const Vec& k) {
  std::vector<std::vector<Vec>> out;
  std::vector<Vec> cur;
  std::function<void(const Vec&, const Vec&)> rec = [&](const Vec& rest, const Vec& cap) {
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) {
      out.push_back(cur);
      return;
    }
    // enumerate candidate parts v <= rest, v <= cap lexicographically
    const std::size_t s = rest.size();
    Vec v(s, 1);
    std::function<void(std::size_t)> pick = [&](std::size_t j) {
      if (j == s) {
        if (*std::min_element(v.begin(), v.end()) != 1) return;
        if (v > cap) return;
        Vec r = rest;
        for (std::size_t i = 0; i < s; ++i) r[i] -= v[i];
        // what is left must be empty or a local non-unit (all entries >= 1)
        const bool empty = std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
        const bool ok = std::all_of(r.begin(), r.end(), [](int x) { return x >= 1; });
        if (!empty && !ok) return;
        cur.push_back(v);
        rec(r, v);
        cur.pop_back();
        return;
      }
      for (int x = 1; x <= rest[j]; ++x) {
        v[j] = x;
        pick(j + 1);
      }
    };
    pick(0);
  };
  rec(k, k);
  return out;
}

// Multiset distance from first principles: drop the common part, take the larger remainder.
template <class T>
int multiset_distance(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<T> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return static_cast<int>(std::max(a.size(), b.size()) - common.size());
}

inline std::vector<ModelElement> flatten(const Factorization& z) {
  std::vector<ModelElement> out;
  for (const auto& [u, c] : z.runs)
    for (int i = 0; i < c; ++i) out.push_back(u);
  return out;
}

// Minimax path closure (Floyd-Warshall with max/min); returns the largest entry over the
// node set, i.e. the least N that N-chain connects every pair.
inline int minimax_all_pairs(const std::vector<std::vector<int>>& d, const std::vector<std::size_t>& nodes) {
  const std::size_t n = nodes.size();
  if (n <= 1) return 0;
  std::vector<std::vector<int>> w(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = d[nodes[i]][nodes[j]];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[i][j] = std::min(w[i][j], std::max(w[i][k], w[k][j]));
  int best = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, w[i][j]);
  return best;
}

struct OracleCatenary {
  int c = 0, c_eq = 0, c_adj = 0;
};

// c, c_eq, c_adj from a list of factorizations.
inline OracleCatenary oracle_catenary(const std::vector<Factorization>& zs) {
  const std::size_t n = zs.size();
  std::vector<std::vector<ModelElement>> flat;
  for (const auto& z : zs) flat.push_back(flatten(z));
  std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = multiset_distance(flat[i], flat[j]);
  OracleCatenary r;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  r.c = minimax_all_pairs(d, all);
  std::map<std::size_t, std::vector<std::size_t>> by_len;
  for (std::size_t i = 0; i < n; ++i) by_len[flat[i].size()].push_back(i);
  for (const auto& [len, nodes] : by_len) r.c_eq = std::max(r.c_eq, minimax_all_pairs(d, nodes));
  for (auto it = by_len.begin(); it != by_len.end() && std::next(it) != by_len.end(); ++it) {
    int best = 1 << 30;
    for (auto i : it->second)
      for (auto j : std::next(it)->second) best = std::min(best, d[i][j]);
    r.c_adj = std::max(r.c_adj, best);
  }
  return r;
}

// Random element of the model within the bound, drawn uniformly from the enumeration.
inline std::vector<ModelElement> sample_elements(const BlockModel& m, const DegreeBound& b, std::size_t count, std::uint32_t seed) {
  auto all = enumerate_elements(m, b);
  all.erase(std::remove_if(all.begin(), all.end(), [](const ModelElement& x) { return x.is_identity(); }), all.end());
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::vector<ModelElement> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[pick(rng)]);
  return out;
}

// Per-element property checks shared by the property tests and the acceptance run.
struct PropertyTally {
  std::size_t elements = 0;
  std::map<std::string, std::size_t> violations;  // property -> count
  std::map<std::string, std::string> first;       // property -> first witness

  void flag(const std::string& what, const std::string& witness) {
    if (!violations[what]++) first[what] = witness;
  }
  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [k, v] : violations) n += v;
    return n;
  }
};

inline void check_properties(const BlockModel& m, const ModelElement& x, FactorizationOracle& oracle, PropertyTally& t,
                             std::size_t triangle_limit = 40) {
  ++t.elements;
  const std::string w = format_element(m, x);
  const auto zs = factorizations(m, x);
  if (oracle.factorizations(x) != zs) t.flag("oracle", w);

  std::vector<std::vector<ModelElement>> flat;
  for (const auto& z : zs) flat.push_back(flatten(z));
  const std::size_t n = zs.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = distance(zs[i], zs[j]);
      if (d[i][j] != multiset_distance(flat[i], flat[j])) t.flag("distance-formula", w);
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0) t.flag("metric", w);
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] != d[j][i] || (i != j && d[i][j] == 0)) t.flag("metric", w);
      if (i < j && 2 + std::abs(zs[i].length() - zs[j].length()) > d[i][j]) t.flag("distance-length", w);
    }
  }
  if (n <= triangle_limit)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (d[i][k] > d[i][j] + d[j][k]) t.flag("metric", w);

  const auto e = element_invariants(m, x);
  if (!(e.catenary <= e.catenary_mon && e.catenary_mon == std::max(e.catenary_eq, e.catenary_adj) && e.catenary_mon <= e.lengths.back()))
    t.flag("catenary-monotone", w);
  if (e.lengths.size() > 1 && e.catenary < 2 + e.delta.back()) t.flag("catenary-delta", w);

  std::size_t comp = 0;
  if (m.class_group().is_trivial() && detail::is_pure_local(x, &comp)) {
    const auto& p = x.parts[comp];
    if (m.components()[comp].rank >= 2 && e.lengths.front() > 2) t.flag("local-min-length", w);
    if (e.lengths.back() > p.min_exponent()) t.flag("local-max-length", w);
    if (oracle_is_atom(m, x) != (p.min_exponent() == 1)) t.flag("atom-closed-form", w);
  }
}

}  // namespace testing_support
