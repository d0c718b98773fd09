#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "factorlab/monoid.hpp"

namespace factorlab {

struct SearchOptions {
  std::uint64_t node_budget = 50'000'000;  // backtracking nodes per element
};

// Sorted set of lengths.
using LengthSet = std::vector<int>;

// Multiset of atoms as sorted (atom, multiplicity) runs.
struct Factorization {
  std::vector<std::pair<ModelElement, int>> runs;

  int length() const {
    int n = 0;
    for (const auto& r : runs) n += r.second;
    return n;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend auto operator<=>(const Factorization& a, const Factorization& b) { return a.runs <=> b.runs; }
};

inline ModelElement product(const BlockModel& m, const Factorization& z) {
  ModelElement x = identity(m);
  for (const auto& [u, c] : z.runs)
    for (int i = 0; i < c; ++i) x = multiply(m, x, u);
  return x;
}

inline Factorization factorization_gcd(const Factorization& a, const Factorization& b) {
  Factorization g;
  std::size_t i = 0, j = 0;
  while (i < a.runs.size() && j < b.runs.size()) {
    const auto c = a.runs[i].first <=> b.runs[j].first;
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      g.runs.emplace_back(a.runs[i].first, std::min(a.runs[i].second, b.runs[j].second));
      ++i;
      ++j;
    }
  }
  return g;
}

inline int distance(const Factorization& a, const Factorization& b) {
  const int g = factorization_gcd(a, b).length();
  return std::max(a.length() - g, b.length() - g);
}

// Factorizations over a fixed atom list: runs of (atom index, multiplicity), index-sorted.
using IndexedFactorization = std::vector<std::pair<int, int>>;

inline int indexed_length(const IndexedFactorization& z) {
  int n = 0;
  for (const auto& r : z) n += r.second;
  return n;
}

inline int indexed_distance(const IndexedFactorization& a, const IndexedFactorization& b) {
  int la = 0, lb = 0, g = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      la += a[i++].second;
    } else if (i == a.size() || b[j].first < a[i].first) {
      lb += b[j++].second;
    } else {
      la += a[i].second;
      lb += b[j].second;
      g += std::min(a[i].second, b[j].second);
      ++i;
      ++j;
    }
  }
  return std::max(la - g, lb - g);
}

struct FactorizationSet {
  std::vector<ModelElement> atoms;                  // atoms dividing the element, canonical order
  std::vector<IndexedFactorization> factorizations;  // sorted
  std::vector<int> lengths_of;                      // |z| per factorization

  LengthSet lengths() const {
    LengthSet l = lengths_of;
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    return l;
  }

  Factorization expand(std::size_t i) const {
    Factorization z;
    for (const auto& [idx, c] : factorizations[i]) z.runs.emplace_back(atoms[idx], c);
    return z;
  }
};

// Z(a) by ordered backtracking: atoms are taken in non-decreasing canonical order, so every
// multiset is produced once. Each atom strictly lowers free length + exponent sum.
inline FactorizationSet factorization_set(const BlockModel& m, const ModelElement& a, const SearchOptions& opts = {}) {
  require_member(m, a);
  FactorizationSet out;
  out.atoms = atoms_dividing(m, a);
  const auto& atoms = out.atoms;
  std::uint64_t nodes = 0;
  IndexedFactorization current;

  auto rec = [&](auto&& self, const ModelElement& rest, std::size_t from) -> void {
    if (++nodes > opts.node_budget)
      throw Error(ErrorCode::SearchBudgetExceeded, "factorization search exceeded " + std::to_string(opts.node_budget) + " nodes");
    if (rest.is_identity()) {
      out.factorizations.push_back(current);
      return;
    }
    for (std::size_t j = from; j < atoms.size(); ++j) {
      if (!detail::ambient_divides(atoms[j], rest)) continue;
      auto q = detail::ambient_quotient(m, atoms[j], rest);
      if (!q) continue;
      if (!current.empty() && current.back().first == static_cast<int>(j))
        current.back().second++;
      else
        current.emplace_back(static_cast<int>(j), 1);
      self(self, *q, j);
      if (--current.back().second == 0) current.pop_back();
    }
  };
  rec(rec, a, 0);

  std::sort(out.factorizations.begin(), out.factorizations.end());
  for (const auto& z : out.factorizations) out.lengths_of.push_back(indexed_length(z));
  return out;
}

inline std::vector<Factorization> factorizations(const BlockModel& m, const ModelElement& a, const SearchOptions& opts = {}) {
  auto set = factorization_set(m, a, opts);
  std::vector<Factorization> out;
  for (std::size_t i = 0; i < set.factorizations.size(); ++i) out.push_back(set.expand(i));
  std::sort(out.begin(), out.end());
  return out;
}

inline LengthSet lengths(const BlockModel& m, const ModelElement& a, const SearchOptions& opts = {}) {
  return factorization_set(m, a, opts).lengths();
}

}  // namespace factorlab
