#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "factorlab/error.hpp"

namespace factorlab {

// Element of a finite abelian group, stored as residues modulo the invariant factors.
struct GroupElement {
  std::vector<int> residues;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline std::string to_string(const GroupElement& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.residues.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(x.residues[i]);
  }
  return out + "]";
}

// Finite abelian group C_{d1} + ... + C_{dr} with d1 | d2 | ... | dr, every di >= 2.
// Construction from an arbitrary list of moduli normalizes through elementary divisors,
// so two presentations of the same group compare equal.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  explicit AbelianGroup(std::span<const int> moduli) : factors_(normalize(moduli)) {}
  AbelianGroup(std::initializer_list<int> moduli)
      : AbelianGroup(std::span<const int>(moduli.begin(), moduli.size())) {}

  const std::vector<int>& invariant_factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }

  std::size_t order() const noexcept {
    std::size_t n = 1;
    for (int d : factors_) n *= static_cast<std::size_t>(d);
    return n;
  }

  int exponent() const noexcept { return factors_.empty() ? 1 : factors_.back(); }

  bool is_trivial() const noexcept { return factors_.empty(); }

  GroupElement zero() const { return GroupElement{std::vector<int>(factors_.size(), 0)}; }

  bool contains(const GroupElement& x) const {
    if (x.residues.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (x.residues[i] < 0 || x.residues[i] >= factors_[i]) return false;
    return true;
  }

  // Reduces an arbitrary integer tuple of the right length into the group.
  GroupElement reduce(std::vector<int> residues) const {
    if (residues.size() != factors_.size())
      throw Error(ErrorCode::ElementGroupMismatch,
                  "expected " + std::to_string(factors_.size()) + " residues, got " +
                      std::to_string(residues.size()));
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      residues[i] %= factors_[i];
      if (residues[i] < 0) residues[i] += factors_[i];
    }
    return GroupElement{std::move(residues)};
  }

  GroupElement add(const GroupElement& x, const GroupElement& y) const {
    check(x);
    check(y);
    GroupElement z = x;
    for (std::size_t i = 0; i < factors_.size(); ++i) z.residues[i] = (x.residues[i] + y.residues[i]) % factors_[i];
    return z;
  }

  GroupElement negate(const GroupElement& x) const {
    check(x);
    GroupElement z = x;
    for (std::size_t i = 0; i < factors_.size(); ++i) z.residues[i] = (factors_[i] - x.residues[i]) % factors_[i];
    return z;
  }

  GroupElement multiple(const GroupElement& x, long long n) const {
    check(x);
    GroupElement z = x;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      long long r = (static_cast<long long>(x.residues[i]) * (n % factors_[i])) % factors_[i];
      if (r < 0) r += factors_[i];
      z.residues[i] = static_cast<int>(r);
    }
    return z;
  }

  // sigma of a sequence: the sum of its terms; the empty sum is zero.
  GroupElement sum(std::span<const GroupElement> terms) const {
    GroupElement acc = zero();
    for (const auto& t : terms) acc = add(acc, t);
    return acc;
  }

  int order_of(const GroupElement& x) const {
    check(x);
    int ord = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      int d = factors_[i];
      int o = d / std::gcd(d, x.residues[i]);
      ord = std::lcm(ord, o);
    }
    return ord;
  }

  // Index in lexicographic order of residue tuples (zero has index 0).
  std::size_t index_of(const GroupElement& x) const {
    check(x);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + x.residues[i];
    return idx;
  }

  GroupElement element_at(std::size_t idx) const {
    GroupElement x{std::vector<int>(factors_.size(), 0)};
    for (std::size_t i = factors_.size(); i-- > 0;) {
      x.residues[i] = static_cast<int>(idx % factors_[i]);
      idx /= factors_[i];
    }
    return x;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(order());
    for (std::size_t i = 0; i < order(); ++i) out.push_back(element_at(i));
    return out;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  void check(const GroupElement& x) const {
    if (!contains(x))
      throw Error(ErrorCode::ElementGroupMismatch, "element " + to_string(x) + " does not belong to the group");
  }

  static std::vector<int> normalize(std::span<const int> moduli) {
    // prime -> list of prime-power exponents
    std::map<int, std::vector<int>> primary;
    for (int m : moduli) {
      if (m <= 1) throw Error(ErrorCode::InvalidGroup, "modulus " + std::to_string(m) + " must be >= 2");
      int n = m;
      for (int p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
          n /= p;
          ++e;
        }
        if (e) primary[p].push_back(e);
      }
      if (n > 1) primary[n].push_back(1);
    }
    std::size_t r = 0;
    for (auto& [p, exps] : primary) {
      std::sort(exps.begin(), exps.end(), std::greater<>());
      r = std::max(r, exps.size());
    }
    // factors[0] is the largest; reversed at the end
    std::vector<int> factors(r, 1);
    for (const auto& [p, exps] : primary)
      for (std::size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) factors[i] *= p;
    std::reverse(factors.begin(), factors.end());
    return factors;
  }

  std::vector<int> factors_;
};

inline AbelianGroup group_from_invariants(std::span<const int> factors) { return AbelianGroup(factors); }

inline AbelianGroup group_from_invariants(const std::vector<int>& factors) {
  return AbelianGroup(std::span<const int>(factors));
}

}  // namespace factorlab
