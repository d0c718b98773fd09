#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "factorlab/factorization.hpp"
#include "factorlab/invariants.hpp"
#include "factorlab/structure.hpp"

namespace factorlab {

// A monoid homomorphism between two block models, given elementwise.
struct TransferMap {
  std::string name;
  BlockModel source;
  BlockModel target;
  std::function<ModelElement(const ModelElement&)> apply;
};

// beta: free primes go to their classes, the T part is unchanged. The target has one
// free prime per class that holds a prime of the source.
inline TransferMap beta_map(const BlockModel& m) {
  BlockModel target = make_block_model(m.class_group(), m.components(), m.free_classes());
  std::vector<std::size_t> slot_to(m.slot_count());
  for (std::size_t s = 0; s < m.slot_count(); ++s)
    for (std::size_t t = 0; t < target.slot_count(); ++t)
      if (target.slot_class(t) == m.slot_class(s)) slot_to[s] = t;
  auto apply = [m, target, slot_to](const ModelElement& a) {
    require_member(m, a);
    ModelElement b = identity(target);
    for (std::size_t s = 0; s < a.free.size(); ++s) b.free[slot_to[s]] += a.free[s];
    b.parts = a.parts;
    return b;
  };
  return TransferMap{"beta", m, target, apply};
}

inline ModelElement transfer_beta(const BlockModel& m, const ModelElement& a) { return beta_map(m).apply(a); }

// theta onto B(G): a free prime of class g gives g, a rank-one part eps*q^k gives [q]^k
// (units sit in class 0 under atom-class constancy).
inline TransferMap theta_map(const BlockModel& m) {
  if (!pi_bijective(m)) throw Error(ErrorCode::HypothesesNotMet, "theta needs every component of rank 1");
  if (!vartheta_iso(m)) throw Error(ErrorCode::HypothesesNotMet, "theta needs atom-class constancy in every component");
  if (!m.every_class_has_free_prime()) throw Error(ErrorCode::HypothesesNotMet, "theta needs a free prime in every class");
  BlockModel target = make_block_model(m.class_group(), {});
  auto apply = [m, target](const ModelElement& a) {
    require_member(m, a);
    ModelElement b = identity(target);
    // target slots are indexed by class index
    for (std::size_t s = 0; s < a.free.size(); ++s) b.free[m.slot_class(s)] += a.free[s];
    for (std::size_t i = 0; i < a.parts.size(); ++i)
      if (!a.parts[i].is_identity()) b.free[m.prime_class(i, 0)] += a.parts[i].exponents[0];
    return b;
  };
  return TransferMap{"theta", m, target, apply};
}

// theta(a) as a sorted zero-sum sequence over G.
inline std::vector<GroupElement> transfer_theta(const BlockModel& m, const ModelElement& a) {
  auto t = theta_map(m);
  auto b = t.apply(a);
  std::vector<GroupElement> seq;
  for (std::size_t s = 0; s < b.free.size(); ++s)
    for (int c = 0; c < b.free[s]; ++c) seq.push_back(t.target.slot_class_element(s));
  return seq;
}

inline TransferMap compose(const TransferMap& first, const TransferMap& second) {
  auto f = first.apply;
  auto g = second.apply;
  return TransferMap{second.name + "*" + first.name, first.source, second.target,
                     [f, g](const ModelElement& a) { return g(f(a)); }};
}

struct TransferCheck {
  bool passed = true;
  std::string failed_axiom;  // "surjective", "identity-fiber", "lifting", "lengths", "fiber-chains"
  std::optional<ModelElement> witness;  // source element (target element for "surjective")
  std::string detail;
  std::size_t samples = 0;
  std::size_t fibers_checked = 0;
  int max_fiber_catenary = 0;
};

// Checks the transfer axioms on every element within the bound:
//   every target element within the bound is hit; only 1 maps to 1; every split of
//   f(a) lifts to a split of a; L(a) = L(f(a)); factorizations of a with equal image
//   are 2-chain connected inside their fiber.
inline TransferCheck check_transfer(const TransferMap& f, const DegreeBound& bound, const SearchOptions& opts = {}) {
  TransferCheck r;
  const auto& src = f.source;
  const auto& tgt = f.target;
  auto fail = [&r](std::string axiom, std::optional<ModelElement> w, std::string detail) {
    r.passed = false;
    r.failed_axiom = std::move(axiom);
    r.witness = std::move(w);
    r.detail = std::move(detail);
    return r;
  };

  const auto elements = enumerate_elements(src, bound);
  std::set<ModelElement> image;
  for (const auto& a : elements) image.insert(f.apply(a));
  // free length only: image elements of length <= bound come from the source free part
  for (const auto& b : enumerate_elements(tgt, DegreeBound{bound.max_free_length, bound.max_exponent, 0}))
    if (!image.count(b)) return fail("surjective", b, "target element " + format_element(tgt, b) + " has no preimage within the bound");

  for (const auto& a : elements) {
    ++r.samples;
    const ModelElement fa = f.apply(a);
    if (!a.is_identity() && fa.is_identity()) return fail("identity-fiber", a, "non-identity element maps to 1");

    std::set<ModelElement> lifted;
    for (const auto& d : model_divisors(src, a)) lifted.insert(f.apply(d));
    for (const auto& b : model_divisors(tgt, fa))
      if (!lifted.count(b))
        return fail("lifting", a, "split " + format_element(tgt, b) + " of the image does not lift");

    const auto zs = factorization_set(src, a, opts);
    const auto zt = factorization_set(tgt, fa, opts);
    if (zs.lengths() != zt.lengths()) return fail("lengths", a, "length sets differ");

    // fibers of the induced map on factorizations
    std::vector<ModelElement> atom_images;
    for (const auto& u : zs.atoms) atom_images.push_back(f.apply(u));
    std::map<std::vector<ModelElement>, std::vector<std::size_t>> fibers;
    for (std::size_t i = 0; i < zs.factorizations.size(); ++i) {
      std::vector<ModelElement> key;
      for (const auto& [idx, c] : zs.factorizations[i])
        for (int k = 0; k < c; ++k) key.push_back(atom_images[idx]);
      std::sort(key.begin(), key.end());
      fibers[key].push_back(i);
    }
    for (const auto& [key, nodes] : fibers) {
      ++r.fibers_checked;
      const int c = detail::bottleneck(zs.factorizations, nodes);
      r.max_fiber_catenary = std::max(r.max_fiber_catenary, c);
      if (c > 2) return fail("fiber-chains", a, "fiber needs a " + std::to_string(c) + "-chain");
    }
  }
  return r;
}

}  // namespace factorlab
