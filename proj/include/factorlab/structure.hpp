#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "factorlab/monoid.hpp"

namespace factorlab {

// All local components of rank 1.
inline bool pi_bijective(const BlockModel& m) {
  return std::all_of(m.components().begin(), m.components().end(), [](const LocalComponent& c) { return c.rank == 1; });
}

// Atom-class constancy per component: for rank one the atoms eps*q all share a class iff
// every unit maps to class 0.
inline bool vartheta_iso(const BlockModel& m) {
  if (!pi_bijective(m)) throw Error(ErrorCode::RankNotOne, "atom-class constancy is only defined when every component has rank 1");
  for (std::size_t i = 0; i < m.component_count(); ++i)
    for (std::size_t u = 0; u < m.unit_count(i); ++u)
      if (m.unit_class(i, static_cast<int>(u)) != 0) return false;
  return true;
}

// Whether the atoms of the local monoid of component i meet more than one class.
inline bool component_mixed(const BlockModel& m, std::size_t i) {
  for (std::size_t u = 0; u < m.unit_count(i); ++u)
    if (m.unit_class(i, static_cast<int>(u)) != 0) return true;
  const auto& c = m.components().at(i);
  if (c.rank == 1) return false;
  // (1,1,..), (2,1,..), (1,2,..), ... all are atoms; their classes differ by each [q_j]
  for (int j = 0; j < c.rank; ++j)
    if (m.prime_class(i, static_cast<std::size_t>(j)) != 0) return true;
  return false;
}

inline std::size_t mixed_component_count(const BlockModel& m) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < m.component_count(); ++i)
    if (component_mixed(m, i)) ++n;
  return n;
}

enum class Relation {
  Equal,        // value (or set) exactly
  AtMost,       // value is an upper bound
  Interval,     // every U_k is an interval
  EllOrNext,    // for every l >= 2: l or l+1 lies in U_k
  ContainsTail, // N_{>= value} is contained in U_k, and U_k is contained in N_{>= 2}
  Infinite,     // the invariant is infinite
  Boolean,      // flag
};

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::AtMost: return "<=";
    case Relation::Interval: return "interval";
    case Relation::EllOrNext: return "l-or-l+1";
    case Relation::ContainsTail: return "contains-tail";
    case Relation::Infinite: return "infinite";
    case Relation::Boolean: return "flag";
  }
  return "?";
}

// Quantities: "catenary", "catenary_eq", "catenary_adj", "catenary_mon", "delta",
// "unions", "omega", "half_factorial".
struct Prediction {
  std::string clause;
  std::string quantity;
  Relation relation = Relation::Equal;
  int value = 0;
  std::vector<int> set;     // delta
  std::vector<int> ks;      // unions: which k the statement covers (checked range)
  bool flag = false;        // half_factorial
  bool ambient = false;     // about the model with the class group collapsed to 0

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

enum class Transfer { None, Beta, Theta };

inline const char* to_string(Transfer t) {
  switch (t) {
    case Transfer::None: return "none";
    case Transfer::Beta: return "beta";
    case Transfer::Theta: return "theta";
  }
  return "?";
}

struct ClassificationReport {
  bool pi_bijective = false;
  std::optional<bool> vartheta_iso;             // only meaningful when pi_bijective
  std::optional<bool> half_factorial_predicted;
  std::vector<Prediction> predictions;
  Transfer applicable_transfer = Transfer::None;
  std::vector<std::string> notes;

  // First prediction for a quantity (ambient or not), if any.
  const Prediction* find(const std::string& quantity, bool ambient = false) const {
    for (const auto& p : predictions)
      if (p.quantity == quantity && p.ambient == ambient) return &p;
    return nullptr;
  }

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

namespace detail {

inline Prediction equal(std::string clause, std::string q, int v, bool ambient = false) {
  Prediction p{std::move(clause), std::move(q), Relation::Equal, v, {}, {}, false, ambient};
  return p;
}

inline Prediction at_most(std::string clause, std::string q, int v, bool ambient = false) {
  Prediction p{std::move(clause), std::move(q), Relation::AtMost, v, {}, {}, false, ambient};
  return p;
}

inline Prediction delta_equal(std::string clause, std::vector<int> s, bool ambient = false) {
  Prediction p{std::move(clause), "delta", Relation::Equal, 0, std::move(s), {}, false, ambient};
  return p;
}

inline Prediction unions(std::string clause, Relation r, int v, std::vector<int> ks, bool ambient = false) {
  Prediction p{std::move(clause), "unions", r, v, {}, std::move(ks), false, ambient};
  return p;
}

// Coproduct of free primes and local components (class group collapsed): the local
// monoids are half-factorial with c <= 2 at rank one and bifurcus at rank >= 2.
inline void coproduct_predictions(const BlockModel& m, bool ambient, std::vector<Prediction>& out) {
  const std::string tag = ambient ? "ambient." : "coproduct.";
  std::size_t bifurcus = 0;
  bool nonfactorial_rank_one = false;
  for (std::size_t i = 0; i < m.component_count(); ++i) {
    if (m.components()[i].rank >= 2)
      ++bifurcus;
    else if (m.unit_count(i) >= 2)
      nonfactorial_rank_one = true;
  }
  if (bifurcus == 0) {
    if (ambient && nonfactorial_rank_one)
      out.push_back(equal(tag + "rank-one.catenary", "catenary", 2, ambient));
    else
      out.push_back(at_most(tag + "rank-one.catenary", "catenary", 2, ambient));
    if (!ambient) {
      Prediction hf{tag + "rank-one.half-factorial", "half_factorial", Relation::Boolean, 0, {}, {}, true, ambient};
      out.push_back(hf);
      out.push_back(delta_equal(tag + "rank-one.delta", {}, ambient));
    }
    return;
  }
  out.push_back(unions(tag + "bifurcus.unions", Relation::ContainsTail, 2, {2, 3, 4, 5}, ambient));
  out.push_back(delta_equal(tag + "bifurcus.delta", {1}, ambient));
  out.push_back(equal(tag + "bifurcus.catenary", "catenary", 3, ambient));
  out.push_back(equal(tag + "bifurcus.catenary-adj", "catenary_adj", 3, ambient));
  if (bifurcus == 1) {
    out.push_back(equal(tag + "one-bifurcus.catenary-eq", "catenary_eq", 2, ambient));
    out.push_back(equal(tag + "one-bifurcus.catenary-mon", "catenary_mon", 3, ambient));
  } else {
    out.push_back(equal(tag + "several-bifurcus.catenary-eq", "catenary_eq", 5, ambient));
    out.push_back(equal(tag + "several-bifurcus.catenary-mon", "catenary_mon", 5, ambient));
  }
  if (!ambient) {
    Prediction hf{tag + "bifurcus.half-factorial", "half_factorial", Relation::Boolean, 0, {}, {}, false, ambient};
    out.push_back(hf);
  }
}

}  // namespace detail

// Emits every prediction whose hypotheses hold for the model. Clause ids name the
// hypotheses that were used.
inline ClassificationReport classify(const BlockModel& m) {
  ClassificationReport r;
  r.pi_bijective = pi_bijective(m);
  if (r.pi_bijective) r.vartheta_iso = vartheta_iso(m);
  const std::size_t order = m.class_group().order();

  if (order == 1) {
    detail::coproduct_predictions(m, false, r.predictions);
    r.half_factorial_predicted = r.pi_bijective;
    r.notes.push_back("trivial class group: the model is a coproduct of free primes and local components");
  } else {
    if (m.component_count() > 0) detail::coproduct_predictions(m, true, r.predictions);

    if (!m.every_class_has_free_prime()) {
      r.notes.push_back("some class holds no free prime: only ambient predictions apply");
    } else {
      const bool hf = order <= 2 && r.pi_bijective && *r.vartheta_iso;
      r.half_factorial_predicted = hf;
      Prediction hfp{"free-in-every-class.half-factorial", "half_factorial", Relation::Boolean, 0, {}, {}, hf, false};
      r.predictions.push_back(hfp);
      if (hf) {
        r.predictions.push_back(detail::at_most("free-in-every-class.half-factorial.catenary", "catenary", 2));
        r.predictions.push_back(detail::delta_equal("free-in-every-class.half-factorial.delta", {}));
      }
      if (r.pi_bijective) {
        r.predictions.push_back(detail::unions("free-in-every-class.rank-one.unions", Relation::Interval, 0, {2, 3, 4, 5}));
      } else {
        r.predictions.push_back(detail::unions("free-in-every-class.higher-rank.unions-small-k", Relation::EllOrNext, 2, {2, 3}));
        r.predictions.push_back(detail::unions("free-in-every-class.higher-rank.unions-large-k", Relation::ContainsTail, 4, {4, 5}));
      }
      if (order == 2 && !hf) {
        if (r.pi_bijective) {
          if (mixed_component_count(m) == 1) {
            r.predictions.push_back(detail::equal("order-two.one-mixed.catenary", "catenary", 3));
            r.predictions.push_back(detail::equal("order-two.one-mixed.omega", "omega", 3));
            r.predictions.push_back(detail::delta_equal("order-two.one-mixed.delta", {1}));
          } else {
            r.predictions.push_back(detail::equal("order-two.several-mixed.catenary", "catenary", 4));
            r.predictions.push_back(detail::equal("order-two.several-mixed.omega", "omega", 4));
            r.predictions.push_back(detail::delta_equal("order-two.several-mixed.delta", {1, 2}));
          }
        } else {
          Prediction inf{"order-two.higher-rank.omega", "omega", Relation::Infinite, 0, {}, {}, false, false};
          r.predictions.push_back(inf);
        }
      }
      if (order > 2 && !r.pi_bijective)
        r.notes.push_back("class group of order >= 3 with a component of rank >= 2: no exact catenary or omega values known");
      else if (order > 2 && !*r.vartheta_iso)
        r.notes.push_back("class group of order >= 3 with mixed atom classes: no exact catenary or omega values known");
    }
  }

  if (m.every_class_has_free_prime() && r.pi_bijective && *r.vartheta_iso)
    r.applicable_transfer = Transfer::Theta;
  else if (m.has_labeled_primes())
    r.applicable_transfer = Transfer::Beta;
  return r;
}

}  // namespace factorlab
