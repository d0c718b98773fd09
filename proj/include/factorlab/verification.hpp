#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "factorlab/factorization.hpp"
#include "factorlab/invariants.hpp"
#include "factorlab/structure.hpp"

namespace factorlab {

// ---------------------------------------------------------------------------
// Oracles. These only use the monoid primitives (divisors, quotients), never the
// factorization engine.

// Atom test by a plain scan of all divisors, without the local closed form.
inline bool oracle_is_atom(const BlockModel& m, const ModelElement& x) {
  require_member(m, x);
  if (x.is_identity()) return false;
  for (const auto& d : model_divisors(m, x))
    if (!d.is_identity() && d != x) return false;
  return true;
}

class FactorizationOracle {
 public:
  explicit FactorizationOracle(const BlockModel& m, std::uint64_t budget = 20'000'000) : m_(m), budget_(budget) {}

  // Z(a) = { u z : u an atom dividing a, z in Z(a/u), every atom of z >= u }.
  // Atoms come from a divisor scan, so each multiset is built exactly once from its least atom.
  std::vector<Factorization> factorizations(const ModelElement& a) {
    require_member(m_, a);
    std::vector<Factorization> out;
    for (const auto& z : split(a)) out.push_back(to_runs(z));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  using Multiset = std::vector<ModelElement>;  // sorted

  static Factorization to_runs(const Multiset& z) {
    Factorization f;
    for (const auto& u : z) {
      if (!f.runs.empty() && f.runs.back().first == u)
        f.runs.back().second++;
      else
        f.runs.emplace_back(u, 1);
    }
    return f;
  }

  bool atom(const ModelElement& x) {
    if (auto it = atoms_.find(x); it != atoms_.end()) return it->second;
    return atoms_.emplace(x, oracle_is_atom(m_, x)).first->second;
  }

  const std::vector<Multiset>& split(const ModelElement& a) {
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    std::vector<Multiset> result;
    if (a.is_identity()) {
      result.push_back(Multiset{});
    } else {
      for (const auto& d : model_divisors(m_, a)) {
        if (d.is_identity() || !atom(d)) continue;
        if (++nodes_ > budget_) throw Error(ErrorCode::SearchBudgetExceeded, "oracle exceeded its node budget");
        const auto& rest = split(*divide_exact(m_, d, a, false));  // std::map: references stay valid
        for (const auto& z : rest) {
          if (!z.empty() && z.front() < d) continue;
          Multiset y{d};
          y.insert(y.end(), z.begin(), z.end());
          result.push_back(std::move(y));
        }
      }
    }
    return memo_.emplace(a, std::move(result)).first->second;
  }

  const BlockModel& m_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::map<ModelElement, std::vector<Multiset>> memo_;
  std::map<ModelElement, bool> atoms_;
};

inline std::vector<Factorization> oracle_factorizations(const BlockModel& m, const ModelElement& a) {
  return FactorizationOracle(m).factorizations(a);
}

// ---------------------------------------------------------------------------
// Theorem suite

enum class Verdict { Pass, Fail, InconclusiveBound };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::InconclusiveBound: return "inconclusive-bound";
  }
  return "?";
}

struct Check {
  std::string id;
  std::string clause;
  std::string predicted;
  std::string computed;
  Verdict verdict = Verdict::Pass;
  std::string witness;

  friend bool operator==(const Check&, const Check&) = default;
};

struct SuiteResult {
  std::vector<Check> checks;
  double elapsed_seconds = 0;
  DegreeBound bound;

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict == Verdict::Fail; });
  }
  const Check* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
};

struct SuiteOptions {
  SearchOptions search;
  OmegaOptions omega;
  bool oracle = true;          // oracle equivalence on every element within the bound
  std::size_t pair_limit = 4'000'000;  // factorization pairs examined per element for the distance inequality
};

// The model with the class group collapsed: the coproduct of the local components.
// Free primes are left out; they are prime there and change none of the predicted values.
inline BlockModel ambient_model(const BlockModel& m) {
  AbelianGroup trivial;
  std::vector<LocalComponent> comps;
  for (const auto& c : m.components()) {
    LocalComponent d = c;
    d.unit_class_images.assign(c.unit_class_images.size(), trivial.zero());
    d.prime_classes.assign(c.prime_classes.size(), trivial.zero());
    comps.push_back(std::move(d));
  }
  return make_block_model(trivial, std::move(comps), std::vector<GroupElement>{});
}

namespace detail {

inline std::string set_string(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

inline std::string lengths_string(const LengthSet& l) { return set_string(l); }

struct ScanSummary {
  int catenary = 0, catenary_eq = 0, catenary_adj = 0, catenary_mon = 0;
  std::optional<std::size_t> arg_catenary, arg_eq, arg_adj, arg_mon;
  std::vector<int> delta;
  std::optional<std::size_t> arg_delta;
};

inline ScanSummary summarize(const MonoidScan& scan) {
  ScanSummary s;
  std::set<int> d;
  auto upd = [](int v, std::size_t i, int& best, std::optional<std::size_t>& arg) {
    if (!arg || v > best) {
      best = v;
      arg = i;
    }
  };
  for (std::size_t i = 0; i < scan.data.size(); ++i) {
    const auto& e = scan.data[i];
    upd(e.catenary, i, s.catenary, s.arg_catenary);
    upd(e.catenary_eq, i, s.catenary_eq, s.arg_eq);
    upd(e.catenary_adj, i, s.catenary_adj, s.arg_adj);
    upd(e.catenary_mon, i, s.catenary_mon, s.arg_mon);
    for (int v : e.delta) {
      if (d.empty() || v > *d.rbegin()) s.arg_delta = i;
      d.insert(v);
    }
  }
  s.delta.assign(d.begin(), d.end());
  return s;
}

inline Verdict compare_equal(int computed, int predicted) {
  if (computed > predicted) return Verdict::Fail;
  if (computed < predicted) return Verdict::InconclusiveBound;
  return Verdict::Pass;
}

inline void prediction_checks(const BlockModel& model, const MonoidScan& scan, const std::vector<Prediction>& preds,
                              bool ambient, const SuiteOptions& opts, const DegreeBound& bound, SuiteResult& out) {
  const auto sum = summarize(scan);
  const std::string prefix = ambient ? "ambient." : "";
  auto elem = [&](std::optional<std::size_t> i) { return i ? format_element(model, scan.elements[*i]) : std::string(); };
  std::optional<OmegaResult> om;

  for (const auto& p : preds) {
    if (p.ambient != ambient) continue;
    Check c;
    c.clause = p.clause;
    const std::string q = p.quantity;
    if (q == "catenary" || q == "catenary_eq" || q == "catenary_adj" || q == "catenary_mon") {
      int v = sum.catenary;
      auto arg = sum.arg_catenary;
      if (q == "catenary_eq") v = sum.catenary_eq, arg = sum.arg_eq;
      if (q == "catenary_adj") v = sum.catenary_adj, arg = sum.arg_adj;
      if (q == "catenary_mon") v = sum.catenary_mon, arg = sum.arg_mon;
      c.id = prefix + q;
      c.predicted = std::string(to_string(p.relation)) + " " + std::to_string(p.value);
      c.computed = std::to_string(v);
      c.witness = elem(arg);
      if (p.relation == Relation::AtMost)
        c.verdict = v <= p.value ? Verdict::Pass : Verdict::Fail;
      else
        c.verdict = compare_equal(v, p.value);
      out.checks.push_back(c);
    } else if (q == "delta") {
      c.id = prefix + "delta";
      c.predicted = set_string(p.set);
      c.computed = set_string(sum.delta);
      c.witness = elem(sum.arg_delta);
      const bool subset = std::includes(p.set.begin(), p.set.end(), sum.delta.begin(), sum.delta.end());
      c.verdict = !subset ? Verdict::Fail : (sum.delta == p.set ? Verdict::Pass : Verdict::InconclusiveBound);
      out.checks.push_back(c);
    } else if (q == "unions") {
      for (int k : p.ks) {
        auto u = union_of_lengths(scan, k);
        Check ck = c;
        ck.id = prefix + "unions.k" + std::to_string(k);
        ck.computed = set_string(u.set);
        if (p.relation == Relation::Interval) {
          ck.predicted = "interval";
          ck.verdict = u.is_interval ? Verdict::Pass : Verdict::Fail;
        } else if (p.relation == Relation::ContainsTail) {
          ck.predicted = "N>=" + std::to_string(p.value) + " within reach, subset of N>=2";
          const bool low = std::any_of(u.set.begin(), u.set.end(), [](int l) { return l < 2; });
          bool full = true;
          for (int l = p.value; l <= u.rho; ++l)
            if (!std::binary_search(u.set.begin(), u.set.end(), l)) full = false;
          ck.verdict = low ? Verdict::Fail : (full && u.rho >= p.value ? Verdict::Pass : Verdict::InconclusiveBound);
        } else if (p.relation == Relation::EllOrNext) {
          ck.predicted = "l or l+1 for every l >= 2";
          bool ok = true;
          for (int l = 2; l < u.rho; ++l)
            if (!std::binary_search(u.set.begin(), u.set.end(), l) && !std::binary_search(u.set.begin(), u.set.end(), l + 1)) ok = false;
          const bool low = std::any_of(u.set.begin(), u.set.end(), [](int l) { return l < 2; });
          ck.verdict = low ? Verdict::Fail : (ok && u.rho >= 2 ? Verdict::Pass : Verdict::InconclusiveBound);
        }
        out.checks.push_back(ck);
      }
    } else if (q == "omega") {
      if (!om) om = omega_monoid(model, bound, opts.omega);
      c.id = prefix + "omega";
      c.computed = std::to_string(om->value) + (om->search_complete ? "" : " (search budget reached)");
      if (om->atom) {
        c.witness = "u=" + format_element(model, *om->atom) + " |";
        for (const auto& a : om->witness) c.witness += " (" + format_element(model, a) + ")";
      }
      if (p.relation == Relation::Infinite) {
        c.predicted = "infinite";
        c.verdict = om->value >= bound.max_atom_count ? Verdict::Pass : Verdict::InconclusiveBound;
      } else {
        c.predicted = "= " + std::to_string(p.value);
        c.verdict = compare_equal(om->value, p.value);
      }
      out.checks.push_back(c);
    } else if (q == "half_factorial") {
      auto hf = is_half_factorial(model, scan);
      c.id = prefix + "half_factorial";
      c.predicted = p.flag ? "true" : "false";
      c.computed = hf.value ? "true" : "false";
      if (hf.witness) c.witness = format_element(model, *hf.witness) + " L=" + lengths_string(hf.witness_lengths);
      if (p.flag)
        c.verdict = hf.value ? Verdict::Pass : Verdict::Fail;
      else
        c.verdict = hf.value ? Verdict::InconclusiveBound : Verdict::Pass;
      out.checks.push_back(c);
    }
  }
}

}  // namespace detail

// Compares every prediction of classify, and the general inequalities, against brute force
// within the bound.
inline SuiteResult run_theorem_suite(const BlockModel& m, const DegreeBound& bound, const SuiteOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult out;
  out.bound = bound;
  const auto cls = classify(m);

  MonoidScan scan;
  try {
    scan = scan_monoid(m, bound, opts.search);
  } catch (const Error& e) {
    out.checks.push_back(Check{"scan", "enumeration", "", e.what(), Verdict::InconclusiveBound, ""});
    out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

  detail::prediction_checks(m, scan, cls.predictions, false, opts, bound, out);

  const bool has_ambient = std::any_of(cls.predictions.begin(), cls.predictions.end(), [](const Prediction& p) { return p.ambient; });
  if (has_ambient) {
    const auto amb = ambient_model(m);
    DegreeBound ab = bound;
    ab.max_free_length = 0;
    const auto ascan = scan_monoid(amb, ab, opts.search);
    detail::prediction_checks(amb, ascan, cls.predictions, true, opts, ab, out);
  }

  // ---- general inequalities, element by element
  auto add = [&](std::string id, std::string clause, std::string predicted, std::size_t violations, std::size_t tested,
                 std::string witness, bool bound_sensitive = false) {
    Verdict v = violations == 0 ? Verdict::Pass : (bound_sensitive ? Verdict::InconclusiveBound : Verdict::Fail);
    out.checks.push_back(Check{std::move(id), std::move(clause), std::move(predicted),
                               std::to_string(violations) + " violations in " + std::to_string(tested), v,
                               std::move(witness)});
  };

  {
    std::size_t bad = 0, tested = 0;
    std::string w;
    for (std::size_t i = 0; i < scan.elements.size(); ++i) {
      const auto zs = factorization_set(m, scan.elements[i], opts.search);
      const auto n = zs.factorizations.size();
      if (n * n > opts.pair_limit) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          ++tested;
          const int d = indexed_distance(zs.factorizations[a], zs.factorizations[b]);
          if (2 + std::abs(zs.lengths_of[a] - zs.lengths_of[b]) > d) {
            if (!bad++) w = format_element(m, scan.elements[i]);
          }
        }
    }
    add("inequality.distance-length", "2 + ||z|-|z'|| <= d(z,z')", "0 violations", bad, tested, w);
  }
  {
    std::size_t bad2 = 0, bad3 = 0;
    std::string w2, w3;
    for (std::size_t i = 0; i < scan.elements.size(); ++i) {
      const auto& e = scan.data[i];
      if (!(e.catenary <= e.catenary_mon && e.catenary_mon == std::max(e.catenary_eq, e.catenary_adj) &&
            e.catenary_mon <= e.lengths.back()))
        if (!bad2++) w2 = format_element(m, scan.elements[i]);
      if (e.lengths.size() > 1 && e.catenary < 2 + e.delta.back())
        if (!bad3++) w3 = format_element(m, scan.elements[i]);
    }
    add("inequality.catenary-monotone", "c <= c_mon = max(c_eq, c_adj) <= max L", "0 violations", bad2, scan.elements.size(), w2);
    add("inequality.catenary-delta", "c >= 2 + max delta(L) when |L| > 1", "0 violations", bad3, scan.elements.size(), w3);
  }

  // c(H) <= omega(H), on computed values; only a failure when omega is certified
  if (const auto* p = cls.find("omega"); p && p->relation == Relation::Equal) {
    const auto sum = detail::summarize(scan);
    Check c{"inequality.catenary-omega", "c(H) <= omega(H)", "<= " + std::to_string(p->value), std::to_string(sum.catenary),
            sum.catenary <= p->value ? Verdict::Pass : Verdict::Fail, ""};
    out.checks.push_back(c);
  }

  // Tail propagation, truncated at R = the largest length seen within the bound:
  // once U_n holds all of [n, R], so does U_k for n <= k <= 5. Violations may be bound effects.
  {
    std::size_t bad = 0, tested = 0;
    std::string w;
    int reach = 0;
    for (const auto& e : scan.data) reach = std::max(reach, e.lengths.back());
    std::map<int, UnionResult> us;
    for (int k = 2; k <= 5; ++k) us[k] = union_of_lengths(scan, k);
    auto covers = [&](int k, int n) {
      for (int l = n; l <= reach; ++l)
        if (!std::binary_search(us[k].set.begin(), us[k].set.end(), l)) return l;
      return 0;
    };
    for (int n = 2; n <= 5 && n < reach; ++n) {
      if (covers(n, n) != 0) continue;
      for (int k = n + 1; k <= 5; ++k) {
        ++tested;
        if (int miss = covers(k, n); miss != 0)
          if (!bad++) w = "n=" + std::to_string(n) + ", k=" + std::to_string(k) + " misses " + std::to_string(miss);
      }
    }
    add("unions.tail-propagation", "U_n >= [n, R] implies U_k >= [n, R] for k >= n", "0 violations", bad, tested, w, true);
  }

  // l in U_k iff k in U_l: both say some element has k and l in its length set
  {
    std::size_t bad = 0, tested = 0;
    std::string w;
    std::map<int, UnionResult> us;
    for (int k = 2; k <= 5; ++k) us[k] = union_of_lengths(scan, k);
    for (int k = 2; k <= 5; ++k)
      for (int l = 2; l <= 5; ++l) {
        ++tested;
        const bool a = std::binary_search(us[k].set.begin(), us[k].set.end(), l);
        const bool b = std::binary_search(us[l].set.begin(), us[l].set.end(), k);
        if (a != b)
          if (!bad++) w = "k=" + std::to_string(k) + ", l=" + std::to_string(l);
      }
    add("unions.symmetry", "l in U_k iff k in U_l", "0 violations", bad, tested, w);
  }

  const bool trivial_group = m.class_group().is_trivial();
  if (trivial_group) {
    std::size_t bad_bounds = 0, bad_atom = 0, bad_bif = 0, tested = 0;
    std::string wb, wa, wf;
    for (std::size_t i = 0; i < scan.elements.size(); ++i) {
      std::size_t comp = 0;
      const auto& x = scan.elements[i];
      if (!detail::is_pure_local(x, &comp)) continue;
      ++tested;
      const auto& p = x.parts[comp];
      const auto& l = scan.data[i].lengths;
      // the min L bound needs rank >= 2: at rank 1, eps q^k has the single length k
      const bool low_ok = m.components()[comp].rank < 2 || l.front() <= 2;
      if (!low_ok || l.back() > p.min_exponent())
        if (!bad_bounds++) wb = format_element(m, x);
      if (oracle_is_atom(m, x) != (p.min_exponent() == 1))
        if (!bad_atom++) wa = format_element(m, x);
      if (m.components()[comp].rank >= 2 && l != LengthSet{1} && l.front() != 2)
        if (!bad_bif++) wf = format_element(m, x);
    }
    add("local.length-bounds", "max L <= min k, and min L <= 2 at rank >= 2", "0 violations", bad_bounds, tested, wb);
    add("local.atom-closed-form", "atom iff min k = 1", "0 violations", bad_atom, tested, wa);
    add("local.bifurcus", "min L = 2 for non-atoms at rank >= 2", "0 violations", bad_bif, tested, wf);

    // product rule for c_eq: split off component 0 when the rest has one length
    if (m.component_count() >= 2) {
      std::size_t bad = 0, checked = 0;
      std::string w;
      for (std::size_t i = 0; i < scan.elements.size(); ++i) {
        const auto& x = scan.elements[i];
        ModelElement a1 = identity(m), a2 = x;
        a1.parts[0] = x.parts[0];
        a2.parts[0] = LocalElement{};
        if (a1.is_identity() || a2.is_identity()) continue;
        const auto e1 = element_invariants(m, a1, opts.search);
        const auto e2 = element_invariants(m, a2, opts.search);
        const int lo = std::max(e1.catenary_eq, e2.catenary_eq);
        const int c = scan.data[i].catenary_eq;
        ++checked;
        if (c < lo || (e2.lengths.size() == 1 && c != lo))
          if (!bad++) w = format_element(m, x);
      }
      add("product.catenary-eq", "max(c_eq(a1), c_eq(a2)) <= c_eq(a1 a2), equal when |L(a2)| = 1", "0 violations", bad, checked, w);
    }
  }

  if (opts.oracle) {
    std::size_t bad = 0;
    std::string w;
    FactorizationOracle oracle(m);
    for (const auto& x : scan.elements)
      if (oracle.factorizations(x) != factorizations(m, x, opts.search))
        if (!bad++) w = format_element(m, x);
    add("oracle.factorizations", "divisor-lattice oracle equals the engine", "0 violations", bad, scan.elements.size(), w);
  }

  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace factorlab
