// factorlab command line: atoms | factorize | invariants | classify | verify | davenport

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "factorlab/factorlab.hpp"

using namespace factorlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

std::string join(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string format_factorization(const BlockModel& m, const Factorization& z) {
  std::string s;
  for (const auto& [u, c] : z.runs) {
    if (!s.empty()) s += " * ";
    s += "(" + format_element(m, u) + ")";
    if (c > 1) s += "^" + std::to_string(c);
  }
  return s.empty() ? "1" : s;
}

std::vector<int> parse_group_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "group: '" + item + "' is not an integer");
    }
  }
  return out;
}

struct Common {
  std::string instance;
  std::string bound = "default";
  bool as_json = false;
  std::uint64_t budget = SearchOptions{}.node_budget;
};

int cmd_atoms(const Common& c) {
  const auto m = parse_instance(c.instance);
  const auto b = parse_bound(c.bound);
  const auto list = enumerate_atoms(m, b);
  if (c.as_json) {
    json j;
    j["complete"] = list.complete;
    j["bound"] = b;
    j["atoms"] = json::array();
    for (const auto& a : list.atoms) j["atoms"].push_back(format_element(m, a));
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& a : list.atoms) std::cout << format_element(m, a) << "\n";
    std::cout << list.atoms.size() << " atoms" << (list.complete ? " (complete)" : " (within bound)") << "\n";
  }
  return kExitOk;
}

int cmd_factorize(const Common& c, const std::string& element) {
  const auto m = parse_instance(c.instance);
  const auto a = parse_element(element, m);
  SearchOptions opts{c.budget};
  const auto zs = factorizations(m, a, opts);
  const auto l = lengths(m, a, opts);
  if (c.as_json) {
    json j;
    j["element"] = format_element(m, a);
    j["factorizations"] = json::array();
    for (const auto& z : zs) {
      json runs = json::array();
      for (const auto& [u, k] : z.runs) runs.push_back(json{{"atom", format_element(m, u)}, {"multiplicity", k}});
      j["factorizations"].push_back(runs);
    }
    j["lengths"] = l;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& z : zs) std::cout << format_factorization(m, z) << "   [length " << z.length() << "]\n";
    std::cout << zs.size() << " factorizations, L = " << join(l) << "\n";
  }
  return kExitOk;
}

int cmd_invariants(const Common& c, const std::string& element) {
  const auto m = parse_instance(c.instance);
  const auto b = parse_bound(c.bound);
  SearchOptions opts{c.budget};
  if (!element.empty()) {
    const auto a = parse_element(element, m);
    const auto e = element_invariants(m, a, opts);
    std::optional<OmegaResult> om;
    if (is_atom(m, a)) om = omega(m, a, b);
    if (c.as_json) {
      json j{{"element", format_element(m, a)},
             {"lengths", e.lengths},
             {"delta", e.delta},
             {"factorizations", e.factorization_count},
             {"catenary", e.catenary},
             {"catenary_eq", e.catenary_eq},
             {"catenary_adj", e.catenary_adj},
             {"catenary_mon", e.catenary_mon}};
      if (om) {
        j["omega"] = json{{"value", om->value}, {"exactness", om->exactness}};
        j["omega"]["witness"] = json::array();
        for (const auto& w : om->witness) j["omega"]["witness"].push_back(format_element(m, w));
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "element       " << format_element(m, a) << "\n"
                << "|Z|           " << e.factorization_count << "\n"
                << "L             " << join(e.lengths) << "\n"
                << "delta         " << join(e.delta) << "\n"
                << "c             " << e.catenary << "\n"
                << "c_eq          " << e.catenary_eq << "\n"
                << "c_adj         " << e.catenary_adj << "\n"
                << "c_mon         " << e.catenary_mon << "\n";
      if (om) {
        std::cout << "omega         " << om->value << (om->exactness.exact ? "" : " (lower bound)") << "   witness:";
        for (const auto& w : om->witness) std::cout << " (" << format_element(m, w) << ")";
        std::cout << "\n";
      }
    }
    return kExitOk;
  }

  ReportOptions ro;
  ro.search = opts;
  const auto r = invariant_report(m, b, ro);
  if (c.as_json) {
    std::cout << json(r).dump(2) << "\n";
    return kExitOk;
  }
  auto tag = [&](const std::string& field) {
    auto it = r.exactness.find(field);
    if (it == r.exactness.end()) return std::string();
    return it->second.exact ? "  exact (" + it->second.clause + ")" : std::string("  lower bound");
  };
  std::cout << "bound         free=" << b.max_free_length << ",exp=" << b.max_exponent << ",atoms=" << b.max_atom_count << "\n"
            << "delta         " << join(r.delta) << tag("delta") << "\n"
            << "c             " << r.catenary << tag("catenary") << "\n"
            << "c_eq          " << r.catenary_eq << tag("catenary_eq") << "\n"
            << "c_adj         " << r.catenary_adj << tag("catenary_adj") << "\n"
            << "c_mon         " << r.catenary_mon << tag("catenary_mon") << "\n"
            << "omega         " << (r.omega_infinite ? "infinite (witnessed >= " + std::to_string(r.omega) + ")" : std::to_string(r.omega))
            << tag("omega") << "\n"
            << "half-factorial " << (r.half_factorial ? "yes" : "no") << tag("half_factorial") << "\n";
  for (const auto& [k, u] : r.unions)
    std::cout << "U_" << k << "           " << join(u.set) << (u.is_interval ? " interval" : "") << "  rho=" << r.rho.at(k)
              << " lambda=" << r.lambda.at(k) << "\n";
  return kExitOk;
}

int cmd_classify(const Common& c) {
  const auto m = parse_instance(c.instance);
  const auto r = classify(m);
  if (c.as_json) {
    std::cout << json(r).dump(2) << "\n";
    return kExitOk;
  }
  auto opt = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; };
  std::cout << "pi bijective          " << (r.pi_bijective ? "yes" : "no") << "\n"
            << "atom classes constant " << opt(r.vartheta_iso) << "\n"
            << "half-factorial        " << opt(r.half_factorial_predicted) << "\n"
            << "transfer              " << to_string(r.applicable_transfer) << "\n";
  for (const auto& p : r.predictions) {
    std::cout << "  " << (p.ambient ? "[ambient] " : "") << p.quantity << " " << to_string(p.relation);
    if (p.quantity == "delta")
      std::cout << " " << join(p.set);
    else if (p.relation == Relation::Boolean)
      std::cout << " " << (p.flag ? "true" : "false");
    else if (p.relation != Relation::Infinite && p.relation != Relation::Interval)
      std::cout << " " << p.value;
    if (p.quantity == "unions") std::cout << " for k in " << join(p.ks);
    std::cout << "   (" << p.clause << ")\n";
  }
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
  return kExitOk;
}

int cmd_verify(const Common& c) {
  const auto m = parse_instance(c.instance);
  const auto b = parse_bound(c.bound);
  SuiteOptions so;
  so.search.node_budget = c.budget;
  const auto r = run_theorem_suite(m, b, so);
  if (c.as_json) {
    std::cout << json(r).dump(2) << "\n";
  } else {
    for (const auto& ch : r.checks) {
      std::cout << to_string(ch.verdict) << "  " << ch.id << "  predicted " << ch.predicted << ", computed " << ch.computed;
      if (ch.verdict != Verdict::Pass && !ch.witness.empty()) std::cout << "  witness: " << ch.witness;
      std::cout << "\n";
    }
    std::cout << (r.passed() ? "all checks passed" : "verification FAILED") << " (" << r.elapsed_seconds << " s)\n";
  }
  return r.passed() ? kExitOk : kExitVerifyFailed;
}

int cmd_davenport(const Common& c, const std::string& group) {
  const auto g = AbelianGroup(std::span<const int>(parse_group_list(group)));
  const int d = davenport(g);
  if (c.as_json)
    std::cout << json{{"group", g.invariant_factors()}, {"davenport", d}}.dump(2) << "\n";
  else
    std::cout << d << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization invariants of finite block-monoid models"};
  app.require_subcommand(1);

  Common common;
  std::string element, group;

  auto add_common = [&](CLI::App* sub, bool with_instance, bool with_bound) {
    if (with_instance) sub->add_option("instance", common.instance, "instance file (JSON)")->required();
    if (with_bound) sub->add_option("--bound", common.bound, "free=N,exp=N,atoms=N or default");
    sub->add_flag("--json", common.as_json, "machine-readable output");
    sub->add_option("--budget", common.budget, "node budget for factorization searches");
  };

  auto* atoms = app.add_subcommand("atoms", "list atoms within the bound");
  add_common(atoms, true, true);
  auto* fact = app.add_subcommand("factorize", "all factorizations of an element");
  add_common(fact, true, false);
  fact->add_option("--element", element, "element, e.g. \"free:[1,1,1] c0: u=[1] q^[2]\"")->required();
  auto* inv = app.add_subcommand("invariants", "monoid invariants within the bound, or of one element");
  add_common(inv, true, true);
  inv->add_option("--element", element, "element-level invariants instead");
  auto* cls = app.add_subcommand("classify", "structural predicates and predicted invariants");
  add_common(cls, true, false);
  auto* ver = app.add_subcommand("verify", "compare predictions with brute force");
  add_common(ver, true, true);
  auto* dav = app.add_subcommand("davenport", "Davenport constant of a finite abelian group");
  add_common(dav, false, false);
  dav->add_option("--group", group, "moduli, e.g. 3,3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*atoms) return cmd_atoms(common);
    if (*fact) return cmd_factorize(common, element);
    if (*inv) return cmd_invariants(common, element);
    if (*cls) return cmd_classify(common);
    if (*ver) return cmd_verify(common);
    if (*dav) return cmd_davenport(common, group);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::SearchBudgetExceeded ? kExitBudget : kExitInput;
  }
  return kExitInput;
}
