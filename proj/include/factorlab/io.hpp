#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "factorlab/invariants.hpp"
#include "factorlab/monoid.hpp"
#include "factorlab/structure.hpp"
#include "factorlab/verification.hpp"

namespace factorlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Instance files
//
// {"class_group": [2], "free_classes": "all" | [[1], ...],
//  "components": [{"rank": 1, "unit_group": [2], "unit_class_images": [[1]], "prime_classes": [[1]]}]}
//
// Groups are normalized to invariant factors on load; residues refer to that normal form.
// For cyclic groups a bare integer may stand for a one-entry residue array.

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline std::vector<int> int_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, field + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw Error(ErrorCode::ParseError, field + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(j[i].get<int>());
  }
  return out;
}

inline GroupElement group_element(const json& j, const AbelianGroup& g, const std::string& field, ErrorCode bad) {
  std::vector<int> r;
  if (j.is_number_integer() && g.rank() == 1)
    r = {j.get<int>()};
  else
    r = int_list(j, field);
  GroupElement x{r};
  if (!g.contains(x)) throw Error(bad, field + ": " + to_string(x) + " is not a reduced element of the group");
  return x;
}

inline AbelianGroup group(const json& j, const std::string& field) {
  auto f = int_list(j, field);
  try {
    return AbelianGroup(std::span<const int>(f));
  } catch (const Error& e) {
    throw Error(e.code(), field + ": " + e.what());
  }
}

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, where + ": missing field '" + key + "'");
  return j.at(key);
}

}  // namespace detail

inline BlockModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "instance: expected an object");
  const AbelianGroup g = detail::group(detail::require(doc, "class_group", "instance"), "class_group");
  std::vector<LocalComponent> comps;
  if (doc.contains("components")) {
    const auto& cs = doc.at("components");
    if (!cs.is_array()) throw Error(ErrorCode::ParseError, "components: expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string where = "components[" + std::to_string(i) + "]";
      const auto& c = cs[i];
      LocalComponent lc;
      const auto& rank = detail::require(c, "rank", where);
      if (!rank.is_number_integer()) throw Error(ErrorCode::ParseError, where + ".rank: expected an integer");
      lc.rank = rank.get<int>();
      lc.unit_group = detail::group(c.contains("unit_group") ? c.at("unit_group") : json::array(), where + ".unit_group");
      const json imgs = c.contains("unit_class_images") ? c.at("unit_class_images") : json::array();
      if (!imgs.is_array()) throw Error(ErrorCode::ParseError, where + ".unit_class_images: expected an array");
      for (std::size_t k = 0; k < imgs.size(); ++k)
        lc.unit_class_images.push_back(detail::group_element(imgs[k], g, where + ".unit_class_images[" + std::to_string(k) + "]", ErrorCode::InvalidModel));
      const auto& pcs = detail::require(c, "prime_classes", where);
      if (!pcs.is_array()) throw Error(ErrorCode::ParseError, where + ".prime_classes: expected an array");
      for (std::size_t k = 0; k < pcs.size(); ++k)
        lc.prime_classes.push_back(detail::group_element(pcs[k], g, where + ".prime_classes[" + std::to_string(k) + "]", ErrorCode::InvalidModel));
      comps.push_back(std::move(lc));
    }
  }
  std::optional<std::vector<GroupElement>> free;
  if (doc.contains("free_classes")) {
    const auto& f = doc.at("free_classes");
    if (f.is_string()) {
      if (f.get<std::string>() != "all") throw Error(ErrorCode::ParseError, "free_classes: expected \"all\" or an array");
    } else if (f.is_array()) {
      std::vector<GroupElement> v;
      for (std::size_t k = 0; k < f.size(); ++k)
        v.push_back(detail::group_element(f[k], g, "free_classes[" + std::to_string(k) + "]", ErrorCode::InvalidModel));
      free = std::move(v);
    } else {
      throw Error(ErrorCode::ParseError, "free_classes: expected \"all\" or an array");
    }
  }
  return make_block_model(g, std::move(comps), std::move(free));
}

inline BlockModel parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  return model_from_json(doc);
}

inline BlockModel parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

inline json model_to_json(const BlockModel& m) {
  if (m.has_labeled_primes()) throw Error(ErrorCode::InvalidModel, "labelled free primes have no instance-file form");
  json doc;
  doc["class_group"] = m.class_group().invariant_factors();
  doc["components"] = json::array();
  for (const auto& c : m.components()) {
    json jc;
    jc["rank"] = c.rank;
    jc["unit_group"] = c.unit_group.invariant_factors();
    jc["unit_class_images"] = json::array();
    for (const auto& x : c.unit_class_images) jc["unit_class_images"].push_back(x.residues);
    jc["prime_classes"] = json::array();
    for (const auto& x : c.prime_classes) jc["prime_classes"].push_back(x.residues);
    doc["components"].push_back(jc);
  }
  const auto all = m.class_group().elements();
  const auto fc = m.free_classes();
  if (fc == all) {
    doc["free_classes"] = "all";
  } else {
    doc["free_classes"] = json::array();
    for (const auto& x : fc) doc["free_classes"].push_back(x.residues);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Element grammar:  free: [g, g, ...]   cI: u=[residues] q^[k1, ..., ks]
// Segments may appear in any order; "u=" may be omitted (trivial unit); "1" is the identity.

namespace detail {

class ElementParser {
 public:
  ElementParser(const std::string& text, const BlockModel& m) : s_(text), m_(m) {}

  ModelElement parse() {
    ModelElement x = identity(m_);
    skip();
    if (pos_ == s_.size()) return x;
    if (s_[pos_] == '1') {
      ++pos_;
      skip();
      if (pos_ != s_.size()) fail("unexpected text after the identity");
      return x;
    }
    std::vector<bool> seen(m_.component_count(), false);
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      if (s_.compare(pos_, 4, "free") == 0) {
        pos_ += 4;
        expect(':');
        free_segment(x);
      } else if (s_[pos_] == 'c') {
        ++pos_;
        const int i = integer();
        if (i < 0 || static_cast<std::size_t>(i) >= m_.component_count()) fail("no component c" + std::to_string(i));
        if (seen[i]) fail("component c" + std::to_string(i) + " given twice");
        seen[i] = true;
        expect(':');
        x.parts[i] = local_segment(static_cast<std::size_t>(i));
      } else {
        fail("expected 'free:' or 'cI:'");
      }
    }
    check_shape(m_, x);
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "element, column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  int integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ - start == 1 && s_[start] == '-')) fail("expected an integer");
    return std::stoi(s_.substr(start, pos_ - start));
  }
  std::vector<int> int_array() {
    expect('[');
    std::vector<int> v;
    if (peek(']')) {
      ++pos_;
      return v;
    }
    while (true) {
      v.push_back(integer());
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return v;
    }
  }

  GroupElement class_token() {
    const auto& g = m_.class_group();
    GroupElement e;
    if (peek('['))
      e.residues = int_array();
    else if (g.rank() == 1)
      e.residues = {integer()};
    else if (g.is_trivial() && integer() == 0)
      e.residues = {};
    else
      fail("expected a residue array");
    if (!g.contains(e)) fail("class " + to_string(e) + " is not a reduced element of the class group");
    return e;
  }

  void free_segment(ModelElement& x) {
    expect('[');
    if (peek(']')) {
      ++pos_;
      return;
    }
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == 'p') {
        ++pos_;
        const int slot = integer();
        if (slot < 0 || static_cast<std::size_t>(slot) >= m_.slot_count()) fail("no free prime p" + std::to_string(slot));
        x.free[slot]++;
      } else {
        const GroupElement g = class_token();
        const int idx = static_cast<int>(m_.class_group().index_of(g));
        bool placed = false;
        for (std::size_t s = 0; s < m_.slot_count() && !placed; ++s)
          if (m_.slot_class(s) == idx) {
            x.free[s]++;
            placed = true;
          }
        if (!placed) fail("class " + to_string(g) + " holds no free prime");
      }
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect(']');
      return;
    }
  }

  LocalElement local_segment(std::size_t comp) {
    const auto& e = m_.components()[comp].unit_group;
    GroupElement unit = e.zero();
    skip();
    if (pos_ < s_.size() && s_[pos_] == 'u') {
      ++pos_;
      expect('=');
      unit.residues = int_array();
      if (!e.contains(unit)) fail("unit " + to_string(unit) + " is not a reduced element of E in c" + std::to_string(comp));
    }
    skip();
    if (pos_ >= s_.size() || s_[pos_] != 'q') fail("expected q^[...]");
    ++pos_;
    expect('^');
    auto k = int_array();
    if (k.size() != static_cast<std::size_t>(m_.components()[comp].rank))
      throw Error(ErrorCode::ElementModelMismatch,
                  "element: c" + std::to_string(comp) + " has rank " + std::to_string(m_.components()[comp].rank));
    for (int v : k)
      if (v < 1) fail("exponents must be >= 1");
    return LocalElement{static_cast<int>(e.index_of(unit)), k};
  }

  const std::string& s_;
  const BlockModel& m_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses without the membership test.
inline ModelElement parse_ambient_element(const std::string& text, const BlockModel& m) {
  return detail::ElementParser(text, m).parse();
}

inline ModelElement parse_element(const std::string& text, const BlockModel& m) {
  auto x = parse_ambient_element(text, m);
  require_member(m, x);
  return x;
}

// ---------------------------------------------------------------------------
// Bounds: "default" or "free=N,exp=N,atoms=N" (any subset, rest default)

inline DegreeBound parse_bound(const std::string& text) {
  DegreeBound b = kDefaultBound;
  if (text.empty() || text == "default") return b;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "bound: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bound: '" + item + "' is not key=integer");
    }
    if (v < 0) throw Error(ErrorCode::ParseError, "bound: values must be >= 0");
    if (key == "free")
      b.max_free_length = v;
    else if (key == "exp")
      b.max_exponent = v;
    else if (key == "atoms")
      b.max_atom_count = v;
    else
      throw Error(ErrorCode::ParseError, "bound: unknown key '" + key + "'");
  }
  return b;
}

// ---------------------------------------------------------------------------
// Reports

inline void to_json(json& j, const DegreeBound& b) {
  j = json{{"free", b.max_free_length}, {"exp", b.max_exponent}, {"atoms", b.max_atom_count}};
}
inline void from_json(const json& j, DegreeBound& b) {
  b.max_free_length = j.at("free").get<int>();
  b.max_exponent = j.at("exp").get<int>();
  b.max_atom_count = j.at("atoms").get<int>();
}

inline void to_json(json& j, const Exactness& e) {
  if (e.exact)
    j = json{{"exact", true}, {"clause", e.clause}};
  else
    j = json{{"exact", false}, {"bound", e.bound}};
}
inline void from_json(const json& j, Exactness& e) {
  e = Exactness{};
  e.exact = j.at("exact").get<bool>();
  if (e.exact)
    e.clause = j.at("clause").get<std::string>();
  else
    e.bound = j.at("bound").get<DegreeBound>();
}

inline void to_json(json& j, const InvariantReport& r) {
  json unions = json::object(), rho = json::object(), lambda = json::object();
  for (const auto& [k, u] : r.unions) unions[std::to_string(k)] = json{{"set", u.set}, {"is_interval", u.is_interval}};
  for (const auto& [k, v] : r.rho) rho[std::to_string(k)] = v;
  for (const auto& [k, v] : r.lambda) lambda[std::to_string(k)] = v;
  json ex = json::object();
  for (const auto& [k, v] : r.exactness) ex[k] = v;
  j = json{{"bound", r.bound},
           {"delta", r.delta},
           {"unions", unions},
           {"rho", rho},
           {"lambda", lambda},
           {"catenary", r.catenary},
           {"catenary_eq", r.catenary_eq},
           {"catenary_adj", r.catenary_adj},
           {"catenary_mon", r.catenary_mon},
           {"omega", json{{"value", r.omega}, {"infinite", r.omega_infinite}}},
           {"half_factorial", r.half_factorial},
           {"exactness", ex}};
}

inline void from_json(const json& j, InvariantReport& r) {
  r = InvariantReport{};
  r.bound = j.at("bound").get<DegreeBound>();
  r.delta = j.at("delta").get<std::vector<int>>();
  for (const auto& [k, v] : j.at("unions").items())
    r.unions[std::stoi(k)] = UnionEntry{v.at("set").get<std::vector<int>>(), v.at("is_interval").get<bool>()};
  for (const auto& [k, v] : j.at("rho").items()) r.rho[std::stoi(k)] = v.get<int>();
  for (const auto& [k, v] : j.at("lambda").items()) r.lambda[std::stoi(k)] = v.get<int>();
  r.catenary = j.at("catenary").get<int>();
  r.catenary_eq = j.at("catenary_eq").get<int>();
  r.catenary_adj = j.at("catenary_adj").get<int>();
  r.catenary_mon = j.at("catenary_mon").get<int>();
  r.omega = j.at("omega").at("value").get<int>();
  r.omega_infinite = j.at("omega").at("infinite").get<bool>();
  r.half_factorial = j.at("half_factorial").get<bool>();
  for (const auto& [k, v] : j.at("exactness").items()) r.exactness[k] = v.get<Exactness>();
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "inconclusive-bound") return Verdict::InconclusiveBound;
  throw Error(ErrorCode::ParseError, "unknown verdict '" + s + "'");
}

inline void to_json(json& j, const Check& c) {
  j = json{{"id", c.id},       {"clause", c.clause},   {"predicted", c.predicted},
           {"computed", c.computed}, {"verdict", to_string(c.verdict)}, {"witness", c.witness}};
}
inline void from_json(const json& j, Check& c) {
  c.id = j.at("id").get<std::string>();
  c.clause = j.at("clause").get<std::string>();
  c.predicted = j.at("predicted").get<std::string>();
  c.computed = j.at("computed").get<std::string>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.witness = j.at("witness").get<std::string>();
}

inline void to_json(json& j, const SuiteResult& r) {
  j = json{{"bound", r.bound}, {"checks", r.checks}, {"passed", r.passed()}, {"elapsed_seconds", r.elapsed_seconds}};
}
inline void from_json(const json& j, SuiteResult& r) {
  r.bound = j.at("bound").get<DegreeBound>();
  r.checks = j.at("checks").get<std::vector<Check>>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
}

inline void to_json(json& j, const Prediction& p) {
  j = json{{"clause", p.clause}, {"quantity", p.quantity}, {"relation", to_string(p.relation)}, {"ambient", p.ambient}};
  if (p.relation == Relation::Equal || p.relation == Relation::AtMost || p.relation == Relation::ContainsTail ||
      p.relation == Relation::EllOrNext)
    j["value"] = p.value;
  if (p.quantity == "delta") j["set"] = p.set;
  if (p.quantity == "unions") j["k"] = p.ks;
  if (p.relation == Relation::Boolean) j["flag"] = p.flag;
}

inline void to_json(json& j, const ClassificationReport& r) {
  j = json{{"pi_bijective", r.pi_bijective},
           {"vartheta_iso", r.vartheta_iso ? json(*r.vartheta_iso) : json(nullptr)},
           {"half_factorial_predicted", r.half_factorial_predicted ? json(*r.half_factorial_predicted) : json(nullptr)},
           {"predictions", r.predictions},
           {"applicable_transfer", to_string(r.applicable_transfer)},
           {"notes", r.notes}};
}

}  // namespace factorlab
