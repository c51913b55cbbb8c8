#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "culogic/metric.hpp"

namespace culogic {

using nlohmann::json;

// JSON conventions:
//  - rationals are "p/q" strings, canonical coprime form;
//  - a standalone predicate is {"carrier": [names...], "values": {name: "p/q"}};
//  - tables indexed by several sort elements use comma-joined keys "a,b";
//  - PERs are {"carrier": ..., "rel": {values}}, functional relations
//    {"source": per, "target": per, "rel": {values}} with "(x,y)" keys.

namespace detail {

inline void check_atom_name(const std::string& n) {
  if (n.empty()) throw Error("empty element name");
  for (char c : n)
    if (c == ',' || c == '(' || c == ')' || std::isspace((unsigned char)c))
      throw Error("element name '" + n + "' contains reserved characters");
}

} // namespace detail

inline json predicate_values_json(const Predicate& p) {
  json values = json::object();
  for (std::size_t i = 0; i < p.size(); ++i)
    values[p.carrier().element_name(i)] = p.at(i).str();
  return values;
}

/// Reads a value table keyed by the element names of a known carrier.
inline Predicate predicate_values_from_json(const Carrier& c, const json& values) {
  if (!values.is_object()) throw Error("expected an object of values");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < c.size(); ++i) index[c.element_name(i)] = i;
  std::vector<Value> vals(c.size(), Value::zero());
  std::vector<bool> seen(c.size(), false);
  for (const auto& [key, v] : values.items()) {
    auto it = index.find(key);
    if (it == index.end()) throw Error("unknown element '" + key + "'");
    vals[it->second] = Value::parse(v.get<std::string>());
    seen[it->second] = true;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!seen[i]) throw Error("missing value for element '" + c.element_name(i) + "'");
  return Predicate(c, std::move(vals));
}

inline json to_json(const Predicate& p) {
  json names = json::array();
  for (std::size_t i = 0; i < p.carrier().size(); ++i)
    names.push_back(p.carrier().element_name(i));
  return json{{"carrier", names}, {"values", predicate_values_json(p)}};
}

/// A standalone predicate file: the carrier is a flat list of atoms.
inline Predicate predicate_from_json(const json& j) {
  if (!j.contains("carrier") || !j.contains("values"))
    throw Error("predicate JSON needs 'carrier' and 'values'");
  std::vector<std::string> names;
  for (const auto& n : j.at("carrier")) {
    names.push_back(n.get<std::string>());
    detail::check_atom_name(names.back());
  }
  Carrier c = Carrier::atoms(std::move(names));
  return predicate_values_from_json(c, j.at("values"));
}

inline json to_json(const Modulus& m) {
  json grid = json::array(), deltas = json::array();
  for (const Rat& g : m.grid()) grid.push_back(g.str());
  for (const Rat& d : m.deltas()) deltas.push_back(d.str());
  return json{{"grid", grid}, {"deltas", deltas}};
}

inline json to_json(const ResidualBound& f) {
  json pts = json::array();
  for (const auto& [t, v] : f.points())
    pts.push_back(json::array({t.str(), v.str()}));
  return json{{"breakpoints", pts}};
}

inline json to_json(const MapArrow& f) {
  json table = json::object();
  for (std::size_t i = 0; i < f.domain().size(); ++i)
    table[f.domain().element_name(i)] = f.codomain().element_name(f.apply(i));
  return json{{"table", table}};
}

inline json per_to_json(const Per& p) {
  json names = json::array();
  for (std::size_t i = 0; i < p.carrier().size(); ++i)
    names.push_back(p.carrier().element_name(i));
  return json{{"carrier", names},
              {"rel", json{{"values", predicate_values_json(p.rel())}}}};
}

inline Per per_from_json(const json& j) {
  if (!j.contains("carrier") || !j.contains("rel"))
    throw Error("per JSON needs 'carrier' and 'rel'");
  std::vector<std::string> names;
  for (const auto& n : j.at("carrier")) {
    names.push_back(n.get<std::string>());
    detail::check_atom_name(names.back());
  }
  Carrier c = Carrier::atoms(std::move(names));
  Predicate rel =
      predicate_values_from_json(Carrier::product(c, c), j.at("rel").at("values"));
  return Per(c, std::move(rel));
}

inline json functional_to_json(const FunctionalRelation& f) {
  return json{{"source", per_to_json(f.source())},
              {"target", per_to_json(f.target())},
              {"rel", json{{"values", predicate_values_json(f.rel())}}}};
}

inline FunctionalRelation functional_from_json(const json& j) {
  if (!j.contains("source") || !j.contains("target") || !j.contains("rel"))
    throw Error("functional relation JSON needs 'source', 'target', 'rel'");
  Per src = per_from_json(j.at("source"));
  Per tgt = per_from_json(j.at("target"));
  Predicate rel = predicate_values_from_json(
      Carrier::product(src.carrier(), tgt.carrier()), j.at("rel").at("values"));
  return FunctionalRelation(std::move(src), std::move(tgt), std::move(rel));
}

inline json strict_to_json(const StrictPredicate& s) {
  return json{{"object", per_to_json(s.object())},
              {"pred", json{{"values", predicate_values_json(s.pred())}}}};
}

inline StrictPredicate strict_from_json(const json& j) {
  Per obj = per_from_json(j.at("object"));
  Predicate pred =
      predicate_values_from_json(obj.carrier(), j.at("pred").at("values"));
  return StrictPredicate(std::move(obj), std::move(pred));
}

inline json metric_to_json(const FinPseudoMetric& m) {
  json names = json::array();
  for (std::size_t i = 0; i < m.carrier().size(); ++i)
    names.push_back(m.carrier().element_name(i));
  json values = json::object();
  Carrier sq = Carrier::product(m.carrier(), m.carrier());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    auto [a, b] = sq.unpair(i);
    values[m.carrier().element_name(a) + "," + m.carrier().element_name(b)] =
        m.d().at(i).str();
  }
  return json{{"carrier", names}, {"values", values}};
}

// --- model files -----------------------------------------------------------

namespace detail {

/// Splits "a,b,c" on commas; a single name stays whole, "()" denotes the
/// empty tuple.
inline std::vector<std::string> split_key(const std::string& key) {
  if (key == "()") return {};
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(key.substr(start));
      break;
    }
    parts.push_back(key.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

/// Index of an element tuple in the unit-seeded fold product.
inline std::size_t tuple_index(const std::vector<Carrier>& carriers,
                               const std::vector<std::string>& names) {
  if (carriers.size() != names.size())
    throw Error("tuple key has the wrong number of components");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    const auto& atoms = carriers[i].atom_names();
    std::size_t e = atoms.size();
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if (atoms[k] == names[i]) { e = k; break; }
    if (e == atoms.size())
      throw Error("unknown element '" + names[i] + "'");
    idx = idx * carriers[i].size() + e;
  }
  return idx;
}

inline std::string tuple_key(const std::vector<Carrier>& carriers, std::size_t idx) {
  if (carriers.empty()) return "()";
  std::vector<std::size_t> comps(carriers.size());
  for (std::size_t i = carriers.size(); i-- > 0;) {
    comps[i] = idx % carriers[i].size();
    idx /= carriers[i].size();
  }
  std::string out;
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    if (i) out += ",";
    out += carriers[i].element_name(comps[i]);
  }
  return out;
}

} // namespace detail

/// Loads a model file:
///   {"sorts": {"S": ["a","b"]},
///    "functions": {"f": {"args": ["S"], "result": "S", "table": {"a":"b"}}},
///    "relations": {"R": {"args": ["S"], "values": {"a": "0/1"}}},
///    "metrics":  {"S": {"values": {"a,b": "1/2"}}}}        (optional)
/// Metrics, when present, must cover every sort and satisfy the axioms.
struct LoadedModel {
  Interpretation<UBackend> plain;
  std::optional<CmtInterpretation> cmt;  // present iff metrics were given
};

inline LoadedModel model_from_json(const json& j) {
  LoadedModel out;
  Interpretation<UBackend>& I = out.plain;
  if (!j.contains("sorts")) throw Error("model JSON needs 'sorts'");

  for (const auto& [name, elems] : j.at("sorts").items()) {
    std::vector<std::string> names;
    for (const auto& e : elems) {
      names.push_back(e.get<std::string>());
      detail::check_atom_name(names.back());
    }
    I.signature.add_sort(name);
    I.sorts.emplace(name, Carrier::atoms(std::move(names)));
  }

  auto carrier_list = [&](const std::vector<std::string>& args) {
    std::vector<Carrier> cs;
    for (const auto& a : args) {
      auto it = I.sorts.find(a);
      if (it == I.sorts.end()) throw Error("unknown sort '" + a + "'");
      cs.push_back(it->second);
    }
    return cs;
  };
  auto fold_carrier = [&](const std::vector<Carrier>& cs) {
    Carrier c = Carrier::unit();
    for (const auto& a : cs) c = Carrier::product(c, a);
    return c;
  };

  if (j.contains("functions")) {
    for (const auto& [name, fj] : j.at("functions").items()) {
      FunctionDecl decl;
      for (const auto& a : fj.at("args")) decl.args.push_back(a.get<std::string>());
      decl.result = fj.at("result").get<std::string>();
      std::vector<Carrier> argc = carrier_list(decl.args);
      Carrier dom = fold_carrier(argc);
      const Carrier& cod = I.sorts.at(decl.result);
      const auto& cod_names = cod.atom_names();

      std::vector<std::size_t> table(dom.size(), cod.size());
      for (const auto& [key, target] : fj.at("table").items()) {
        std::size_t idx = detail::tuple_index(argc, detail::split_key(key));
        std::string t = target.get<std::string>();
        std::size_t e = cod.size();
        for (std::size_t k = 0; k < cod_names.size(); ++k)
          if (cod_names[k] == t) { e = k; break; }
        if (e == cod.size()) throw Error("unknown element '" + t + "'");
        table[idx] = e;
      }
      for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i] == cod.size())
          throw Error("function '" + name + "' table is missing entry '" +
                      detail::tuple_key(argc, i) + "'");
      I.signature.add_function(name, decl);
      I.functions.emplace(name, MapArrow(dom, cod, std::move(table)));
    }
  }

  if (j.contains("relations")) {
    for (const auto& [name, rj] : j.at("relations").items()) {
      std::vector<std::string> args;
      for (const auto& a : rj.at("args")) args.push_back(a.get<std::string>());
      std::vector<Carrier> argc = carrier_list(args);
      Carrier dom = fold_carrier(argc);
      std::vector<Value> vals(dom.size(), Value::zero());
      std::vector<bool> seen(dom.size(), false);
      for (const auto& [key, v] : rj.at("values").items()) {
        std::size_t idx = detail::tuple_index(argc, detail::split_key(key));
        vals[idx] = Value::parse(v.get<std::string>());
        seen[idx] = true;
      }
      for (std::size_t i = 0; i < dom.size(); ++i)
        if (!seen[i])
          throw Error("relation '" + name + "' is missing value at '" +
                      detail::tuple_key(argc, i) + "'");
      I.signature.add_relation(name, args);
      I.relations.emplace(name, Predicate(dom, std::move(vals)));
    }
  }

  validate_interpretation(I);

  if (j.contains("metrics")) {
    CmtInterpretation C;
    C.signature = I.signature;
    C.functions = I.functions;
    C.relations = I.relations;
    for (const auto& s : I.signature.sorts()) {
      if (!j.at("metrics").contains(s))
        throw Error("metrics missing for sort '" + s + "'");
      const Carrier& c = I.sorts.at(s);
      std::vector<Carrier> pairc = {c, c};
      const json& values = j.at("metrics").at(s).at("values");
      Carrier sq = Carrier::product(c, c);
      std::vector<Value> vals(sq.size(), Value::zero());
      std::vector<bool> seen(sq.size(), false);
      for (const auto& [key, v] : values.items()) {
        auto parts = detail::split_key(key);
        std::size_t idx = detail::tuple_index(pairc, parts);
        vals[idx] = Value::parse(v.get<std::string>());
        seen[idx] = true;
      }
      // Unlisted pairs: diagonal defaults to 0, everything else to 1.
      for (std::size_t i = 0; i < sq.size(); ++i)
        if (!seen[i]) {
          auto [a, b] = sq.unpair(i);
          vals[i] = a == b ? Value::zero() : Value::one();
        }
      C.sorts.emplace(s, FinPseudoMetric(c, Predicate(sq, std::move(vals))));
    }
    validate_cmt(C);
    out.cmt = std::move(C);
  }
  return out;
}

inline json model_to_json(const Interpretation<UBackend>& I) {
  json sorts = json::object();
  for (const auto& [name, c] : I.sorts) {
    json elems = json::array();
    for (const auto& n : c.atom_names()) elems.push_back(n);
    sorts[name] = elems;
  }
  json functions = json::object();
  for (const auto& [name, f] : I.functions) {
    const FunctionDecl& decl = *I.signature.function(name);
    std::vector<Carrier> argc;
    for (const auto& a : decl.args) argc.push_back(I.sorts.at(a));
    json table = json::object();
    for (std::size_t i = 0; i < f.domain().size(); ++i)
      table[detail::tuple_key(argc, i)] = f.codomain().element_name(f.apply(i));
    functions[name] = json{{"args", decl.args}, {"result", decl.result},
                           {"table", table}};
  }
  json relations = json::object();
  for (const auto& [name, p] : I.relations) {
    const auto& args = *I.signature.relation(name);
    std::vector<Carrier> argc;
    for (const auto& a : args) argc.push_back(I.sorts.at(a));
    json values = json::object();
    for (std::size_t i = 0; i < p.size(); ++i)
      values[detail::tuple_key(argc, i)] = p.at(i).str();
    relations[name] = json{{"args", args}, {"values", values}};
  }
  return json{{"sorts", sorts}, {"functions", functions}, {"relations", relations}};
}

} // namespace culogic
