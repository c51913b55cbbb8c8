#pragma once

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "culogic/laws.hpp"
#include "culogic/parser.hpp"

namespace culogic::cli {

struct RunConfig {
  std::uint64_t seed = 2026;
  std::size_t trials = 200;
  Rat grid = Rat(1, 16);        // classifier stratum resolution, 1/2^k
  std::string format = "text";  // "text" | "json"
  std::string mutation;         // test-only fault injection for `laws`

  void validate() const {
    if (trials < 1) throw Error("config: trials must be at least 1");
    if (grid.num() != 1 || grid.den() < 2 || (grid.den() & (grid.den() - 1)) != 0)
      throw Error("config: grid must be 1/2^k, k >= 1");
    if (format != "text" && format != "json")
      throw Error("config: format must be text or json");
  }
};

/// Outcome of one CLI command. The JSON report is byte-deterministic for
/// fixed inputs and seed; wall time appears only in the text rendering.
struct CommandResult {
  int exit_code = 0;
  json report;
  std::string text;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load_json(const std::string& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw Error("malformed JSON in '" + path + "'");
  return j;
}

inline CommandResult input_error(const std::string& command, const std::string& msg) {
  CommandResult r;
  r.exit_code = 2;
  r.report = json{{"command", command}, {"error", msg}};
  r.text = "error: " + msg + "\n";
  return r;
}

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

/// Warnings for connective nodes that are not certified
/// equivalence-preserving; checking proceeds regardless.
inline std::vector<std::string> connective_warnings(const Theory& theory,
                                                    const Rat& grid) {
  std::vector<std::string> warnings;
  std::set<std::string> seen;
  for (const auto& s : theory.sequents) {
    std::vector<const Formula*> nodes;
    collect_connectives(s.lhs, nodes);
    collect_connectives(s.rhs, nodes);
    for (const Formula* f : nodes) {
      std::string key = f->conn->str();
      if (!seen.insert(key).second) continue;
      std::size_t arity = std::max<std::size_t>(
          1, std::max(f->conn->max_var(), f->kids.size()));
      ClassifierVerdict v = classify(*f->conn, arity, grid);
      if (v.kind == ClassifierVerdict::Kind::Violates)
        warnings.push_back("connective " + key +
                           " does not preserve logical equivalence");
      else if (!(v.kind == ClassifierVerdict::Kind::Preserves && v.certified))
        warnings.push_back("connective " + key +
                           " is only grid-checked; equivalence preservation "
                           "is not certified");
    }
  }
  return warnings;
}

} // namespace detail

inline json modulus_json(const Modulus& m) { return to_json(m); }

/// `check model.json theory.txt`: validity of every sequent of the theory
/// in the model. With metrics present the model is also interpreted
/// through the strict fibers over its PERs, and both verdicts are
/// reported. Exit 0 when everything is valid, 1 when some sequent fails,
/// 2 on input errors.
inline CommandResult cmd_check(const std::string& model_path,
                               const std::string& theory_path,
                               const RunConfig& config) {
  detail::Stopwatch watch;
  LoadedModel model;
  ParseResult parsed;
  try {
    config.validate();
    model = model_from_json(detail::load_json(model_path));
    parsed = parse_theory(detail::read_file(theory_path),
                          model.plain.signature);
  } catch (const std::exception& e) {
    return detail::input_error("check", e.what());
  }
  if (!parsed.ok()) {
    json errors = json::array();
    for (const auto& e : parsed.errors) errors.push_back(e.message);
    CommandResult r = detail::input_error("check", "theory has parse errors");
    r.report["parse_errors"] = errors;
    for (const auto& e : parsed.errors) r.text += "error: " + e.message + "\n";
    return r;
  }

  std::optional<Interpretation<StrictBackend>> strict;
  if (model.cmt) strict = transfer_to_strict(*model.cmt);

  CommandResult r;
  json items = json::array();
  bool all_valid = true;
  std::ostringstream text;
  for (const auto& s : parsed.theory.sequents) {
    json item;
    item["sequent"] = s.text;
    try {
      SequentVerdict v = check_sequent(model.plain, s);
      item["valid"] = v.valid;
      if (v.valid && v.modulus) item["modulus"] = modulus_json(*v.modulus);
      if (!v.valid) {
        item["countermodel"] = *v.countermodel;
        if (v.failed_backward) item["failed_direction"] = "backward";
        all_valid = false;
      }
      if (strict) {
        SequentVerdict w = check_sequent(*strict, s);
        item["valid_strict"] = w.valid;
      }
      text << (v.valid ? "valid    " : "invalid  ") << s.text;
      if (!v.valid) text << "   [witness " << *v.countermodel << "]";
      text << "\n";
    } catch (const std::exception& e) {
      return detail::input_error("check", e.what());
    }
    items.push_back(std::move(item));
  }

  std::vector<std::string> warnings =
      detail::connective_warnings(parsed.theory, config.grid);
  json jwarn = json::array();
  for (const auto& w : warnings) {
    jwarn.push_back(w);
    text << "warning: " << w << "\n";
  }

  r.report = json{{"command", "check"},
                  {"model", model_path},
                  {"theory", theory_path},
                  {"items", items},
                  {"warnings", jwarn}};
  text << (all_valid ? "all sequents valid" : "some sequents invalid") << "  ("
       << watch.ms() << " ms)\n";
  r.text = text.str();
  r.exit_code = all_valid ? 0 : 1;
  return r;
}

/// `laws`: the randomized law battery with a fixed seed.
inline CommandResult cmd_laws(const RunConfig& config) {
  detail::Stopwatch watch;
  laws::Mutation mutation;
  try {
    config.validate();
    mutation = laws::mutation_from_name(config.mutation);
  } catch (const std::exception& e) {
    return detail::input_error("laws", e.what());
  }

  std::vector<laws::SuiteResult> suites = laws::run_all(config.seed, config.trials, mutation);
  CommandResult r;
  json items = json::array();
  bool all_pass = true;
  std::ostringstream text;
  for (const auto& s : suites) {
    items.push_back(s.to_json());
    all_pass = all_pass && s.passed();
    text << (s.passed() ? "pass  " : "FAIL  ") << s.law << "  (" << s.instances
         << " instances, " << s.failure_count << " failures)\n";
  }
  r.report = json{{"command", "laws"},
                  {"seed", config.seed},
                  {"trials", config.trials},
                  {"items", items}};
  if (mutation != laws::Mutation::None) r.report["mutation"] = config.mutation;
  text << (all_pass ? "all laws hold" : "law failures found") << "  ("
       << watch.ms() << " ms)\n";
  r.text = text.str();
  r.exit_code = all_pass ? 0 : 1;
  return r;
}

/// `classify-connective "<expr>"`.
inline CommandResult cmd_classify(const std::string& expr_text,
                                  const RunConfig& config,
                                  std::size_t arity_override = 0) {
  detail::Stopwatch watch;
  CommandResult r;
  try {
    config.validate();
    ConnectiveExpr u = ConnectiveExpr::parse(expr_text);
    std::size_t arity = arity_override ? arity_override
                                       : std::max<std::size_t>(1, u.max_var());
    ClassifierVerdict v = classify(u, arity, config.grid);

    json report{{"command", "classify-connective"},
                {"expr", u.str()},
                {"arity", arity},
                {"grid", config.grid.str()}};
    std::ostringstream text;
    switch (v.kind) {
      case ClassifierVerdict::Kind::Preserves: {
        report["verdict"] = "preserves";
        report["certified"] = v.certified;
        json strata = json::array();
        for (const auto& s : v.strata) {
          std::string members;
          for (std::size_t i = 0; i < arity; ++i)
            if ((s.mask >> i) & 1)
              members += (members.empty() ? "" : ",") + ConnectiveExpr::var_name(i + 1);
          strata.push_back(json{
              {"zero_coordinates", "{" + members + "}"},
              {"status", s.status == StratumStatus::AllZero ? "all-zero" : "no-zero"}});
        }
        report["strata"] = strata;
        text << "preserves (" << (v.certified ? "certified" : "grid-bounded")
             << ")\n";
        break;
      }
      case ClassifierVerdict::Kind::Violates: {
        report["verdict"] = "violates";
        json p = json::array(), q = json::array();
        for (const auto& x : v.witness_p) p.push_back(x.str());
        for (const auto& x : v.witness_q) q.push_back(x.str());
        report["witness_p"] = p;
        report["witness_q"] = q;
        // Realise the witnesses on a one-point carrier.
        ViolationDemo demo = demonstrate_violation(u, v.witness_p, v.witness_q,
                                                   Carrier::atoms({"pt"}));
        report["demonstration"] = json{
            {"inputs_pairwise_iso", demo.inputs_pairwise_iso},
            {"outputs_iso", demo.outputs_iso}};
        text << "violates: u(p)=0 < u(q) with p=" << p.dump() << " q=" << q.dump()
             << "\n";
        break;
      }
      case ClassifierVerdict::Kind::Unknown:
        report["verdict"] = "unknown";
        text << "unknown (arity too large for the grid scan)\n";
        break;
    }
    text << "(" << watch.ms() << " ms)\n";
    r.report = std::move(report);
    r.text = text.str();
    return r;
  } catch (const std::exception& e) {
    return detail::input_error("classify-connective", e.what());
  }
}

/// `per verify|compose|mono|sub`.
inline CommandResult cmd_per(const std::string& sub,
                             const std::vector<std::string>& files) {
  try {
    if (sub == "verify") {
      if (files.size() != 1) throw Error("per verify takes one file");
      json j = detail::load_json(files[0]);
      json report{{"command", "per verify"}, {"file", files[0]}};
      std::ostringstream text;
      if (j.contains("source")) {
        // Functional-relation file: the four defining sequents.
        Per src = per_from_json(j.at("source"));
        Per tgt = per_from_json(j.at("target"));
        Predicate rel = predicate_values_from_json(
            Carrier::product(src.carrier(), tgt.carrier()), j.at("rel").at("values"));
        FunctionalChecks c = check_functional_axioms(src, tgt, rel);
        report["checks"] = json{{"strict", c.strict},
                                {"relational", c.relational},
                                {"single_valued", c.single_valued},
                                {"total", c.total}};
        report["functional"] = c.all();
        text << (c.all() ? "functional relation\n" : "not a functional relation\n");
        return {c.all() ? 0 : 1, report, text.str()};
      }
      // Bare PER file.
      std::vector<std::string> names;
      for (const auto& nm : j.at("carrier")) names.push_back(nm.get<std::string>());
      Carrier c = Carrier::atoms(names);
      Predicate rel = predicate_values_from_json(Carrier::product(c, c),
                                                 j.at("rel").at("values"));
      PerChecks pc = check_per_axioms(c, rel);
      report["checks"] = json{{"symmetric", pc.symmetric},
                              {"transitive", pc.transitive},
                              {"reflexive", pc.reflexive}};
      report["per"] = pc.per();
      report["equivalence_relation"] = pc.equivalence();
      text << (pc.per() ? (pc.equivalence() ? "equivalence relation\n"
                                            : "partial equivalence relation\n")
                        : "not a per\n");
      return {pc.per() ? 0 : 1, report, text.str()};
    }
    if (sub == "compose") {
      if (files.size() != 2) throw Error("per compose takes two files");
      FunctionalRelation f = functional_from_json(detail::load_json(files[0]));
      FunctionalRelation g = functional_from_json(detail::load_json(files[1]));
      FunctionalRelation fg = f.then(g);
      json report{{"command", "per compose"}, {"result", functional_to_json(fg)}};
      return {0, report, report.at("result").dump(2) + "\n"};
    }
    if (sub == "mono") {
      if (files.size() != 1) throw Error("per mono takes one file");
      FunctionalRelation f = functional_from_json(detail::load_json(files[0]));
      bool mono = is_mono(f);
      json report{{"command", "per mono"}, {"mono", mono}};
      return {0, report, std::string(mono ? "mono\n" : "not mono\n")};
    }
    if (sub == "sub") {
      if (files.size() != 1) throw Error("per sub takes one file");
      StrictPredicate phi = strict_from_json(detail::load_json(files[0]));
      auto [subper, inclusion] = sub_from_strict(phi);
      json report{{"command", "per sub"},
                  {"subobject", per_to_json(subper)},
                  {"inclusion", functional_to_json(inclusion)},
                  {"mono", is_mono(inclusion)}};
      return {0, report, report.dump(2) + "\n"};
    }
    throw Error("unknown per subcommand '" + sub + "'");
  } catch (const std::exception& e) {
    return detail::input_error("per " + sub, e.what());
  }
}

namespace detail {

/// Standalone metric file {carrier, values}.
inline FinPseudoMetric metric_file(const json& j) {
  std::vector<std::string> names;
  for (const auto& nm : j.at("carrier")) {
    names.push_back(nm.get<std::string>());
    culogic::detail::check_atom_name(names.back());
  }
  Carrier c = Carrier::atoms(names);
  Carrier sq = Carrier::product(c, c);
  std::vector<Carrier> pairc = {c, c};
  std::vector<Value> vals(sq.size(), Value::zero());
  std::vector<bool> seen(sq.size(), false);
  for (const auto& [key, v] : j.at("values").items()) {
    std::size_t idx =
        culogic::detail::tuple_index(pairc, culogic::detail::split_key(key));
    vals[idx] = Value::parse(v.get<std::string>());
    seen[idx] = true;
  }
  for (std::size_t i = 0; i < sq.size(); ++i)
    if (!seen[i]) {
      auto [a, b] = sq.unpair(i);
      vals[i] = a == b ? Value::zero() : Value::one();
    }
  return FinPseudoMetric(c, Predicate(sq, std::move(vals)));
}

/// Flattens a product metric onto a fresh atoms carrier so the output is
/// itself a readable metric file. Element names are joined with '.'.
inline FinPseudoMetric flatten_metric(const FinPseudoMetric& m) {
  if (!m.carrier().is_product()) return m;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m.carrier().size(); ++i) {
    auto [l, r] = m.carrier().unpair(i);
    names.push_back(m.carrier().left().element_name(l) + "." +
                    m.carrier().right().element_name(r));
  }
  Carrier flat = Carrier::atoms(std::move(names));
  return FinPseudoMetric(
      flat, culogic::detail::with_carrier(m.d(), Carrier::product(flat, flat)));
}

} // namespace detail

/// `bridge g|extract|metric-from-per|product`.
inline CommandResult cmd_bridge(const std::string& sub,
                                const std::vector<std::string>& files) {
  try {
    if (sub == "g") {
      if (files.size() == 1) {
        FinPseudoMetric m = detail::metric_file(detail::load_json(files[0]));
        json report{{"command", "bridge g"}, {"object", per_to_json(g_object(m))}};
        return {0, report, report.at("object").dump(2) + "\n"};
      }
      if (files.size() != 3)
        throw Error("bridge g takes METRIC or SRC_METRIC TGT_METRIC MAP");
      FinPseudoMetric m = detail::metric_file(detail::load_json(files[0]));
      FinPseudoMetric n = detail::metric_file(detail::load_json(files[1]));
      json mj = detail::load_json(files[2]);
      const auto& src_names = m.carrier().atom_names();
      const auto& tgt_names = n.carrier().atom_names();
      std::vector<std::size_t> table(src_names.size());
      for (std::size_t i = 0; i < src_names.size(); ++i) {
        std::string t = mj.at("table").at(src_names[i]).get<std::string>();
        auto it = std::find(tgt_names.begin(), tgt_names.end(), t);
        if (it == tgt_names.end()) throw Error("unknown element '" + t + "'");
        table[i] = (std::size_t)(it - tgt_names.begin());
      }
      MapArrow f(m.carrier(), n.carrier(), table);
      FunctionalRelation gf = g_morphism(f, m, n);
      json report{{"command", "bridge g"}, {"morphism", functional_to_json(gf)}};
      return {0, report, report.at("morphism").dump(2) + "\n"};
    }
    if (sub == "extract") {
      if (files.size() != 1) throw Error("bridge extract takes one file");
      FunctionalRelation f = functional_from_json(detail::load_json(files[0]));
      MapArrow map = extract_function(f);
      json report{{"command", "bridge extract"}, {"map", to_json(map)}};
      return {0, report, report.at("map").dump(2) + "\n"};
    }
    if (sub == "metric-from-per") {
      if (files.size() != 1) throw Error("bridge metric-from-per takes one file");
      Per p = per_from_json(detail::load_json(files[0]));
      if (!p.reflexive()) throw Error("relation is not reflexive");
      EquivRel e(p);
      MetricFromPer rec = metric_from_per(e);
      bool verified = is_isomorphism_pair(rec.iso, rec.inverse);
      json report{{"command", "bridge metric-from-per"},
                  {"metric", metric_to_json(rec.metric)},
                  {"iso", functional_to_json(rec.iso)},
                  {"isomorphism_verified", verified},
                  {"uniformity_axioms", check_uniformity_axioms(e)}};
      return {verified ? 0 : 1, report, report.dump(2) + "\n"};
    }
    if (sub == "product") {
      if (files.size() != 2) throw Error("bridge product takes two files");
      FinPseudoMetric m = detail::metric_file(detail::load_json(files[0]));
      FinPseudoMetric n = detail::metric_file(detail::load_json(files[1]));
      FinPseudoMetric prod = detail::flatten_metric(metric_product(m, n));
      json report{{"command", "bridge product"}, {"metric", metric_to_json(prod)}};
      return {0, report, report.at("metric").dump(2) + "\n"};
    }
    throw Error("unknown bridge subcommand '" + sub + "'");
  } catch (const std::exception& e) {
    return detail::input_error("bridge " + sub, e.what());
  }
}

} // namespace culogic::cli
