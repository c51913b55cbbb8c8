#include <catch2/catch_amalgamated.hpp>

#include "culogic/laws.hpp"
#include "culogic/serialize.hpp"

using namespace culogic;

TEST_CASE("predicate JSON round trips bit-exactly", "[serialize]") {
  Carrier x = Carrier::atoms({"a", "b", "c"});
  Predicate p(x, {Value::zero(), Value(1, 2), Value(2, 3)});
  json j = to_json(p);
  CHECK(j.at("values").at("b") == "1/2");

  Predicate q = predicate_from_json(j);
  CHECK(q == p);
  CHECK(to_json(q).dump() == j.dump());

  Rng rng(1);
  for (int t = 0; t < 60; ++t) {
    Carrier c = gen::carrier(rng, 5, 1);
    Predicate a = gen::predicate(rng, c);
    CHECK(to_json(predicate_from_json(to_json(a))).dump() == to_json(a).dump());
  }
}

TEST_CASE("bad predicate JSON is rejected", "[serialize]") {
  CHECK_THROWS_AS(predicate_from_json(json{{"carrier", {"a"}}}), Error);
  CHECK_THROWS_AS(
      predicate_from_json(json{{"carrier", {"a"}}, {"values", {{"b", "0/1"}}}}),
      Error);
  CHECK_THROWS_AS(
      predicate_from_json(json{{"carrier", {"a", "b"}},
                               {"values", {{"a", "0/1"}}}}),
      Error);  // missing b
  CHECK_THROWS_AS(
      predicate_from_json(json{{"carrier", {"a"}}, {"values", {{"a", "7/4"}}}}),
      Error);  // outside [0,1]
  CHECK_THROWS_AS(
      predicate_from_json(json{{"carrier", {"a,b"}}, {"values", {{"a,b", "0/1"}}}}),
      Error);  // reserved character in a name
}

TEST_CASE("per and functional relation wrappers round trip", "[serialize]") {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    Per p = gen::per(rng, 3);
    json pj = per_to_json(p);
    Per p2 = per_from_json(pj);
    CHECK(p2 == p);
    CHECK(per_to_json(p2).dump() == pj.dump());

    Per q = gen::per(rng, 3);
    FunctionalRelation f = gen::morphism(rng, p, q);
    json fj = functional_to_json(f);
    FunctionalRelation f2 = functional_from_json(fj);
    CHECK(functional_to_json(f2).dump() == fj.dump());
  }
  // Loading enforces the defining sequents.
  json bad = per_to_json(gen::per(rng, 2));
  bad["rel"]["values"].begin().value() = "1/2";  // break reflexivity of a block
  // The particular edit may or may not break the per; just check that the
  // loader validates rather than crashing.
  try {
    per_from_json(bad);
  } catch (const Error&) {
  }
}

TEST_CASE("model files load with validation", "[serialize]") {
  json model = json::parse(R"({
    "sorts": {"S": ["a", "b"]},
    "functions": {"f": {"args": ["S"], "result": "S", "table": {"a": "b", "b": "a"}}},
    "relations": {"R": {"args": ["S"], "values": {"a": "0/1", "b": "1/3"}}}
  })");
  LoadedModel m = model_from_json(model);
  CHECK(m.plain.sorts.at("S").size() == 2);
  CHECK(m.plain.functions.at("f").apply(0) == 1);
  CHECK(m.plain.relations.at("R").at(1) == Value(1, 3));
  CHECK_FALSE(m.cmt.has_value());

  SECTION("missing table entries are reported") {
    json broken = model;
    broken["functions"]["f"]["table"].erase("a");
    CHECK_THROWS_AS(model_from_json(broken), Error);
  }
  SECTION("unknown sort in a relation") {
    json broken = model;
    broken["relations"]["R"]["args"] = {"T"};
    CHECK_THROWS_AS(model_from_json(broken), Error);
  }
  SECTION("metrics attach and validate") {
    json with_metrics = model;
    with_metrics["metrics"] = {
        {"S", {{"values", {{"a,b", "1/2"}, {"b,a", "1/2"}}}}}};
    LoadedModel cm = model_from_json(with_metrics);
    REQUIRE(cm.cmt.has_value());
    CHECK(cm.cmt->sort_metric("S").dist(0, 1) == Value(1, 2));
  }
  SECTION("metric axioms are enforced") {
    json bad = model;
    bad["metrics"] = {{"S", {{"values", {{"a,b", "1/2"}, {"b,a", "1/3"}}}}}};
    CHECK_THROWS_AS(model_from_json(bad), Error);
  }
  SECTION("binary relation keys are comma joined") {
    json two = json::parse(R"({
      "sorts": {"S": ["a", "b"]},
      "relations": {"E": {"args": ["S", "S"],
        "values": {"a,a": "0/1", "a,b": "1/1", "b,a": "1/1", "b,b": "0/1"}}}
    })");
    LoadedModel lm = model_from_json(two);
    CHECK(lm.plain.relations.at("E").values() ==
          eq_predicate(Carrier::atoms({"a", "b"})).values());
  }
}

TEST_CASE("model writing inverts loading", "[serialize]") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Signature sig = gen::signature(rng);
    Interpretation<UBackend> I = gen::model(rng, sig, 3);
    json j = model_to_json(I);
    LoadedModel back = model_from_json(j);
    CHECK(model_to_json(back.plain).dump() == j.dump());
  }
}

TEST_CASE("modulus and residual serialization", "[serialize]") {
  Carrier x = Carrier::atoms({"a", "b"});
  Predicate a(x, {Value::zero(), Value(1, 2)});
  Predicate b(x, {Value::zero(), Value(1, 4)});
  auto v = leq(a, b);
  REQUIRE(v.modulus);
  json mj = to_json(*v.modulus);
  CHECK(mj.at("grid").size() == mj.at("deltas").size());
  json rj = to_json(derive_residual(a, b));
  CHECK(rj.at("breakpoints").front()[0] == "0/1");
}
