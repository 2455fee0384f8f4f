#include <doctest.h>

#include "pfister/json_io.hpp"

using namespace pfister;

namespace {

DescentReport round_trip(const DescentReport& r) { return report_from_json(Json::parse(dump(to_json(r)))); }

}  // namespace

TEST_CASE("symbols, forms and budgets round-trip") {
  const FieldPtr F = Field::parse("F2^2(s,t)");
  const QSymbol q(F->parse_elem("s/(t+1)"), F->parse_elem("t^3 + g"));
  CHECK(symbol_from_json(to_json(q), F) == q);

  QuadForm f(F);
  f.add_block(F->var("s"), F->one(), F->parse_elem("t"));
  f.add_block(F->one(), F->zero(), F->parse_elem("s*t"));
  CHECK(form_from_json(to_json(f), F) == f);

  SearchBudget b;
  b.degree_bound = 3;
  b.seed = 99;
  const SearchBudget c = budget_from_json(to_json(b));
  CHECK(c.degree_bound == 3);
  CHECK(c.seed == 99);
  CHECK(c.trials == b.trials);
}

TEST_CASE("unknown keys and versions are rejected") {
  const FieldPtr F = Field::parse("F2(t)");
  Json j = to_json(QSymbol(F->var(0), F->one()));
  j["extra"] = 1;
  CHECK_THROWS_AS(symbol_from_json(j, F), SchemaError);

  const Instance sym{QSymbol(F->var(0), F->one() + F->var(0)), std::nullopt};
  Json inst = to_json(sym);
  CHECK(instance_from_json(inst).kind() == "symbol");
  inst["schema_version"] = 2;
  CHECK_THROWS_AS(instance_from_json(inst), SchemaError);
  inst = to_json(sym);
  inst.erase("payload");
  CHECK_THROWS_AS(instance_from_json(inst), SchemaError);
  inst = to_json(sym);
  inst["payload"]["a"] = "t +";
  CHECK_THROWS_AS(instance_from_json(inst), ParseError);
}

TEST_CASE("every fixture kind round-trips") {
  for (const auto& kind : fixture_kinds()) {
    CAPTURE(kind);
    const Instance inst = make_fixture(kind, {});
    const std::string text = dump(to_json(inst));
    const Instance back = instance_from_json(Json::parse(text));
    CHECK(back.kind() == inst.kind());
    CHECK(dump(to_json(back)) == text);
  }
}

TEST_CASE("anisotropy certificates round-trip and replay") {
  const LinkedTriple t = generic_triple(2);
  const DescentReport r = triple_descend(t);
  REQUIRE(r.aniso_cert);
  const AnisoCert back = aniso_cert_from_json(Json::parse(dump(to_json(*r.aniso_cert))));
  CHECK(back.node_count() == r.aniso_cert->node_count());
  CHECK(replay(back));
}

TEST_CASE("reports re-verify after a round trip") {
  const LinkedTriple t = generic_triple(2);
  const DescentReport rt = round_trip(triple_descend(t));
  CHECK(verify_descent(rt, t));

  const QuadInstance q = case_a_quad(1);
  const DescentReport r = quad_descend(q);
  const DescentReport rq = round_trip(r);
  CHECK(rq.case_tag == "A");
  CHECK(dump(to_json(rq)) == dump(to_json(r)));
  CHECK(verify_descent(rq, q));

  Json tampered = to_json(r);
  tampered["symbols"][0]["a"] = "c1 + 1";
  CHECK_FALSE(verify_descent(report_from_json(tampered), q));
}

TEST_CASE("certificates round-trip") {
  const QuadInstance q = linked_quad();
  REQUIRE(q.split_witness);
  const ProductSplitCert back = product_split_from_json(Json::parse(dump(to_json(*q.split_witness))));
  CHECK(verify_product_split(back));
  CHECK(back.chain.moves.size() == q.split_witness->chain.moves.size());

  const LinkedTriple t = hyperbolic_triple(2, "sum", 1);
  const DescentReport r = triple_descend(t);
  REQUIRE_FALSE(r.form_certs.empty());
  for (const auto& c : r.form_certs) CHECK(verify_form_certificate(form_certificate_from_json(to_json(c))));
}
