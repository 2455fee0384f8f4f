#include <doctest.h>

#include "pfister/fixtures.hpp"

using namespace pfister;

namespace {

DescentReport drop_generator(DescentReport r) {
  r.generators.pop_back();
  r.generator_names.pop_back();
  return r;
}

}  // namespace

TEST_CASE("linked triple accessors") {
  const LinkedTriple t = generic_triple(3);
  CHECK(t.n() == 3);
  CHECK(t.pi().fold() == 2);
  CHECK(t.phi(2).bilinear.front() == t.b1 * t.b2);
  CHECK(t.sigma_class().fold() == 4);
  CHECK_THROWS_AS(LinkedTriple({}, t.b1, t.b2), std::invalid_argument);
  CHECK_THROWS_AS(LinkedTriple(t.slots, t.b1, t.field()->zero()), std::invalid_argument);
}

TEST_CASE("form certificates") {
  const LinkedTriple t = generic_triple(2);
  const FieldPtr& F = t.field();
  const QuadForm P = expand_pfister(t.pi());
  Vec v = zero_vector(P);
  v[1] = F->one();  // pi(v) = X1
  FormCertificate c = make_form_certificate(t.phi(0), {FormStep{FormStep::Kind::ScaleByValue, 0, v, std::nullopt}});
  CHECK(c.end.bilinear.front() == t.b1 * t.slots[0]);
  CHECK(verify_form_certificate(c));
  c.end.bilinear.front() = t.b1;
  CHECK_FALSE(verify_form_certificate(c));
  CHECK_THROWS_AS(apply_form_step(t.phi(0), FormStep{FormStep::Kind::ScaleByValue, 0, zero_vector(P), std::nullopt}),
                  MoveError);
  const PfisterDesc shifted = apply_form_step(t.phi(0), FormStep{FormStep::Kind::ASShift, 0, {}, F->var(0)});
  CHECK(shifted.as_slot == t.slots[0] + t.slots[0].wp());
}

TEST_CASE("generic triples need n+1 generators") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const LinkedTriple t = generic_triple(n);
    const DescentReport r = triple_descend(t);
    REQUIRE(r.status == DescentReport::Status::success);
    CHECK(r.case_tag == "anisotropic");
    CHECK(static_cast<int>(r.generators.size()) == n + 1);
    REQUIRE(r.aniso_cert);
    CHECK(replay(*r.aniso_cert));
    CHECK(verify_descent(r, t));
    CHECK_FALSE(verify_descent(drop_generator(r), t));
  }
}

TEST_CASE("b2 = b1 + 1 descends with b2' = b1' + 1") {
  const FieldPtr F = Field::make(1, {"a", "t"});
  const FieldElem t = F->var("t");
  const LinkedTriple tr({F->var("a")}, t, t + F->one());
  const DescentReport r = triple_descend(tr);
  REQUIRE(r.status == DescentReport::Status::success);
  CHECK(r.case_tag == "hyperbolic");
  CHECK(r.generator_names == std::vector<std::string>{"a1", "b"});
  CHECK(r.generators[1] == t);
  CHECK(r.forms[1].bilinear[0] == r.forms[0].bilinear[0] + r.descended_field->one());
  CHECK(verify_descent(r, tr));
}

TEST_CASE("hyperbolic triples descend to n generators") {
  for (std::string variant : {"sum", "norm"})
    for (int n : {2, 3})
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        CAPTURE(variant);
        CAPTURE(n);
        CAPTURE(seed);
        const LinkedTriple t = hyperbolic_triple(n, variant, seed);
        const DescentReport r = triple_descend(t);
        REQUIRE(r.status == DescentReport::Status::success);
        CHECK(r.case_tag != "anisotropic");
        CHECK(static_cast<int>(r.generators.size()) <= n);
        CHECK(verify_descent(r, t));
        if (r.case_tag == "hyperbolic")
          CHECK(r.forms[1].bilinear[0] == r.forms[0].bilinear[0] + r.descended_field->one());
      }
}

TEST_CASE("isotropic phi_1 scales its slot to 1") {
  const FieldPtr F = Field::make(1, {"a", "s"});
  const FieldElem a = F->var("a"), s = F->var("s");
  // <<a + a^2; s]] is isotropic: a + a^2 is a value of [1, s]? use b1 = x^2 + x y + s y^2 at (1, a).
  const FieldElem b1 = F->one() + a + s * a.square();
  const LinkedTriple t({s}, b1, a);
  const DescentReport r = triple_descend(t);
  REQUIRE(r.status == DescentReport::Status::success);
  CHECK(r.case_tag == "isotropic_phi");
  CHECK(r.forms[0].bilinear[0].is_one());
  CHECK(static_cast<int>(r.generators.size()) <= 2);
  CHECK(verify_descent(r, t));
}

TEST_CASE("case A quadruples need four generators") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    CAPTURE(seed);
    const QuadInstance q = case_a_quad(seed);
    const DescentReport r = quad_descend(q);
    REQUIRE(r.status == DescentReport::Status::success);
    CHECK(r.case_tag == "A");
    CHECK(r.generators.size() == 4);
    CHECK(verify_descent(r, q));
    CHECK_FALSE(verify_descent(drop_generator(r), q));
  }
}

TEST_CASE("case B and C quadruples need at most five generators") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (const QuadInstance& q : {case_b_quad(seed), case_c_quad(seed)}) {
      CAPTURE(seed);
      const DescentReport r = quad_descend(q);
      INFO(r.case_tag);
      REQUIRE(r.status == DescentReport::Status::success);
      CHECK(r.generators.size() <= 5);
      CHECK(verify_descent(r, q));
    }
  }
}

TEST_CASE("split quadruples over F_4 descend to the prime field") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const QuadInstance q = split_quad(seed);
    const DescentReport r = quad_descend(q);
    REQUIRE(r.status == DescentReport::Status::success);
    CHECK(r.case_tag == "degenerate");
    CHECK(r.generators.empty());
    CHECK(verify_descent(r, q));
  }
}

TEST_CASE("linked and random quadruples") {
  const QuadInstance lq = linked_quad();
  const DescentReport r = quad_descend(lq);
  INFO(r.case_tag);
  if (r.status == DescentReport::Status::success) CHECK(r.generators.size() <= 5);
  CHECK(verify_descent(r, lq));
  SearchBudget small;
  small.exhaustive_limit = 2048;
  small.trials = 40;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const QuadInstance q = random_quad(seed);
    const DescentReport rr = quad_descend(q, small);
    if (rr.status == DescentReport::Status::success) CHECK(rr.generators.size() <= 5);
    CHECK(verify_descent(rr, q));
  }
}

TEST_CASE("tampered quadruple reports fail") {
  const QuadInstance q = case_a_quad(1);
  const DescentReport r = quad_descend(q);
  DescentReport bad = r;
  bad.c_sum_root = *bad.c_sum_root + q.q[0].a;
  CHECK_FALSE(verify_descent(bad, q));
  bad = r;
  bad.symbols[0] = QSymbol(bad.symbols[0].a + bad.descended_field->one(), bad.symbols[0].b);
  CHECK_FALSE(verify_descent(bad, q));
  QuadInstance other = q;
  other.q[1] = QSymbol(other.q[1].a, other.q[1].b * other.q[1].b);
  other.split_witness.reset();
  CHECK_FALSE(verify_descent(r, other));
  QuadInstance broken = q;
  broken.split_witness->witnesses[0].mu += broken.q[0].b;
  CHECK_THROWS_AS(quad_descend(broken), std::invalid_argument);
}

TEST_CASE("canonical monomial fixture") {
  const auto forms = canonical_monomial(4);
  REQUIRE(forms.size() == 4);
  CHECK(forms.front().as_slot.field()->to_string() == "F2(X,Y1,Y2,Y3)");
  CHECK(forms.back().bilinear.front().to_string() == "Y1*Y2*Y3");
}
