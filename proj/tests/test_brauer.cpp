#include <random>

#include "doctest.h"
#include "pfister/brauer.hpp"
#include "pfister/witt.hpp"

using namespace pfister;

namespace {

FieldElem E(const FieldPtr& F, const char* s) { return F->parse_elem(s); }

QSymbol Q(const FieldPtr& F, const char* a, const char* b) { return QSymbol(E(F, a), E(F, b)); }

// Random move that applies to position pos of a list of n symbols.
RewriteMove random_move(const std::vector<QSymbol>& syms, int pos, Rng& rng) {
  const FieldPtr& F = syms.front().field();
  for (;;) {
    switch (draw(rng, syms.size() > 1 ? 4 : 3)) {
      case 0: return RewriteMove::as_shift(F->random_poly(rng, 2));
      case 1:
      case 2: {
        FieldElem x = F->random_poly(rng, 1), y = F->random_poly(rng, 1);
        EtaleElem al{syms[static_cast<std::size_t>(pos)].a, x, y};
        if (al.is_zero() || norm_sep(al.a, al).is_zero()) continue;
        return draw(rng, 2) ? RewriteMove::norm_scale(x, y) : RewriteMove::slot_push(x, y);
      }
      default: {
        int j = static_cast<int>(draw(rng, syms.size()));
        if (j == pos) continue;
        return RewriteMove::exchange(j);
      }
    }
  }
}

}  // namespace

TEST_CASE("symbols reject a zero right slot") {
  auto F = Field::parse("F2(t)");
  CHECK_THROWS_AS(QSymbol(F->var(0), F->zero()), std::invalid_argument);
  CHECK(Q(F, "t", "t+1").to_string() == "[t, t + 1)");
}

TEST_CASE("elementary moves") {
  auto F = Field::parse("F2(t1,t2)");
  QSymbol q = Q(F, "t1", "t2");
  SUBCASE("slot push by 1") {
    auto r = apply_move({q}, 0, RewriteMove::slot_push(F->one(), F->zero()));
    CHECK(r[0] == Q(F, "t1 + t2", "t2"));
  }
  SUBCASE("artin-schreier shift") {
    auto r = apply_move({q}, 0, RewriteMove::as_shift(E(F, "t2")));
    CHECK(r[0] == Q(F, "t1 + t2^2 + t2", "t2"));
  }
  SUBCASE("exchange") {
    std::vector<QSymbol> p{Q(F, "t1", "t2"), Q(F, "t2", "t1+1")};
    auto r = apply_move(p, 0, RewriteMove::exchange(1));
    CHECK(r[0] == Q(F, "t1", "t2*(t1+1)"));
    CHECK(r[1] == Q(F, "t1+t2", "t1+1"));
  }
  SUBCASE("norm scale by theta divides by a") {
    auto r = apply_move({q}, 0, RewriteMove::norm_scale(F->zero(), F->one()));
    CHECK(r[0] == Q(F, "t1", "t2/t1"));
  }
  SUBCASE("side conditions") {
    CHECK_THROWS_AS(apply_move({q}, 0, RewriteMove::norm_scale(F->zero(), F->zero())), MoveError);
    CHECK_THROWS_AS(apply_move({q}, 1, RewriteMove::as_shift(F->one())), MoveError);
    CHECK_THROWS_AS(apply_move({q}, 0, RewriteMove::exchange(0)), MoveError);
    // a = t1^2 + t1 makes N_a(t1 + theta) = 0.
    QSymbol s = Q(F, "t1^2+t1", "t2");
    CHECK_THROWS_AS(apply_move({s}, 0, RewriteMove::slot_push(E(F, "t1"), F->one())), MoveError);
    RewriteMove bare{RewriteMove::Kind::ASShift, std::nullopt, std::nullopt, -1};
    CHECK_THROWS_AS(apply_move({q}, 0, bare), MoveError);
    auto G = Field::parse("F2(t1)");
    CHECK_THROWS_AS(apply_move({q}, 0, RewriteMove::as_shift(G->var(0))), MoveError);
  }
}

TEST_CASE("certificates replay") {
  auto F = Field::parse("F2(t1,t2)");
  std::vector<QSymbol> pair{Q(F, "t1", "t2"), Q(F, "t2+1", "t1*t2+1")};
  CHECK(verify_certificate(make_certificate(pair, {})));

  // Exchange twice, then remove the square b2^2 from the first right slot.
  const FieldElem b2 = pair[1].b;
  Certificate c = make_certificate(pair, {{0, RewriteMove::exchange(1)},
                                          {0, RewriteMove::exchange(1)},
                                          {0, RewriteMove::norm_scale(b2, F->zero())}});
  CHECK(verify_certificate(c));
  CHECK(c.end == pair);

  Certificate bad = c;
  bad.moves[2].move.alpha->first = b2 + F->one();
  CHECK_FALSE(verify_certificate(bad));
  bad = c;
  bad.moves[1].move.partner = 0;
  CHECK_FALSE(verify_certificate(bad));
  bad = c;
  bad.end[1] = Q(F, "t2", "t1*t2+1");
  CHECK_FALSE(verify_certificate(bad));
  bad = c;
  bad.moves.pop_back();
  CHECK_FALSE(verify_certificate(bad));
}

TEST_CASE("random move chains verify and single tampers fail") {
  auto F = Field::parse("F2(t1,t2)");
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<QSymbol> start;
    for (int i = 0; i < 3; ++i) start.emplace_back(F->random_poly(rng, 2), F->random_nonzero_poly(rng, 2));
    std::vector<CertStep> steps;
    std::vector<QSymbol> cur = start;
    for (int k = 0; k < 4; ++k) {
      int pos = static_cast<int>(draw(rng, 3));
      RewriteMove m = random_move(cur, pos, rng);
      cur = apply_move(cur, pos, m);
      steps.push_back({pos, m});
    }
    Certificate c = make_certificate(start, steps);
    REQUIRE(verify_certificate(c));
    // Shift one parameter by t1 or move a step to another position. (Adding 1
    // to lambda would be no tamper: wp(l + 1) = wp(l).)
    Certificate t = c;
    auto& st = t.moves[draw(rng, t.moves.size())];
    if (st.move.lambda) st.move.lambda = *st.move.lambda + F->var(0);
    else if (st.move.alpha) st.move.alpha->second = st.move.alpha->second + F->var(0);
    else st.move.partner = (st.move.partner + 1) % 3;
    if (st.move.partner == st.position) st.move.partner = (st.move.partner + 1) % 3;
    CHECK_FALSE(verify_certificate(t));
  }
}

TEST_CASE("split test examples") {
  auto F = Field::parse("F2(t1,t2)");
  SUBCASE("[0,b) is split by (0,0)") {
    auto r = split_test(Q(F, "0", "t1*t2+1"));
    REQUIRE(r.verdict == SplitResult::Verdict::Split);
    CHECK(r.witness->lambda.is_zero());
    CHECK(r.witness->mu.is_zero());
  }
  SUBCASE("[a,1) is split") {
    QSymbol q = Q(F, "t1", "1");
    auto r = split_test(q);
    REQUIRE(r.verdict == SplitResult::Verdict::Split);
    CHECK(check_split_witness(q, *r.witness));
    auto iso = isotropic_vector(expand_pfister(norm_form(q)));
    CHECK(iso.found());
  }
  SUBCASE("[t1,t2) is a division algebra") {
    QSymbol q = Q(F, "t1", "t2");
    auto r = split_test(q);
    REQUIRE(r.verdict == SplitResult::Verdict::Division);
    REQUIRE(r.cert);
    CHECK(certifies(*r.cert, expand_pfister(norm_form(q))));
    // No a = l^2 + l + m^2 b with l, m among the degree <= 2 polynomials.
    std::vector<FieldElem> pool;
    for (const char* m : {"1", "t1", "t2", "t1^2", "t1*t2", "t2^2"}) pool.push_back(E(F, m));
    std::vector<FieldElem> elems{F->zero()};
    for (const auto& m : pool) {
      std::size_t n = elems.size();
      for (std::size_t i = 0; i < n; ++i) elems.push_back(elems[i] + m);
    }
    int hits = 0;
    for (const auto& l : elems)
      for (const auto& mu : elems) hits += check_split_witness(q, {l, mu});
    CHECK(hits == 0);
  }
  SUBCASE("found witnesses convert for a norm right slot") {
    // b = N_a(t2 + theta) = t2^2 + t2 + t1
    QSymbol q = Q(F, "t1", "t2^2+t2+t1");
    auto r = split_test(q);
    REQUIRE(r.verdict == SplitResult::Verdict::Split);
    CHECK(check_split_witness(q, *r.witness));
  }
}

TEST_CASE("every quaternion algebra over F_4 and F_8 is split") {
  for (int k : {2, 3}) {
    auto F = Field::make(k);
    auto elems = F->enumerate();
    int count = 0;
    for (const auto& a : elems)
      for (const auto& b : elems) {
        if (b.is_zero()) continue;
        QSymbol q(a, b);
        auto r = split_test(q);
        REQUIRE(r.verdict == SplitResult::Verdict::Split);
        CHECK(check_split_witness(q, *r.witness));
        ++count;
      }
    CHECK(count == (1 << k) * ((1 << k) - 1));
  }
}

TEST_CASE("norm forms") {
  auto F2 = Field::make(1);
  QSymbol q(F2->one(), F2->one());
  PfisterDesc d = norm_form(q);
  CHECK(d.bilinear.size() == 1);
  CHECK(expand_pfister(d).to_string() == "[1, 1] _|_ [1, 1]");
  CHECK(is_hyperbolic(expand_pfister(d)) == Tri::yes);

  auto F = Field::parse("F2(t)");
  auto z = witt_decompose(expand_pfister(norm_form(Q(F, "0", "t"))));
  CHECK(z.index == 2);
  CHECK(z.status == WittDecomposition::Status::exact);
}

TEST_CASE("norm preimages") {
  auto F = Field::parse("F2(t)");
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    FieldElem a = F->random_poly(rng, 2);
    EtaleElem al{a, F->random_poly(rng, 2), F->random_poly(rng, 2)};
    FieldElem c = norm_sep(a, al);
    if (c.is_zero()) continue;
    auto r = split_test(QSymbol(a, c));
    REQUIRE(r.verdict == SplitResult::Verdict::Split);
    CHECK(norm_sep(a, norm_preimage(a, c, *r.witness)) == c);
  }
  // a in wp(F): every c is a norm.
  FieldElem a = E(F, "t^2+t");
  FieldElem c = E(F, "t^3+1");
  CHECK(norm_sep(a, norm_preimage(a, c, {F->var(0), F->zero()})) == c);
  CHECK_THROWS_AS(norm_preimage(a, c, {F->zero(), F->zero()}), std::invalid_argument);
}

TEST_CASE("isomorphism") {
  auto F = Field::parse("F2(t1,t2)");
  QSymbol q = Q(F, "t1", "t2");
  auto same = is_isomorphic(q, q);
  CHECK(same.verdict == Tri::yes);
  REQUIRE(same.certificate);
  CHECK(same.certificate->moves.empty());

  QSymbol shifted = Q(F, "t1 + t1^2*t2^2 + t1*t2", "t2");
  auto sh = is_isomorphic(q, shifted);
  CHECK(sh.verdict == Tri::yes);
  REQUIRE(sh.certificate);
  CHECK(verify_certificate(*sh.certificate));
  CHECK(sh.certificate->end.front() == shifted);

  QSymbol scaled = Q(F, "t1", "t2*(t1^2 + t1 + t1)");
  auto sc = is_isomorphic(q, scaled);
  CHECK(sc.verdict == Tri::yes);
  REQUIRE(sc.certificate);
  CHECK(sc.certificate->end.front() == scaled);

  CHECK(is_isomorphic(q, Q(F, "0", "t2")).verdict == Tri::no);
}

TEST_CASE("moves preserve the isomorphism class") {
  auto F = Field::parse("F2(t)");
  Rng rng(11);
  int yes = 0, unknown = 0;
  for (int i = 0; i < 60; ++i) {
    QSymbol q(F->random_poly(rng, 2), F->random_nonzero_poly(rng, 2));
    RewriteMove m = random_move({q}, 0, rng);
    QSymbol r = apply_move({q}, 0, m)[0];
    Tri t = is_isometric(expand_pfister(norm_form(q)), expand_pfister(norm_form(r)));
    CHECK(t != Tri::no);
    yes += t == Tri::yes;
    unknown += t == Tri::unknown;
  }
  CHECK(yes >= 50);
}

TEST_CASE("split test agrees with the norm form decomposition") {
  auto F = Field::parse("F2(t)");
  Rng rng(5);
  int decided = 0;
  for (int i = 0; i < 100; ++i) {
    QSymbol q(F->random_poly(rng, 2), F->random_nonzero_poly(rng, 2));
    auto s = split_test(q);
    auto w = witt_decompose(expand_pfister(norm_form(q)));
    if (s.verdict == SplitResult::Verdict::Unknown || w.status != WittDecomposition::Status::exact) continue;
    ++decided;
    CHECK((s.verdict == SplitResult::Verdict::Split) == (w.index == 2));
  }
  CHECK(decided >= 80);
}

TEST_CASE("common left slots") {
  auto F = Field::parse("F2(t1,t2)");
  SUBCASE("shared slot needs no moves") {
    auto cs = common_left_slot({Q(F, "t1", "t2"), Q(F, "t1", "t2+1"), Q(F, "t1", "t2^2+t2")});
    REQUIRE(cs);
    CHECK(cs->s == E(F, "t1"));
    for (const auto& c : cs->certs) CHECK(c.moves.empty());
  }
  SUBCASE("disguised linked triples") {
    Rng rng(19);
    for (int i = 0; i < 20; ++i) {
      FieldElem a = F->random_poly(rng, 2);
      FieldElem b1 = F->random_nonzero_poly(rng, 1), b2 = F->random_nonzero_poly(rng, 1);
      std::vector<QSymbol> qs{QSymbol(a, b1), QSymbol(a, b2), QSymbol(a, b1 * b2)};
      for (int k = 0; k < 3; ++k) {
        RewriteMove m = random_move({qs[static_cast<std::size_t>(k)]}, 0, rng);
        qs[static_cast<std::size_t>(k)] = apply_move({qs[static_cast<std::size_t>(k)]}, 0, m)[0];
      }
      auto cs = common_left_slot(qs);
      REQUIRE(cs);
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(verify_certificate(cs->certs[k]));
        CHECK(cs->certs[k].start.front() == qs[k]);
        CHECK(cs->certs[k].end.front().a == cs->s);
      }
    }
  }
  SUBCASE("finite field triples") {
    auto G = Field::make(2);
    auto elems = G->enumerate();
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
      std::vector<QSymbol> qs;
      for (int k = 0; k < 3; ++k) qs.emplace_back(elems[draw(rng, 4)], elems[1 + draw(rng, 3)]);
      auto cs = common_left_slot(qs);
      REQUIRE(cs);
      for (const auto& c : cs->certs) CHECK(verify_certificate(c));
    }
  }
}

TEST_CASE("inseparable linkage") {
  auto F = Field::parse("F2(t1,t2)");
  auto common = inseparably_linked({Q(F, "t1", "t2"), Q(F, "t2", "t2"), Q(F, "t1+t2", "t2")});
  CHECK(common.verdict == Tri::yes);
  CHECK(*common.b == E(F, "t2"));

  // [t1, t2 t1) = [t1, t2): the norm scaling is found.
  auto scaled = inseparably_linked({Q(F, "t1", "t2"), Q(F, "t1", "t1*t2"), Q(F, "0", "t2")});
  REQUIRE(scaled.verdict == Tri::yes);
  for (const auto& c : scaled.certs) {
    CHECK(verify_certificate(c));
    CHECK(c.end.front().b == *scaled.b);
  }

  // <<t1, t2; 1]] is anisotropic over F_2(t1,t2).
  std::vector<QSymbol> generic{Q(F, "1", "t1"), Q(F, "1", "t2"), Q(F, "1", "t1*t2")};
  CHECK(inseparably_linked(generic).verdict == Tri::unknown);
  CHECK(triple_sigma_hyperbolic(generic) == Tri::no);
  CHECK(triple_sigma_hyperbolic({Q(F, "t1", "t2"), Q(F, "t2", "t2"), Q(F, "t1+t2", "t2")}) == Tri::yes);
}

TEST_CASE("linked quadruples") {
  auto F = Field::parse("F2(a,b)");
  auto h = linked_quad_to_triple({Q(F, "a", "b"), Q(F, "a", "b"), Q(F, "a", "b"), Q(F, "a", "b^3")});
  REQUIRE(h.size() == 3);
  CHECK(h[0] == Q(F, "a", "b^2"));
  CHECK(h[1] == Q(F, "a", "b^2"));
  CHECK(h[2] == Q(F, "a", "b^4"));
  CHECK(split_test(h[0]).verdict == SplitResult::Verdict::Split);
  CHECK_THROWS_AS(linked_quad_to_triple({Q(F, "a", "b"), Q(F, "b", "b"), Q(F, "a", "b"), Q(F, "a", "b^3")}),
                  std::invalid_argument);
}
