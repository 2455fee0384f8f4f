#include "doctest.h"
#include "pfister/witt.hpp"

using namespace pfister;

namespace {

// Brute force over every vector with coordinates from a small pool.
bool oracle_has_zero(const QuadForm& q, const std::vector<FieldElem>& pool) {
  const std::size_t n = static_cast<std::size_t>(q.dim());
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < n && ++idx[i] == pool.size()) idx[i++] = 0;
    if (i == n) return false;
    Vec v;
    for (auto j : idx) v.push_back(pool[j]);
    if (eval(q, v).is_zero()) return true;
  }
}

}  // namespace

TEST_CASE("Pfister expansion") {
  auto f = Field::parse("F2(a,b,c)");
  auto a = f->var("a"), b = f->var("b"), c = f->var("c"), one = f->one();
  QuadForm q1 = expand_pfister({{}, a});
  CHECK(q1.dim() == 2);
  CHECK(q1.blocks()[0].block.a.is_one());
  CHECK(q1.blocks()[0].block.b == a);
  QuadForm q2 = expand_pfister({{b}, a});
  CHECK(q2.dim() == 4);
  CHECK(q2.blocks()[1].scale == b);
  QuadForm q3 = expand_pfister({{b, c}, a});
  REQUIRE(q3.dim() == 8);
  CHECK(q3.blocks()[3].scale == b * c);
  // Tensor product of <1,b>, <1,c> and [1,a] on random vectors.
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    Vec v;
    for (int j = 0; j < 8; ++j) v.push_back(f->random_poly(rng, 1));
    FieldElem expect = f->zero();
    const FieldElem scales[4] = {one, b, c, b * c};
    for (int k = 0; k < 4; ++k) {
      const auto& x = v[static_cast<std::size_t>(2 * k)];
      const auto& y = v[static_cast<std::size_t>(2 * k + 1)];
      expect += scales[k] * (x * x + x * y + a * y * y);
    }
    CHECK(eval(q3, v) == expect);
  }
  CHECK_THROWS_AS(expand_pfister({{f->zero()}, a}), std::invalid_argument);
  CHECK(sigma_S({{{b}, a}}) == q2);
}

TEST_CASE("evaluation and Arf invariant") {
  auto f2 = Field::make(1);
  auto one = f2->one(), zero = f2->zero();
  QuadForm q(f2);
  q.add_block(one, one, one);
  CHECK(eval(q, {one, one}) == one);
  CHECK(eval(q, {zero, zero}).is_zero());
  CHECK(arf(q) == one);
  CHECK_FALSE(in_wp_image(arf(q)));
  QuadForm h(f2);
  h.add_block(one, zero, zero);
  CHECK(arf(h).is_zero());
  CHECK_THROWS_AS(eval(q, {one}), std::invalid_argument);
  auto f = Field::parse("F2(a,b)");
  auto a = f->var("a"), b = f->var("b");
  CHECK(arf(expand_pfister({{b}, a})).is_zero());
  QuadForm qq = expand_pfister({{}, a}).perp(expand_pfister({{}, a}));
  CHECK(eval(qq, {f->one(), f->zero(), f->one(), f->zero()}).is_zero());
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    QuadForm p(f), r(f);
    p.add_block(f->random_nonzero_poly(rng, 1), f->random_poly(rng, 2), f->random_poly(rng, 2));
    r.add_block(f->random_nonzero_poly(rng, 1), f->random_poly(rng, 2), f->random_poly(rng, 1));
    CHECK(arf(p.perp(r)) == arf(p) + arf(r));
  }
}

TEST_CASE("isotropy of small forms") {
  auto f2 = Field::make(1);
  QuadForm q(f2);
  q.add_block(f2->one(), f2->one(), f2->one());
  auto r = isotropic_vector(q);
  CHECK(r.anisotropic());
  REQUIRE(r.cert);
  CHECK(r.cert->kind == AnisoCert::Kind::FiniteExhaustive);
  CHECK(certifies(*r.cert, q));

  auto f = Field::parse("F2(a)");
  auto a = f->var("a");
  QuadForm qq = expand_pfister({{}, a}).perp(expand_pfister({{}, a}));
  auto r2 = isotropic_vector(qq);
  REQUIRE(r2.found());
  CHECK(eval(qq, r2.vector).is_zero());
}

TEST_CASE("generic 3-fold Pfister form is anisotropic by residues") {
  auto f = Field::parse("F2(X,Y1,Y2)");
  QuadForm q = expand_pfister({{f->var("Y1"), f->var("Y2")}, f->var("X")});
  auto chain = residue_anisotropy_cert(q, {"Y1", "Y2", "X"});
  REQUIRE(chain);
  CHECK(certifies(*chain, q));
  auto r = isotropic_vector(q);
  REQUIRE(r.anisotropic());
  CHECK(certifies(*r.cert, q));
  CHECK(is_hyperbolic(q) == Tri::no);
}

TEST_CASE("residue certificate on [1,X] + Y[1,X] agrees with the oracle") {
  auto f = Field::parse("F2(X,Y)");
  auto X = f->var("X"), Y = f->var("Y");
  QuadForm q = expand_pfister({{Y}, X});
  auto cert = residue_anisotropy_cert(q, {"Y", "X"});
  REQUIRE(cert);
  CHECK(cert->kind == AnisoCert::Kind::Residue);
  CHECK(cert->children[0].kind == AnisoCert::Kind::Binary);
  CHECK(replay(*cert));
  // No zero among coordinates in {0, 1, X, X+1, Y, Y+1, XY}.
  auto one = f->one();
  std::vector<FieldElem> pool = {f->zero(), one, X, X + one, Y, Y + one, X * Y};
  CHECK_FALSE(oracle_has_zero(q, pool));

  auto f1 = Field::make(1);
  QuadForm leaf(f1);
  leaf.add_block(f1->one(), f1->one(), f1->one());
  auto lc = residue_anisotropy_cert(leaf, {});
  REQUIRE(lc);
  CHECK(lc->kind == AnisoCert::Kind::FiniteExhaustive);

  QuadForm hyp = expand_pfister({{f->one()}, X});
  CHECK_FALSE(residue_anisotropy_cert(hyp, {"Y", "X"}).has_value());
  CHECK_FALSE(find_aniso_cert(hyp).has_value());
}

TEST_CASE("tampered certificates fail replay") {
  auto f = Field::parse("F2(X,Y1,Y2)");
  QuadForm q = expand_pfister({{f->var("Y1"), f->var("Y2")}, f->var("X")});
  auto cert = residue_anisotropy_cert(q, {"Y1", "Y2", "X"});
  REQUIRE(cert);
  {
    AnisoCert bad = *cert;
    bad.children[0].form = bad.children[1].form.scaled(bad.children[1].form.field()->var(0));
    CHECK_FALSE(replay(bad));
  }
  {
    AnisoCert bad = *cert;
    bad.place = zero_place(*f, 0);
    CHECK_FALSE(replay(bad));
  }
  {
    AnisoCert bad = *cert;
    AnisoCert* leaf = &bad;
    while (!leaf->children.empty()) leaf = &leaf->children[0];
    QuadForm lf(leaf->form.field());
    lf.add_block(lf.field()->one(), lf.field()->one(), lf.field()->zero());
    leaf->form = lf;
    CHECK_FALSE(replay(bad));
  }
  {
    AnisoCert bad = *cert;
    bad.children.pop_back();
    CHECK_FALSE(replay(bad));
  }
  CHECK_FALSE(certifies(*cert, expand_pfister({{f->var("Y1"), f->var("Y1")}, f->var("X")})));
}

TEST_CASE("anisotropic residues at higher degree places") {
  // <<p; s]] with p = t^2+t+1 only splits into units at the place p.
  auto f = Field::parse("F2(t,s)");
  auto t = f->var("t"), s = f->var("s"), one = f->one();
  auto p = t * t + t + one;
  QuadForm q(f);
  q.add_block(one, one, s);
  q.add_block(p, one, s);
  auto cert = find_aniso_cert(q);
  REQUIRE(cert);
  CHECK(replay(*cert));
  CHECK(cert->place->degree() == 2);
  CHECK_FALSE(oracle_has_zero(q, {f->zero(), one, t, s, t + one, s + one}));
}

TEST_CASE("splitting off hyperbolic planes") {
  auto f = Field::parse("F2(a)");
  auto a = f->var("a"), one = f->one(), zero = f->zero();
  QuadForm qq = expand_pfister({{}, a}).perp(expand_pfister({{}, a}));
  auto s = split_off_hyperbolic(qq, {one, zero, one, zero});
  CHECK(verify_split(qq, s));
  CHECK(s.rest.dim() == 2);
  CHECK(is_hyperbolic(qq) == Tri::yes);

  auto f2 = Field::make(1);
  QuadForm h(f2);
  h.add_block(f2->one(), f2->zero(), f2->zero());
  auto hs = split_off_hyperbolic(h, {f2->one(), f2->zero()});
  CHECK(hs.rest.empty());
  CHECK_THROWS_AS(split_off_hyperbolic(h, {f2->zero(), f2->zero()}), std::invalid_argument);

  auto f4 = Field::make(2);
  auto w = f4->generator();
  QuadForm q4(f4);
  q4.add_block(f4->one(), f4->one(), w);
  q4.add_block(f4->one(), f4->zero(), f4->zero());
  auto s4 = split_off_hyperbolic(q4, {f4->zero(), f4->zero(), f4->one(), f4->zero()});
  CHECK(verify_split(q4, s4));
  REQUIRE(s4.rest.dim() == 2);
  CHECK(s4.rest.blocks()[0].block.a.is_one());
  CHECK(s4.rest.blocks()[0].block.b == w);
}

TEST_CASE("random splits verify") {
  auto f = Field::parse("F2^2(t)");
  Rng rng(4);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    QuadForm q(f);
    for (int j = 0; j < 3; ++j) q.add_block(f->random_nonzero_poly(rng, 1), f->random_poly(rng, 1), f->random_poly(rng, 1));
    q = q.perp(q);
    auto r = isotropic_vector(q);
    REQUIRE(r.found());
    auto s = split_off_hyperbolic(q, r.vector);
    CHECK(verify_split(q, s));
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("Witt decomposition over finite fields") {
  auto f4 = Field::make(2);
  auto w = f4->generator();
  QuadForm q(f4);
  q.add_block(f4->one(), f4->one(), w);
  auto d = witt_decompose(q);
  CHECK(d.index == 0);
  CHECK(d.status == WittDecomposition::Status::exact);
  CHECK(d.aniso_part == q);

  auto f16 = Field::make(4);
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    QuadForm p(f16);
    int nb = 1 + static_cast<int>(draw(rng, 4));
    for (int j = 0; j < nb; ++j) {
      p.add_block(f16->constant(1 + static_cast<GFElem>(draw(rng, 15))), f16->constant(static_cast<GFElem>(draw(rng, 16))),
                  f16->constant(static_cast<GFElem>(draw(rng, 16))));
    }
    auto dd = witt_decompose(p.perp(p));
    CHECK(dd.status == WittDecomposition::Status::exact);
    CHECK(dd.index == p.dim());
  }
}

TEST_CASE("Witt index over F_4 matches the Arf classification, exhaustively") {
  auto f4 = Field::make(2);
  auto elems = f4->enumerate();
  // dimension 4: every block pair
  std::vector<ScaledBlock> blocks;
  for (GFElem c = 1; c < 4; ++c)
    for (GFElem a = 0; a < 4; ++a)
      for (GFElem b = 0; b < 4; ++b) blocks.push_back({f4->constant(c), {f4->constant(a), f4->constant(b)}});
  int count = 0;
  for (const auto& b1 : blocks) {
    for (const auto& b2 : blocks) {
      QuadForm q(f4, {b1, b2});
      SearchBudget seed_a, seed_b;
      seed_b.seed = 99;
      auto d = witt_decompose(q, seed_a);
      auto d2 = witt_decompose(q, seed_b);
      REQUIRE(d.status == WittDecomposition::Status::exact);
      CHECK(d.index == d2.index);
      int expected = in_wp_image(arf(q)) ? 2 : 1;
      CHECK(d.index == expected);
      if (!d.aniso_part.empty()) {
        REQUIRE(d.cert);
        CHECK(d.cert->kind == AnisoCert::Kind::FiniteExhaustive);
        CHECK(certifies(*d.cert, d.aniso_part));
      }
      ++count;
    }
  }
  CHECK(count == 48 * 48);
}

TEST_CASE("Witt index over F_4 in dimension 6 on a block sweep") {
  auto f4 = Field::make(2);
  Rng rng(21);
  for (int i = 0; i < 3000; ++i) {
    QuadForm q(f4);
    for (int j = 0; j < 3; ++j)
      q.add_block(f4->constant(1 + static_cast<GFElem>(draw(rng, 3))), f4->constant(static_cast<GFElem>(draw(rng, 4))),
                  f4->constant(static_cast<GFElem>(draw(rng, 4))));
    auto d = witt_decompose(q);
    REQUIRE(d.status == WittDecomposition::Status::exact);
    CHECK(d.index == (in_wp_image(arf(q)) ? 3 : 2));
    CHECK(d.aniso_part.dim() <= 2);
  }
}

TEST_CASE("isometry tests") {
  auto f = Field::parse("F2(t)");
  auto t = f->var("t"), one = f->one();
  QuadForm q = expand_pfister({{t}, t + one});
  CHECK(is_isometric(q, q) == Tri::yes);
  auto lam = t * t + one;
  CHECK(is_isometric(expand_pfister({{}, t}), expand_pfister({{}, t + lam.wp()})) == Tri::yes);
  CHECK(is_isometric(expand_pfister({{}, t}), expand_pfister({{}, t * t * t})) == Tri::no);
  CHECK_THROWS_AS(is_isometric(q, expand_pfister({{}, t})), std::invalid_argument);
}

TEST_CASE("norm scaling preserves 2-fold Pfister forms") {
  auto f = Field::parse("F2(t)");
  Rng rng(12);
  int yes = 0;
  for (int i = 0; i < 100; ++i) {
    auto a = f->random_poly(rng, 2);
    auto b = f->random_nonzero_poly(rng, 2);
    EtaleElem alpha{a, f->random_poly(rng, 1), f->random_poly(rng, 1)};
    if (alpha.is_zero() || norm_sep(a, alpha).is_zero()) continue;
    QuadForm q = expand_pfister({{b}, a}).perp(expand_pfister({{b * norm_sep(a, alpha)}, a}));
    Tri h = is_hyperbolic(q);
    CHECK(h == Tri::yes);
    yes += h == Tri::yes;
  }
  CHECK(yes > 80);
}
