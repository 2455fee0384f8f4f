#include "doctest.h"
#include "pfister/gf2k.hpp"

using namespace pfister;

namespace {

// Shift-and-add multiplication modulo the shipped polynomial, independent of
// the log tables.
GFElem ref_mul(GFElem a, GFElem b, int k) {
  std::uint64_t prod = 0;
  for (int i = 0; i < k; ++i)
    if (b & (1u << i)) prod ^= static_cast<std::uint64_t>(a) << i;
  const std::uint64_t mod = GF2k::modulus_for(k);
  for (int bit = 2 * k; bit >= k; --bit)
    if (prod & (std::uint64_t{1} << bit)) prod ^= mod << (bit - k);
  return static_cast<GFElem>(prod);
}

}  // namespace

TEST_CASE("multiplication matches shift-and-add for k <= 6") {
  for (int k = 1; k <= 6; ++k) {
    const GF2k& f = GF2k::get(k);
    for (GFElem a = 0; a < f.order(); ++a)
      for (GFElem b = 0; b < f.order(); ++b) REQUIRE(f.mul(a, b) == ref_mul(a, b, k));
  }
}

TEST_CASE("field axioms hold exhaustively over F_4 and F_8") {
  for (int k : {2, 3}) {
    const GF2k& f = GF2k::get(k);
    for (GFElem a = 0; a < f.order(); ++a) {
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (GFElem b = 0; b < f.order(); ++b) {
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (GFElem c = 0; c < f.order(); ++c) {
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("inverse of zero is a typed error") {
  CHECK_THROWS_AS(GF2k::get(4).inv(0), DivisionByZero);
  CHECK_THROWS_AS(GF2k::get(1).div(1, 0), DivisionByZero);
}

TEST_CASE("moduli table is fixed and irreducible") {
  CHECK(GF2k::modulus_for(2) == 0x7);
  CHECK(GF2k::modulus_for(8) == 0x11b);
  CHECK(GF2k::modulus_for(16) == 0x1002b);
  CHECK_THROWS_AS(GF2k::modulus_for(17), std::invalid_argument);
  auto bitmod = [](std::uint64_t a, std::uint64_t d) {
    int dd = 63 - __builtin_clzll(d);
    for (int bit = 63; bit >= dd; --bit)
      if (a & (std::uint64_t{1} << bit)) a ^= d << (bit - dd);
    return a;
  };
  for (int k = 2; k <= 16; ++k) {
    const std::uint64_t m = GF2k::modulus_for(k);
    for (std::uint64_t d = 2; d < (std::uint64_t{1} << (k / 2 + 1)); ++d) CHECK(bitmod(m, d) != 0);
  }
}

TEST_CASE("sqrt inverts squaring") {
  for (int k : {1, 4, 9, 16}) {
    const GF2k& f = GF2k::get(k);
    for (GFElem a = 0; a < std::min<GFElem>(f.order(), 4096); ++a) CHECK(f.sqrt(f.square(a)) == a);
  }
}

TEST_CASE("Artin-Schreier solvable exactly on trace zero, smallest root returned") {
  for (int k = 1; k <= 4; ++k) {
    const GF2k& f = GF2k::get(k);
    for (GFElem a = 0; a < f.order(); ++a) {
      std::optional<GFElem> brute;
      for (GFElem l = 0; l < f.order() && !brute; ++l)
        if ((f.square(l) ^ l) == a) brute = l;
      auto got = f.solve_artin_schreier(a);
      CHECK(got.has_value() == (f.trace(a) == 0));
      CHECK(got == brute);
    }
  }
}

TEST_CASE("wp(omega) = 1 over F_4") {
  const GF2k& f = GF2k::get(2);
  // omega = g satisfies g^2 = g + 1 under modulus x^2+x+1
  CHECK((f.square(2) ^ 2u) == 1u);
  CHECK(f.solve_artin_schreier(1) == GFElem{2});
  CHECK_FALSE(GF2k::get(1).solve_artin_schreier(1).has_value());
  CHECK(GF2k::get(1).solve_artin_schreier(0) == GFElem{0});
}

TEST_CASE("embeddings are ring homomorphisms") {
  for (auto [s, b] : {std::pair{1, 4}, std::pair{2, 4}, std::pair{2, 6}, std::pair{4, 8}, std::pair{3, 12}}) {
    GFEmbedding e(s, b);
    const GF2k& fs = GF2k::get(s);
    const GF2k& fb = GF2k::get(b);
    for (GFElem x = 0; x < fs.order(); ++x)
      for (GFElem y = 0; y < fs.order(); ++y) {
        CHECK(e(x ^ y) == (e(x) ^ e(y)));
        CHECK(e(fs.mul(x, y)) == fb.mul(e(x), e(y)));
      }
  }
  CHECK_THROWS_AS(GFEmbedding(3, 4), std::invalid_argument);
}

TEST_CASE("coefficient printing") {
  CHECK(GF2k::get(4).to_string(0b0101) == "g^2+1");
  CHECK(GF2k::get(2).to_string(2) == "g");
  CHECK(GF2k::get(1).to_string(1) == "1");
  CHECK(GF2k::get(3).to_string(0) == "0");
}
