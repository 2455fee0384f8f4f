#include <random>

#include "doctest.h"
#include "pfister/mpoly.hpp"

using namespace pfister;

namespace {

// Univariate F_2 polynomials as bit masks.
std::uint64_t bit_mod(std::uint64_t a, std::uint64_t d) {
  int dd = 63 - __builtin_clzll(d);
  for (int bit = 63; bit >= dd; --bit)
    if (a & (std::uint64_t{1} << bit)) a ^= d << (bit - dd);
  return a;
}

std::uint64_t bit_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t r = bit_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

MPoly from_bits(std::uint64_t bits, int nvars = 1) {
  std::vector<MPoly::Term> terms;
  for (int i = 0; i < 64; ++i)
    if (bits & (std::uint64_t{1} << i)) terms.emplace_back(i ? Monomial::variable(0, i) : Monomial(), 1);
  return MPoly::from_terms(1, nvars, terms);
}

MPoly random_poly(std::mt19937_64& rng, int k, int nvars, int max_deg, int nterms) {
  std::vector<MPoly::Term> terms;
  for (int i = 0; i < nterms; ++i) {
    std::vector<int> e(static_cast<std::size_t>(nvars));
    int left = static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1));
    for (int v = 0; v < nvars; ++v) {
      int x = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
      e[static_cast<std::size_t>(v)] = x;
      left -= x;
    }
    terms.emplace_back(Monomial::from_exponents(e), static_cast<GFElem>(1 + rng() % ((1u << k) - 1)));
  }
  return MPoly::from_terms(k, nvars, terms);
}

}  // namespace

TEST_CASE("monomial packing orders by degree then variable") {
  Monomial x = Monomial::variable(0), y = Monomial::variable(1);
  CHECK(x > y);
  CHECK(y * y > x);
  CHECK((x * y).total_degree() == 2);
  CHECK((x * x * y) / x == x * y);
  CHECK((x * x * y * y).halved() == x * y);
  CHECK_FALSE(x.divides(y));
}

TEST_CASE("characteristic two addition and Frobenius") {
  MPoly t = MPoly::variable(1, 1, 0);
  MPoly one = MPoly::constant(1, 1, 1);
  CHECK((t + t).is_zero());
  CHECK((t + one) * (t + one) == t * t + one);
  CHECK((t + one).square() == t * t + one);
}

TEST_CASE("univariate gcd matches Euclid on bit polynomials") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 300; ++it) {
    std::uint64_t common = (rng() & 0x3f) | 1;
    std::uint64_t a = rng() & 0x1ff, b = rng() & 0x1ff;
    if (!a || !b) continue;
    auto mul = [](std::uint64_t x, std::uint64_t y) {
      std::uint64_t r = 0;
      for (int i = 0; i < 32; ++i)
        if (y & (std::uint64_t{1} << i)) r ^= x << i;
      return r;
    };
    std::uint64_t pa = mul(a, common), pb = mul(b, common);
    CHECK(gcd(from_bits(pa), from_bits(pb)) == from_bits(bit_gcd(pa, pb)));
  }
}

TEST_CASE("multivariate gcd recovers planted factors") {
  std::mt19937_64 rng(11);
  for (int k : {1, 2, 4}) {
    for (int it = 0; it < 40; ++it) {
      int nv = 2 + static_cast<int>(rng() % 2);
      MPoly g = random_poly(rng, k, nv, 2, 3);
      MPoly a = random_poly(rng, k, nv, 2, 3);
      MPoly b = random_poly(rng, k, nv, 2, 3);
      if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
      MPoly pa = g * a, pb = g * b;
      MPoly d = gcd(pa, pb);
      CHECK(d.leading_coeff() == 1);
      CHECK(pa.divisible_by(d));
      CHECK(pb.divisible_by(d));
      CHECK(d.divisible_by(g.monic()));
      MPoly ca = pa.exact_div(d), cb = pb.exact_div(d);
      CHECK(gcd(ca, cb).is_one());
    }
  }
}

TEST_CASE("gcd edge cases") {
  MPoly z(1, 2);
  MPoly x = MPoly::variable(1, 2, 0);
  MPoly y = MPoly::variable(1, 2, 1);
  CHECK(gcd(z, x) == x);
  CHECK(gcd(x, y).is_one());
  CHECK(gcd(x * y, x * x) == x);
  CHECK(gcd(z, z).is_zero());
}

TEST_CASE("division, substitution and square roots") {
  MPoly x = MPoly::variable(2, 2, 0);
  MPoly y = MPoly::variable(2, 2, 1);
  MPoly one = MPoly::constant(2, 2, 1);
  MPoly p = (x + y) * (x + one);
  CHECK(p.exact_div(x + one) == x + y);
  CHECK_THROWS_AS(p.exact_div(y + one), std::domain_error);
  CHECK(p.substitute(0, GFElem{1}).is_zero());
  CHECK(p.substitute(1, x) == MPoly(2, 2));
  MPoly sq = (x * y + MPoly::constant(2, 2, 2)).square();
  REQUIRE(sq.is_square());
  CHECK(sq.sqrt() == x * y + MPoly::constant(2, 2, 2));
  CHECK_FALSE((x + one).is_square());
  auto coeffs = p.coefficients_in(0);
  CHECK(MPoly::from_coefficients_in(0, coeffs, 2, 2) == p);
  CHECK((y + one).drop_variable(0).nvars() == 1);
}
