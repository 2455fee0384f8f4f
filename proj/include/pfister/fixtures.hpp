#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfister/descent.hpp"

namespace pfister {

/// A parsed or generated input object together with an optional budget.
struct Instance {
  std::variant<QuadForm, QSymbol, LinkedTriple, QuadInstance, std::vector<PfisterDesc>> payload;
  std::optional<SearchBudget> budget;

  FieldPtr field() const;
  /// "form", "symbol", "triple", "quad" or "pfister_tuple".
  std::string kind() const;
};

struct FixtureParams {
  int n = 2;
  int m = 3;
  std::uint64_t seed = 1;
  /// hyperbolic_triple: "sum" (b2 = b1 + 1) or "norm" (b2 = b1 * pi(v)).
  std::string variant = "sum";
};

/// <<Y_1, X_1..X_{n-1}]], <<Y_2, ...]], <<Y_1 Y_2, ...]] over F2(X_1..X_{n-1}, Y_1, Y_2).
LinkedTriple generic_triple(int n);
/// <<Y_i; X]] for i < m and <<Y_1 ... Y_{m-1}; X]] over F2(X, Y_1..Y_{m-1}).
std::vector<PfisterDesc> canonical_monomial(int m);
/// [a, b_i) for i <= 3 and [a, b_1 b_2 b_3) over F2(a, b1, b2, b3).
QuadInstance linked_quad();
/// Triples whose sigma class is hyperbolic: b2 = b1 + 1, or b2 = b1 pi(v) for a random v.
LinkedTriple hyperbolic_triple(int n, const std::string& variant, std::uint64_t seed);
/// [c_i, d4) and [c1 + c2 + c3, d4) over F2(c1, c2, c3, d4), with random separable slot shifts when seed != 0.
QuadInstance case_a_quad(std::uint64_t seed);
/// Built backwards from f1..f4, x and random delta_i over F2(f1, f2, f3, f4, x).
QuadInstance case_b_quad(std::uint64_t seed);
/// One symbol [e1, f4) at a random position, over F2(e1, f2, f3, f4, x).
QuadInstance case_c_quad(std::uint64_t seed);
/// Four random symbols over F_4, all split.
QuadInstance split_quad(std::uint64_t seed);
/// A linked quadruple over F2(t1, t2) with random data moved by random rewrites.
QuadInstance random_quad(std::uint64_t seed);

const std::vector<std::string>& fixture_kinds();
/// Throws std::invalid_argument on unknown kinds or bad parameters.
Instance make_fixture(const std::string& kind, const FixtureParams& p);

}  // namespace pfister
