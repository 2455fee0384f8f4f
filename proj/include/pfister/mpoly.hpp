#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pfister/gf2k.hpp"

namespace pfister {

/// Packed exponent vector for at most kMaxVars variables.
///
/// The top byte stores the total degree and byte (6 - i) the exponent of
/// variable i, so plain integer comparison is graded lexicographic order with
/// variable 0 largest.
class Monomial {
 public:
  static constexpr int kMaxVars = 7;
  static constexpr int kMaxDegree = 255;

  constexpr Monomial() = default;
  static Monomial variable(int index, int exponent = 1);
  static Monomial from_exponents(std::span<const int> exps);

  int total_degree() const { return static_cast<int>(bits_ >> 56); }
  int exponent(int var) const { return static_cast<int>((bits_ >> shift(var)) & 0xffu); }
  bool is_one() const { return bits_ == 0; }
  bool divides(Monomial other) const;
  bool all_even() const;

  Monomial operator*(Monomial other) const;
  /// Requires divides(); checked.
  Monomial operator/(Monomial other) const;
  Monomial halved() const;
  Monomial without(int var) const;
  Monomial with_exponent(int var, int e) const;

  std::uint64_t bits() const { return bits_; }
  friend bool operator==(Monomial, Monomial) = default;
  friend auto operator<=>(Monomial a, Monomial b) { return a.bits_ <=> b.bits_; }

 private:
  static constexpr int shift(int var) { return 48 - 8 * var; }
  explicit constexpr Monomial(std::uint64_t b) : bits_(b) {}
  std::uint64_t bits_ = 0;
};

/// Sparse multivariate polynomial over F_{2^k}.
///
/// Terms are kept sorted by descending monomial and never hold a zero
/// coefficient. The variable count is fixed per polynomial; operations on two
/// polynomials require equal field degree and variable count.
class MPoly {
 public:
  using Term = std::pair<Monomial, GFElem>;

  MPoly(int field_degree, int nvars);
  static MPoly constant(int field_degree, int nvars, GFElem c);
  static MPoly variable(int field_degree, int nvars, int var);
  static MPoly from_terms(int field_degree, int nvars, std::vector<Term> terms);

  int field_degree() const { return gf_->degree(); }
  const GF2k& gf() const { return *gf_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }
  GFElem constant_term() const;
  const Term& leading() const { return terms_.front(); }
  GFElem leading_coeff() const { return terms_.front().second; }
  int total_degree() const;
  int degree_in(int var) const;
  int min_degree_in(int var) const;
  bool uses(int var) const { return degree_in(var) > 0; }

  MPoly operator+(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly scaled(GFElem c) const;
  MPoly times_monomial(Monomial m) const;
  MPoly square() const;
  MPoly pow(unsigned e) const;

  /// Multivariate division by a single divisor under grlex.
  std::pair<MPoly, MPoly> divmod(const MPoly& d) const;
  /// Exact quotient; throws std::domain_error when d does not divide.
  MPoly exact_div(const MPoly& d) const;
  bool divisible_by(const MPoly& d) const;

  /// Scale so the leading coefficient is 1 (zero stays zero).
  MPoly monic() const;
  /// Coefficients of var^0, var^1, ... with var removed from each term.
  std::vector<MPoly> coefficients_in(int var) const;
  static MPoly from_coefficients_in(int var, const std::vector<MPoly>& coeffs, int field_degree, int nvars);
  /// Substitute var := c and keep the variable slot (now absent).
  MPoly substitute(int var, GFElem c) const;
  /// Substitute var := p for a polynomial p in the same ring.
  MPoly substitute(int var, const MPoly& p) const;
  /// Drop variable slot var (which must be unused), renumbering higher ones.
  MPoly drop_variable(int var) const;
  /// Move to a bigger coefficient field through an embedding.
  MPoly embedded(const GFEmbedding& emb) const;
  /// Same polynomial viewed in a ring with more variables (appended slots).
  MPoly widened(int nvars) const;
  /// Square root when every exponent is even; nullopt otherwise.
  bool is_square() const;
  MPoly sqrt() const;

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.gf_ == b.gf_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const MPoly& o) const;
  void add_term_sorted(Monomial m, GFElem c);
  static std::vector<Term> combine(std::vector<Term> raw);

  const GF2k* gf_;
  int nvars_;
  std::vector<Term> terms_;
};

/// Monic gcd (zero only when both inputs are zero).
MPoly gcd(const MPoly& a, const MPoly& b);

}  // namespace pfister
