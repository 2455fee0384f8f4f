#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfister {

/// Raised for any attempt to invert zero, in any of the field layers.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// Element of F_{2^k} as a k-bit coefficient vector in the generator g.
using GFElem = std::uint32_t;

/// Finite field F_{2^k}, 1 <= k <= 16, built on a fixed irreducible modulus.
///
/// Instances are process-wide singletons obtained through GF2k::get(k); the
/// log/antilog tables are built on first use and never mutated afterwards.
class GF2k {
 public:
  static constexpr int kMaxDegree = 16;

  static const GF2k& get(int k);

  /// Shipped modulus for degree k, bit i is the coefficient of x^i.
  static std::uint32_t modulus_for(int k);

  int degree() const { return k_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return 1u << k_; }
  bool contains(GFElem a) const { return a < order(); }

  static GFElem add(GFElem a, GFElem b) { return a ^ b; }
  GFElem mul(GFElem a, GFElem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  GFElem inv(GFElem a) const {
    if (a == 0) throw DivisionByZero();
    return exp_[(order() - 1) - log_[a]];
  }
  GFElem div(GFElem a, GFElem b) const { return mul(a, inv(b)); }
  GFElem square(GFElem a) const { return mul(a, a); }
  GFElem pow(GFElem a, std::uint64_t e) const;
  /// The unique square root (Frobenius is bijective on a finite field).
  GFElem sqrt(GFElem a) const;
  /// Absolute trace to F_2, returned as 0 or 1.
  GFElem trace(GFElem a) const;
  /// Smallest lambda (as an integer) with lambda^2 + lambda = a, if any.
  std::optional<GFElem> solve_artin_schreier(GFElem a) const;
  /// Reduction of an arbitrary bit-polynomial in g modulo the field modulus.
  GFElem reduce(std::uint64_t poly) const;

  /// Coefficient written as a polynomial in g, e.g. "g^2+1".
  std::string to_string(GFElem a) const;

 private:
  explicit GF2k(int k);

  int k_;
  std::uint32_t modulus_;
  std::vector<GFElem> exp_;
  std::vector<std::uint32_t> log_;
};

/// Embedding F_{2^k} -> F_{2^{kd}} that sends g to the smallest root of the
/// degree-k modulus inside the bigger field.
class GFEmbedding {
 public:
  GFEmbedding(int from_degree, int to_degree);
  GFElem operator()(GFElem a) const { return table_[a]; }
  int from_degree() const { return from_; }
  int to_degree() const { return to_; }

 private:
  int from_;
  int to_;
  std::vector<GFElem> table_;
};

}  // namespace pfister
