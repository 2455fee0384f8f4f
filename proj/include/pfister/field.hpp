#pragma once

#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfister/gf2k.hpp"
#include "pfister/mpoly.hpp"

namespace pfister {

using Rng = std::mt19937_64;

/// Uniform draw in [0, n) from raw generator bits (platform independent).
inline std::uint64_t draw(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

/// Malformed element or field strings; the message carries the offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class FieldElem;
class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_{2^k}(t_1, ..., t_n): the base finite field with n >= 0 indeterminates.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(int k, std::vector<std::string> vars = {});
  /// Accepts "F2", "F2^k", "F2(t1,t2)", "F2^k(t1,...,tn)".
  static FieldPtr parse(std::string_view decl);

  int degree() const { return k_; }
  const GF2k& gf() const { return GF2k::get(k_); }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(int i) const { return vars_.at(static_cast<std::size_t>(i)); }
  /// Index of a variable, or -1.
  int var_index(std::string_view name) const;
  bool is_finite() const { return vars_.empty(); }
  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) { return a.k_ == b.k_ && a.vars_ == b.vars_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem constant(GFElem c) const;
  FieldElem generator() const;
  FieldElem var(int i) const;
  FieldElem var(std::string_view name) const;
  FieldElem from_poly(MPoly p) const;
  FieldElem fraction(MPoly num, MPoly den) const;
  FieldElem parse_elem(std::string_view text) const;

  /// Random polynomial element: every monomial of total degree <= max_degree
  /// gets an independent uniform coefficient.
  FieldElem random_poly(Rng& rng, int max_degree) const;
  FieldElem random_nonzero_poly(Rng& rng, int max_degree) const;
  /// Every element of a finite field, in integer order.
  std::vector<FieldElem> enumerate() const;

  MPoly poly_zero() const { return MPoly(k_, nvars()); }
  MPoly poly_one() const { return MPoly::constant(k_, nvars(), 1); }

 private:
  Field(int k, std::vector<std::string> vars) : k_(k), vars_(std::move(vars)) {}
  int k_;
  std::vector<std::string> vars_;
};

/// Element of F_{2^k}(t_1..t_n) as a reduced fraction with monic denominator.
///
/// Two elements are equal iff their numerators and denominators are
/// identical, which normalization makes canonical.
class FieldElem {
 public:
  FieldElem(FieldPtr field, MPoly num, MPoly den);

  const FieldPtr& field() const { return field_; }
  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// Value of a constant element; throws otherwise.
  GFElem constant_value() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const { return *this + o; }
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const { return *this * o.inv(); }
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem inv() const;
  FieldElem square() const;
  FieldElem pow(int e) const;
  /// x^2 + x
  FieldElem wp() const { return square() + *this; }

  bool is_square() const;
  FieldElem sqrt() const;

  std::string to_string() const;
  /// Degree measure used for search ordering: max total degree of num/den.
  int height() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return *a.field_ == *b.field_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void check_same_field(const FieldElem& o) const;
  FieldPtr field_;
  MPoly num_;
  MPoly den_;
};

/// Element x + y*theta of F[theta]/(theta^2 + theta + a).
struct EtaleElem {
  FieldElem a;
  FieldElem x;
  FieldElem y;

  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  EtaleElem operator*(const EtaleElem& o) const;
  EtaleElem scaled(const FieldElem& c) const { return {a, x * c, y * c}; }
  /// Inverse; throws DivisionByZero when the norm vanishes.
  EtaleElem inv() const;
};

/// Norm of x + y*theta from F(wp^{-1}(a)): x^2 + xy + a y^2.
FieldElem norm_sep(const FieldElem& a, const EtaleElem& alpha);
/// Norm from the inseparable extension F(sqrt b): x^2 + b y^2.
FieldElem norm_insep(const FieldElem& b, const FieldElem& x, const FieldElem& y);

/// lambda with lambda^2 + lambda = a, or nullopt when a is not in wp(F).
///
/// Decides membership exactly for every supported field: over F_{2^k} through
/// the trace, over function fields by solving the F_2-linear system
/// n^2 + e n = N for the numerator (the denominator must be e^2). Of the two
/// solutions the one whose coefficient at the leading monomial of e has a
/// clear low bit is returned, which for constants is the smaller integer.
std::optional<FieldElem> artin_schreier_solve(const FieldElem& a);

inline bool in_wp_image(const FieldElem& a) { return artin_schreier_solve(a).has_value(); }

/// p(values) in target, one value per variable of p.
FieldElem evaluate(const MPoly& p, const FieldPtr& target, const std::vector<FieldElem>& values);
/// x with its variables replaced by values in target; throws DivisionByZero
/// when the denominator vanishes there.
FieldElem specialize(const FieldElem& x, const FieldPtr& target, const std::vector<FieldElem>& values);

/// value = a + shift^2 + shift, where the polynomial part of value has no
/// non-constant monomial with only even exponents.
struct WpReduced {
  FieldElem value;
  FieldElem shift;
};
WpReduced wp_reduce(const FieldElem& a);

}  // namespace pfister
