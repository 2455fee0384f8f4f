#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfister/field.hpp"

namespace pfister {

/// A discrete valuation of F_{2^k}(t_1..t_n) trivial on the other variables:
/// either the p-adic valuation for a monic irreducible p in one variable t,
/// or the degree valuation at infinity (uniformizer 1/t).
struct Place {
  int var = 0;
  bool at_infinity = false;
  MPoly poly;  // univariate in var; unused at infinity

  int degree() const { return at_infinity ? 1 : poly.degree_in(var); }
  std::string describe(const Field& field) const;
  friend bool operator==(const Place& a, const Place& b) {
    return a.var == b.var && a.at_infinity == b.at_infinity && (a.at_infinity || a.poly == b.poly);
  }
};

Place zero_place(const Field& field, int var);
Place infinity_place(const Field& field, int var);
/// p must be monic, irreducible over F_{2^k} and involve only var (checked).
Place poly_place(const Field& field, int var, MPoly p);

int valuation(const FieldElem& f, const Place& place);
FieldElem uniformizer(const FieldPtr& field, const Place& place);

/// Reduction modulo a place. The residue field of a degree-d place is
/// F_{2^{kd}} in the remaining variables, with g embedded and t sent to the
/// smallest root of p.
class ResidueMap {
 public:
  ResidueMap(FieldPtr source, Place place);

  const FieldPtr& source() const { return source_; }
  const FieldPtr& target() const { return target_; }
  const Place& place() const { return place_; }
  /// Residue of an integral element (zero when the valuation is positive).
  FieldElem operator()(const FieldElem& f) const;

 private:
  MPoly reduce_poly(const MPoly& p) const;

  FieldPtr source_;
  FieldPtr target_;
  Place place_;
  std::optional<GFEmbedding> embed_;
  GFElem root_ = 0;
};

/// t-adic valuation of f != 0 and the residue of f * t^{-v} at t = 0.
std::pair<int, FieldElem> leading_data(const FieldElem& f, int var);

/// Monic irreducible polynomials in var of degree <= max_degree, by degree
/// then integer order of the coefficient vector.
std::vector<MPoly> univariate_irreducibles(int field_degree, int nvars, int var, int max_degree);

/// Largest factor of p that lies in F_{2^k}[var] (monic).
MPoly var_content(const MPoly& p, int var);

}  // namespace pfister
