#pragma once

#include <cstdint>
#include <vector>

#include "pfister/field.hpp"

namespace pfister {

/// The binary form [a,b] = aX^2 + XY + bY^2.
struct BinaryBlock {
  FieldElem a;
  FieldElem b;
};

/// c * [a,b] with c != 0.
struct ScaledBlock {
  FieldElem scale;
  BinaryBlock block;
};

using Vec = std::vector<FieldElem>;

/// Nonsingular even-dimensional form as an orthogonal sum of scaled blocks.
/// Coordinates of block i are (x_i, y_i) at positions 2i, 2i+1.
class QuadForm {
 public:
  explicit QuadForm(FieldPtr field) : field_(std::move(field)) {}
  QuadForm(FieldPtr field, std::vector<ScaledBlock> blocks);

  const FieldPtr& field() const { return field_; }
  const std::vector<ScaledBlock>& blocks() const { return blocks_; }
  int dim() const { return 2 * static_cast<int>(blocks_.size()); }
  bool empty() const { return blocks_.empty(); }

  void add_block(const FieldElem& scale, const FieldElem& a, const FieldElem& b);
  QuadForm perp(const QuadForm& other) const;
  QuadForm scaled(const FieldElem& c) const;
  std::string to_string() const;

  friend bool operator==(const QuadForm& p, const QuadForm& q);

 private:
  FieldPtr field_;
  std::vector<ScaledBlock> blocks_;
};

FieldElem eval(const QuadForm& q, const Vec& v);
/// b(u,v) = q(u+v) - q(u) - q(v).
FieldElem polar(const QuadForm& q, const Vec& u, const Vec& v);
Vec zero_vector(const QuadForm& q);
bool is_zero_vector(const Vec& v);

/// Sum of a_i b_i; its class modulo wp(F) is the Arf invariant.
FieldElem arf(const QuadForm& q);
/// True when arf(p) + arf(q) lies in wp(F).
bool same_arf(const QuadForm& p, const QuadForm& q);

/// <<b_1, ..., b_{n-1}; a]]: bilinear slots then the separable slot.
struct PfisterDesc {
  std::vector<FieldElem> bilinear;
  FieldElem as_slot;

  int fold() const { return static_cast<int>(bilinear.size()) + 1; }
};

/// Expansion with scales ordered by subset bit pattern: 1, b1, b2, b1b2, ...
QuadForm expand_pfister(const PfisterDesc& d);
QuadForm sigma_S(const std::vector<PfisterDesc>& forms);

}  // namespace pfister
