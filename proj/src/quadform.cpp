#include "pfister/quadform.hpp"

namespace pfister {

QuadForm::QuadForm(FieldPtr field, std::vector<ScaledBlock> blocks) : field_(std::move(field)) {
  for (auto& b : blocks) add_block(b.scale, b.block.a, b.block.b);
}

void QuadForm::add_block(const FieldElem& scale, const FieldElem& a, const FieldElem& b) {
  if (scale.is_zero()) throw std::invalid_argument("quadratic form: zero block scale");
  for (const FieldElem* x : {&scale, &a, &b})
    if (!(*x->field() == *field_)) throw std::invalid_argument("quadratic form: block from a different field");
  blocks_.push_back({scale, {a, b}});
}

QuadForm QuadForm::perp(const QuadForm& other) const {
  if (!(*field_ == *other.field_)) throw std::invalid_argument("quadratic form: field mismatch in orthogonal sum");
  QuadForm r = *this;
  for (const auto& b : other.blocks_) r.blocks_.push_back(b);
  return r;
}

QuadForm QuadForm::scaled(const FieldElem& c) const {
  if (c.is_zero()) throw std::invalid_argument("quadratic form: zero scalar");
  QuadForm r = *this;
  for (auto& b : r.blocks_) b.scale = b.scale * c;
  return r;
}

std::string QuadForm::to_string() const {
  if (blocks_.empty()) return "0";
  std::string s;
  for (const auto& b : blocks_) {
    if (!s.empty()) s += " _|_ ";
    if (!b.scale.is_one()) s += "(" + b.scale.to_string() + ")";
    s += "[" + b.block.a.to_string() + ", " + b.block.b.to_string() + "]";
  }
  return s;
}

bool operator==(const QuadForm& p, const QuadForm& q) {
  if (!(*p.field_ == *q.field_) || p.blocks_.size() != q.blocks_.size()) return false;
  for (std::size_t i = 0; i < p.blocks_.size(); ++i) {
    const auto& x = p.blocks_[i];
    const auto& y = q.blocks_[i];
    if (!(x.scale == y.scale && x.block.a == y.block.a && x.block.b == y.block.b)) return false;
  }
  return true;
}

FieldElem eval(const QuadForm& q, const Vec& v) {
  if (static_cast<int>(v.size()) != q.dim()) throw std::invalid_argument("eval: dimension mismatch");
  FieldElem acc = q.field()->zero();
  for (std::size_t i = 0; i < q.blocks().size(); ++i) {
    const auto& blk = q.blocks()[i];
    const FieldElem& x = v[2 * i];
    const FieldElem& y = v[2 * i + 1];
    if (x.is_zero() && y.is_zero()) continue;
    acc += blk.scale * (blk.block.a * x.square() + x * y + blk.block.b * y.square());
  }
  return acc;
}

FieldElem polar(const QuadForm& q, const Vec& u, const Vec& v) {
  if (static_cast<int>(u.size()) != q.dim() || static_cast<int>(v.size()) != q.dim())
    throw std::invalid_argument("polar: dimension mismatch");
  FieldElem acc = q.field()->zero();
  for (std::size_t i = 0; i < q.blocks().size(); ++i) {
    FieldElem t = u[2 * i] * v[2 * i + 1] + u[2 * i + 1] * v[2 * i];
    if (!t.is_zero()) acc += q.blocks()[i].scale * t;
  }
  return acc;
}

Vec zero_vector(const QuadForm& q) { return Vec(static_cast<std::size_t>(q.dim()), q.field()->zero()); }

bool is_zero_vector(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

FieldElem arf(const QuadForm& q) {
  FieldElem acc = q.field()->zero();
  for (const auto& b : q.blocks()) acc += b.block.a * b.block.b;
  return acc;
}

bool same_arf(const QuadForm& p, const QuadForm& q) { return in_wp_image(arf(p) + arf(q)); }

QuadForm expand_pfister(const PfisterDesc& d) {
  const FieldPtr& f = d.as_slot.field();
  for (const auto& b : d.bilinear)
    if (b.is_zero()) throw std::invalid_argument("expand_pfister: zero bilinear slot");
  QuadForm q(f);
  const std::size_t n = d.bilinear.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    FieldElem s = f->one();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) s *= d.bilinear[i];
    q.add_block(s, f->one(), d.as_slot);
  }
  return q;
}

QuadForm sigma_S(const std::vector<PfisterDesc>& forms) {
  if (forms.empty()) throw std::invalid_argument("sigma_S: empty list");
  QuadForm q = expand_pfister(forms.front());
  for (std::size_t i = 1; i < forms.size(); ++i) q = q.perp(expand_pfister(forms[i]));
  return q;
}

}  // namespace pfister
