#include "pfister/witt.hpp"

namespace pfister {

namespace {

Vec axpy(const Vec& u, const FieldElem& s, const Vec& v) {
  if (s.is_zero()) return u;
  Vec r = u;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!v[i].is_zero()) r[i] += s * v[i];
  return r;
}

Vec scale_vec(const Vec& u, const FieldElem& s) {
  Vec r = u;
  for (auto& x : r) x = x * s;
  return r;
}

Vec unit_vector(const QuadForm& q, std::size_t j) {
  Vec e = zero_vector(q);
  e[j] = q.field()->one();
  return e;
}

}  // namespace

HyperbolicSplit split_off_hyperbolic(const QuadForm& q, const Vec& v) {
  if (static_cast<int>(v.size()) != q.dim()) throw std::invalid_argument("split_off_hyperbolic: dimension mismatch");
  if (is_zero_vector(v)) throw std::invalid_argument("split_off_hyperbolic: zero vector");
  if (!eval(q, v).is_zero()) throw std::invalid_argument("split_off_hyperbolic: vector is not isotropic");
  const std::size_t nb = q.blocks().size();
  std::vector<bool> support(nb, false);
  for (std::size_t i = 0; i < nb; ++i) support[i] = !v[2 * i].is_zero() || !v[2 * i + 1].is_zero();

  std::size_t j = 0;
  FieldElem bvj = q.field()->zero();
  for (; j < v.size(); ++j) {
    bvj = polar(q, v, unit_vector(q, j));
    if (!bvj.is_zero()) break;
  }
  Vec w = scale_vec(unit_vector(q, j), bvj.inv());
  w = axpy(w, eval(q, w), v);

  HyperbolicSplit out{v, w, QuadForm(q.field()), {}};
  std::vector<Vec> pending;
  for (std::size_t i = 0; i < nb; ++i) {
    if (support[i]) {
      for (std::size_t c = 0; c < 2; ++c) {
        Vec u = unit_vector(q, 2 * i + c);
        u = axpy(axpy(u, polar(q, u, w), v), polar(q, u, v), w);
        if (!is_zero_vector(u)) pending.push_back(std::move(u));
      }
    } else {
      const auto& blk = q.blocks()[i];
      out.rest.add_block(blk.scale, blk.block.a, blk.block.b);
      out.basis.push_back(unit_vector(q, 2 * i));
      out.basis.push_back(unit_vector(q, 2 * i + 1));
    }
  }
  // Symplectic Gram-Schmidt on the projected support vectors.
  while (!pending.empty()) {
    Vec u1 = pending.front();
    pending.erase(pending.begin());
    std::size_t k = 0;
    FieldElem p = q.field()->zero();
    for (; k < pending.size(); ++k) {
      p = polar(q, u1, pending[k]);
      if (!p.is_zero()) break;
    }
    if (k == pending.size()) throw std::logic_error("split_off_hyperbolic: complement is degenerate");
    Vec u2 = scale_vec(pending[k], p.inv());
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(k));
    out.rest.add_block(q.field()->one(), eval(q, u1), eval(q, u2));
    std::vector<Vec> next;
    for (auto& u : pending) {
      Vec r = axpy(axpy(u, polar(q, u, u2), u1), polar(q, u, u1), u2);
      if (!is_zero_vector(r)) next.push_back(std::move(r));
    }
    out.basis.push_back(std::move(u1));
    out.basis.push_back(std::move(u2));
    pending = std::move(next);
  }
  if (out.rest.dim() != q.dim() - 2) throw std::logic_error("split_off_hyperbolic: wrong complement dimension");
  return out;
}

bool verify_split(const QuadForm& q, const HyperbolicSplit& s) {
  if (s.rest.dim() != q.dim() - 2 || static_cast<int>(s.basis.size()) != s.rest.dim()) return false;
  if (!eval(q, s.v).is_zero() || !eval(q, s.w).is_zero() || !polar(q, s.v, s.w).is_one()) return false;
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    const Vec& u = s.basis[i];
    if (!polar(q, u, s.v).is_zero() || !polar(q, u, s.w).is_zero()) return false;
    const auto& blk = s.rest.blocks()[i / 2];
    FieldElem expect = blk.scale * (i % 2 == 0 ? blk.block.a : blk.block.b);
    if (!(eval(q, u) == expect)) return false;
    for (std::size_t k = i + 1; k < s.basis.size(); ++k) {
      FieldElem b = polar(q, u, s.basis[k]);
      bool partner = (i % 2 == 0) && k == i + 1;
      if (partner ? !(b == blk.scale) : !b.is_zero()) return false;
    }
  }
  return true;
}

WittDecomposition witt_decompose(const QuadForm& q, const SearchBudget& budget) {
  WittDecomposition out(q);
  for (;;) {
    if (out.aniso_part.empty()) {
      out.status = WittDecomposition::Status::exact;
      return out;
    }
    IsotropyResult r = isotropic_vector(out.aniso_part, budget);
    if (r.found()) {
      out.isotropic_vectors.push_back(r.vector);
      out.aniso_part = split_off_hyperbolic(out.aniso_part, r.vector).rest;
      ++out.index;
      continue;
    }
    out.status = r.anisotropic() ? WittDecomposition::Status::exact : WittDecomposition::Status::lower_bound;
    if (r.anisotropic()) out.cert = std::move(r.cert);
    return out;
  }
}

Tri is_hyperbolic(const QuadForm& q, const SearchBudget& budget) {
  if (q.empty()) return Tri::yes;
  if (!in_wp_image(arf(q))) return Tri::no;
  WittDecomposition d = witt_decompose(q, budget);
  if (d.status == WittDecomposition::Status::lower_bound) return Tri::unknown;
  return 2 * d.index == q.dim() ? Tri::yes : Tri::no;
}

Tri is_isometric(const QuadForm& p, const QuadForm& q, const SearchBudget& budget) {
  if (p.dim() != q.dim()) throw std::invalid_argument("is_isometric: dimension mismatch");
  return is_hyperbolic(p.perp(q), budget);
}

}  // namespace pfister
