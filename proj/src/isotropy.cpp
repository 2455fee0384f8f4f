#include <algorithm>
#include <functional>

#include "pfister/isotropy.hpp"

namespace pfister {

namespace {

// Cleared-denominator view: D q(v) = sum A_i x_i^2 + C_i x_i y_i + B_i y_i^2.
struct PolyView {
  MPoly D;
  std::vector<MPoly> A, B, C;

  explicit PolyView(const QuadForm& q) : D(q.field()->poly_one()) {
    for (const auto& blk : q.blocks()) {
      for (const FieldElem& e : {blk.scale * blk.block.a, blk.scale, blk.scale * blk.block.b}) {
        const MPoly& d = e.den();
        if (d.is_one()) continue;
        MPoly g = gcd(D, d);
        D = D * d.exact_div(g);
      }
    }
    FieldElem Df = q.field()->from_poly(D);
    for (const auto& blk : q.blocks()) {
      A.push_back((Df * blk.scale * blk.block.a).num());
      C.push_back((Df * blk.scale).num());
      B.push_back((Df * blk.scale * blk.block.b).num());
    }
  }

  // Value of blocks other than skip at polynomial coordinates.
  MPoly value(const std::vector<MPoly>& v, std::size_t skip = static_cast<std::size_t>(-1)) const {
    MPoly acc(D.field_degree(), D.nvars());
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (i == skip) continue;
      const MPoly& x = v[2 * i];
      const MPoly& y = v[2 * i + 1];
      if (!x.is_zero()) acc += A[i] * x.square();
      if (!x.is_zero() && !y.is_zero()) acc += C[i] * x * y;
      if (!y.is_zero()) acc += B[i] * y.square();
    }
    return acc;
  }
};

IsotropyResult found(const QuadForm& q, Vec v, const char* method) {
  if (is_zero_vector(v) || !eval(q, v).is_zero()) throw std::logic_error(std::string("isotropy search produced a bad vector in stage ") + method);
  IsotropyResult r;
  r.status = IsotropyResult::Status::Found;
  r.vector = std::move(v);
  r.method = method;
  return r;
}

Vec to_vec(const QuadForm& q, const std::vector<MPoly>& v) {
  Vec out;
  for (const auto& p : v) out.push_back(q.field()->from_poly(p));
  return out;
}

// Polynomials of total degree <= d, zero and one first, capped in number.
std::vector<MPoly> small_elements(const Field& f, int d, std::size_t cap) {
  std::vector<Monomial> monos;
  std::vector<int> exps(static_cast<std::size_t>(f.nvars()), 0);
  std::function<void(int, int)> rec = [&](int var, int used) {
    if (var == f.nvars()) {
      monos.push_back(Monomial::from_exponents(exps));
      return;
    }
    for (int e = 0; used + e <= d; ++e) {
      exps[static_cast<std::size_t>(var)] = e;
      rec(var + 1, used + e);
    }
    exps[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, 0);
  std::sort(monos.begin(), monos.end());
  const std::uint64_t q = f.gf().order();
  std::vector<MPoly> out;
  // Mixed-radix counter over coefficient vectors, low monomials varying fastest.
  std::vector<GFElem> digits(monos.size(), 0);
  for (;;) {
    std::vector<MPoly::Term> terms;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (digits[i]) terms.emplace_back(monos[i], digits[i]);
    out.push_back(MPoly::from_terms(f.degree(), f.nvars(), std::move(terms)));
    if (out.size() >= cap) break;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

// Solve block s so that the total value vanishes, given value R of the rest
// (as a field element) and the y coordinate of block s.
std::optional<FieldElem> solve_block_x(const ScaledBlock& blk, const FieldElem& R, const FieldElem& y) {
  const FieldElem& a = blk.block.a;
  const FieldElem& c = blk.scale;
  if (y.is_zero()) {
    FieldElem t = R / (c * a);
    if (!t.is_square()) return std::nullopt;
    return t.sqrt();
  }
  FieldElem target = a * blk.block.b + a * R / (c * y.square());
  auto z = artin_schreier_solve(target);
  if (!z) return std::nullopt;
  return y * *z / a;
}

std::optional<IsotropyResult> trivial_blocks(const QuadForm& q) {
  for (std::size_t i = 0; i < q.blocks().size(); ++i) {
    const auto& blk = q.blocks()[i];
    if (blk.block.a.is_zero() || blk.block.b.is_zero()) {
      Vec v = zero_vector(q);
      v[2 * i + (blk.block.a.is_zero() ? 0 : 1)] = q.field()->one();
      return found(q, std::move(v), "zero_entry");
    }
  }
  return std::nullopt;
}

std::optional<IsotropyResult> square_ratio(const QuadForm& q) {
  std::vector<FieldElem> diag;
  for (const auto& blk : q.blocks()) {
    diag.push_back(blk.scale * blk.block.a);
    diag.push_back(blk.scale * blk.block.b);
  }
  for (std::size_t j = 0; j < diag.size(); ++j) {
    for (std::size_t k = j + 1; k < diag.size(); ++k) {
      if (j / 2 == k / 2) continue;
      FieldElem r = diag[k] / diag[j];
      if (!r.is_square()) continue;
      Vec v = zero_vector(q);
      v[j] = r.sqrt();
      v[k] = q.field()->one();
      return found(q, std::move(v), "square_ratio");
    }
  }
  return std::nullopt;
}

std::optional<IsotropyResult> zero_one_vectors(const QuadForm& q, const PolyView& pv) {
  const std::size_t n = static_cast<std::size_t>(q.dim());
  const MPoly one = q.field()->poly_one();
  const MPoly zero = q.field()->poly_zero();
  std::vector<MPoly> v(n, zero);
  auto test = [&]() -> bool { return pv.value(v).is_zero(); };
  if (n <= 12) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? one : zero;
      if (test()) return found(q, to_vec(q, v), "zero_one");
    }
    return std::nullopt;
  }
  // Weight at most three.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        std::fill(v.begin(), v.end(), zero);
        v[i] = one;
        v[j] = v[j].is_zero() ? one : zero;
        if (k != j) v[k] = v[k].is_zero() ? one : zero;
        if (is_zero_vector(to_vec(q, v))) continue;
        if (test()) return found(q, to_vec(q, v), "zero_one");
      }
    }
  }
  return std::nullopt;
}

// Coordinates outside block s plus y_s from pool, block s solved exactly.
// A candidate whose arithmetic exceeds the degree cap counts as a miss.
std::optional<IsotropyResult> solve_with(const QuadForm& q, const PolyView& pv, std::size_t s, const std::vector<MPoly>& coords, const MPoly& ys) try {
  std::vector<MPoly> v = coords;
  v[2 * s] = q.field()->poly_zero();
  v[2 * s + 1] = ys;
  MPoly rest = pv.value(v, s);
  FieldElem R = q.field()->fraction(rest, pv.D);
  FieldElem y = q.field()->from_poly(ys);
  auto x = solve_block_x(q.blocks()[s], R, y);
  if (!x) return std::nullopt;
  Vec out = to_vec(q, v);
  out[2 * s] = *x;
  if (is_zero_vector(out)) return std::nullopt;
  return found(q, std::move(out), "solve_block");
} catch (const std::overflow_error&) {
  return std::nullopt;
}

std::optional<IsotropyResult> enumerate_solve(const QuadForm& q, const PolyView& pv, const SearchBudget& budget) {
  const std::size_t nb = q.blocks().size();
  const std::size_t free = 2 * nb - 1;  // all coordinates except x_s
  std::uint64_t cap = budget.exhaustive_limit;
  auto pool = small_elements(*q.field(), budget.degree_bound, 1u << 12);
  // Grow the pool level by level: first combos with entries < L, L = 2, 3, ...
  std::uint64_t spent = 0;
  for (std::size_t L = 2; L <= pool.size(); ++L) {
    std::uint64_t combos = 1;
    bool overflow = false;
    for (std::size_t i = 0; i < free; ++i) {
      if (combos > cap / L + 1) {
        overflow = true;
        break;
      }
      combos *= L;
    }
    if (overflow || spent + combos * nb > cap) return std::nullopt;
    std::vector<std::size_t> idx(free, 0);
    for (;;) {
      bool has_top = false;
      for (auto i : idx) has_top |= (i == L - 1);
      if (has_top || L == 2) {
        for (std::size_t s = nb; s-- > 0;) {
          ++spent;
          std::vector<MPoly> coords(2 * nb, q.field()->poly_zero());
          std::size_t c = 0;
          for (std::size_t j = 0; j < 2 * nb; ++j) {
            if (j == 2 * s) continue;
            coords[j] = pool[idx[c++]];
          }
          MPoly ys = coords[2 * s + 1];
          if (auto r = solve_with(q, pv, s, coords, ys)) return r;
        }
      }
      std::size_t i = 0;
      while (i < free && ++idx[i] == L) idx[i++] = 0;
      if (i == free) break;
    }
  }
  return std::nullopt;
}

std::optional<IsotropyResult> random_solve(const QuadForm& q, const PolyView& pv, const SearchBudget& budget) {
  Rng rng(budget.seed);
  const std::size_t nb = q.blocks().size();
  for (int t = 0; t < budget.trials; ++t) {
    std::vector<MPoly> coords;
    for (std::size_t j = 0; j < 2 * nb; ++j) coords.push_back(q.field()->random_poly(rng, budget.degree_bound).num());
    std::size_t s = static_cast<std::size_t>(draw(rng, nb));
    if (auto r = solve_with(q, pv, s, coords, coords[2 * s + 1])) {
      r->method = "random";
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::yes:
      return "true";
    case Tri::no:
      return "false";
    case Tri::unknown:
      return "unknown";
  }
  return "?";
}

std::optional<Vec> binary_isotropic_vector(const ScaledBlock& blk) {
  const FieldPtr& f = blk.scale.field();
  const FieldElem& a = blk.block.a;
  const FieldElem& b = blk.block.b;
  if (a.is_zero()) return Vec{f->one(), f->zero()};
  if (b.is_zero()) return Vec{f->zero(), f->one()};
  auto l = artin_schreier_solve(a * b);
  if (!l) return std::nullopt;
  return Vec{*l / a, f->one()};
}

IsotropyResult isotropic_vector(const QuadForm& q, const SearchBudget& budget) {
  if (q.empty()) {
    IsotropyResult r;
    r.status = IsotropyResult::Status::ProvablyAnisotropic;
    r.cert = find_aniso_cert(q);
    r.method = "empty";
    return r;
  }
  if (auto r = trivial_blocks(q)) return *r;
  if (q.dim() == 2) {
    if (auto v = binary_isotropic_vector(q.blocks().front())) return found(q, *v, "binary_exact");
    IsotropyResult r;
    r.status = IsotropyResult::Status::ProvablyAnisotropic;
    r.cert = find_aniso_cert(q);
    r.method = "binary_exact";
    if (!r.cert) throw std::logic_error("binary anisotropy without certificate");
    return r;
  }
  if (q.field()->is_finite()) {
    // c1 a1 x1^2 + c2 b2 y2^2 = 0 has a solution since squaring is onto.
    const auto& b1 = q.blocks()[0];
    const auto& b2 = q.blocks()[1];
    Vec v = zero_vector(q);
    v[0] = (b2.scale * b2.block.b / (b1.scale * b1.block.a)).sqrt();
    v[3] = q.field()->one();
    return found(q, std::move(v), "finite_field");
  }
  if (auto r = square_ratio(q)) return *r;
  PolyView pv(q);
  if (auto r = zero_one_vectors(q, pv)) return *r;
  CertSearchLimits limits;
  limits.max_attempts = budget.cert_attempts;
  if (auto cert = find_aniso_cert(q, limits)) {
    IsotropyResult r;
    r.status = IsotropyResult::Status::ProvablyAnisotropic;
    r.cert = std::move(cert);
    r.method = "residue_certificate";
    return r;
  }
  if (auto r = enumerate_solve(q, pv, budget)) return *r;
  if (auto r = random_solve(q, pv, budget)) return *r;
  IsotropyResult r;
  r.method = "budget_exhausted";
  return r;
}

}  // namespace pfister
