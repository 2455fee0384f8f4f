#include <algorithm>
#include <map>

#include "pfister/field.hpp"

namespace pfister {

namespace {

// Dense F_2 matrix with one extra column for the right-hand side.
class Gf2System {
 public:
  Gf2System(std::size_t rows, std::size_t cols) : cols_(cols), words_((cols + 1 + 63) / 64), data_(rows, std::vector<std::uint64_t>(words_, 0)) {}

  void flip(std::size_t r, std::size_t c) { data_[r][c / 64] ^= std::uint64_t{1} << (c % 64); }
  void flip_rhs(std::size_t r) { flip(r, cols_); }

  // Particular solution with free variables set to zero.
  std::optional<std::vector<bool>> solve() {
    const std::size_t rows = data_.size();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows; ++c) {
      const std::size_t w = c / 64;
      const std::uint64_t bit = std::uint64_t{1} << (c % 64);
      std::size_t p = rank;
      while (p < rows && !(data_[p][w] & bit)) ++p;
      if (p == rows) continue;
      std::swap(data_[p], data_[rank]);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r != rank && (data_[r][w] & bit)) {
          for (std::size_t i = w; i < words_; ++i) data_[r][i] ^= data_[rank][i];
        }
      }
      pivot_col.push_back(c);
      ++rank;
    }
    const std::size_t rw = cols_ / 64;
    const std::uint64_t rbit = std::uint64_t{1} << (cols_ % 64);
    for (std::size_t r = rank; r < rows; ++r)
      if (data_[r][rw] & rbit) return std::nullopt;
    std::vector<bool> x(cols_, false);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = (data_[r][rw] & rbit) != 0;
    return x;
  }

 private:
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> data_;
};

void bounded_monomials(const std::vector<int>& per_var, int total, int var, std::vector<int>& exps, int used,
                       std::vector<Monomial>& out) {
  if (var == static_cast<int>(per_var.size())) {
    out.push_back(Monomial::from_exponents(exps));
    return;
  }
  for (int e = 0; e <= per_var[static_cast<std::size_t>(var)] && used + e <= total; ++e) {
    exps[static_cast<std::size_t>(var)] = e;
    bounded_monomials(per_var, total, var + 1, exps, used + e, out);
  }
  exps[static_cast<std::size_t>(var)] = 0;
}

GFElem coefficient_at(const MPoly& p, Monomial m) {
  for (const auto& [mm, c] : p.terms())
    if (mm == m) return c;
  return 0;
}

}  // namespace

std::optional<FieldElem> artin_schreier_solve(const FieldElem& a) {
  const Field& field = *a.field();
  const GF2k& gf = field.gf();
  if (a.is_zero()) return field.zero();
  if (a.is_constant()) {
    auto l = gf.solve_artin_schreier(a.constant_value());
    if (!l) return std::nullopt;
    return field.constant(*l);
  }
  // lambda = n/e in lowest terms forces den(a) = e^2 and n^2 + e n = num(a).
  if (!a.den().is_square()) return std::nullopt;
  const MPoly e = a.den().sqrt();
  const MPoly& target = a.num();
  const int nv = field.nvars();
  const int k = field.degree();

  int total = std::max(target.total_degree() / 2, e.total_degree());
  std::vector<int> per_var(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) per_var[static_cast<std::size_t>(v)] = std::max(target.degree_in(v) / 2, e.degree_in(v));
  std::vector<Monomial> unknowns;
  std::vector<int> exps(static_cast<std::size_t>(nv), 0);
  bounded_monomials(per_var, total, 0, exps, 0, unknowns);

  // Image of each basis vector g^i * m under n -> n^2 + e n.
  std::vector<MPoly> images;
  images.reserve(unknowns.size() * static_cast<std::size_t>(k));
  std::map<Monomial, std::size_t> row_of;
  for (Monomial m : unknowns) {
    for (int i = 0; i < k; ++i) {
      GFElem c = GFElem{1} << i;
      MPoly basis = MPoly::from_terms(k, nv, {{m, c}});
      MPoly img = basis.square() + e * basis;
      for (const auto& term : img.terms()) row_of.emplace(term.first, 0);
      images.push_back(std::move(img));
    }
  }
  for (const auto& term : target.terms()) {
    if (!row_of.count(term.first)) return std::nullopt;
  }
  std::size_t next = 0;
  for (auto& [m, idx] : row_of) idx = next++;

  const std::size_t cols = images.size();
  Gf2System sys(row_of.size() * static_cast<std::size_t>(k), cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& [m, c] : images[j].terms()) {
      std::size_t base = row_of[m] * static_cast<std::size_t>(k);
      for (int i = 0; i < k; ++i)
        if (c & (GFElem{1} << i)) sys.flip(base + static_cast<std::size_t>(i), j);
    }
  }
  for (const auto& [m, c] : target.terms()) {
    std::size_t base = row_of[m] * static_cast<std::size_t>(k);
    for (int i = 0; i < k; ++i)
      if (c & (GFElem{1} << i)) sys.flip_rhs(base + static_cast<std::size_t>(i));
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;

  std::vector<MPoly::Term> terms;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    GFElem c = 0;
    for (int i = 0; i < k; ++i)
      if ((*sol)[u * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)]) c |= GFElem{1} << i;
    if (c) terms.emplace_back(unknowns[u], c);
  }
  MPoly n = MPoly::from_terms(k, nv, std::move(terms));
  if (coefficient_at(n, e.leading().first) & 1u) n = n + e;
  FieldElem lambda = field.fraction(n, e);
  if (!(lambda.wp() == a)) throw std::logic_error("artin_schreier_solve: internal verification failed");
  return lambda;
}

WpReduced wp_reduce(const FieldElem& a) {
  const FieldPtr& F = a.field();
  auto [q, r] = a.num().divmod(a.den());
  MPoly shift = F->poly_zero();
  for (;;) {
    const MPoly::Term* hit = nullptr;
    for (const auto& t : q.terms())
      if (!t.first.is_one() && t.first.all_even()) {
        hit = &t;
        break;
      }
    if (!hit) break;
    // c m^2 = wp(sqrt(c) m) + sqrt(c) m
    MPoly s = MPoly::from_terms(F->degree(), F->nvars(), {{hit->first.halved(), q.gf().sqrt(hit->second)}});
    shift += s;
    q += s.square() + s;
  }
  FieldElem sh = F->from_poly(shift);
  return {F->from_poly(q) + F->fraction(r, a.den()), sh};
}

}  // namespace pfister
