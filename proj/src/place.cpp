#include "pfister/place.hpp"

#include <map>

namespace pfister {

namespace {

std::vector<std::string> vars_without(const Field& field, int var) {
  std::vector<std::string> out;
  for (int v = 0; v < field.nvars(); ++v)
    if (v != var) out.push_back(field.var_name(v));
  return out;
}

// Multiplicity of the place in a nonzero polynomial.
int poly_valuation(const MPoly& f, const Place& place) {
  if (place.at_infinity) return -f.degree_in(place.var);
  if (place.poly.size() == 1) return f.min_degree_in(place.var);
  int v = 0;
  MPoly cur = f;
  for (;;) {
    auto [q, r] = cur.divmod(place.poly);
    if (!r.is_zero()) return v;
    cur = std::move(q);
    ++v;
  }
}

MPoly strip_place(const MPoly& f, const Place& place, int count) {
  if (count == 0) return f;
  if (place.poly.size() == 1) {
    std::vector<MPoly::Term> terms;
    for (const auto& [m, c] : f.terms()) terms.emplace_back(m.with_exponent(place.var, m.exponent(place.var) - count), c);
    return MPoly::from_terms(f.field_degree(), f.nvars(), std::move(terms));
  }
  return f.exact_div(place.poly.pow(static_cast<unsigned>(count)));
}

}  // namespace

std::string Place::describe(const Field& field) const {
  const std::string& t = field.var_name(var);
  if (at_infinity) return "1/" + t;
  return field.from_poly(poly).to_string();
}

Place zero_place(const Field& field, int var) {
  return Place{var, false, MPoly::variable(field.degree(), field.nvars(), var)};
}

Place infinity_place(const Field& field, int var) { return Place{var, true, field.poly_zero()}; }

Place poly_place(const Field& field, int var, MPoly p) {
  if (p.is_constant() || p.leading_coeff() != 1) throw std::invalid_argument("place: polynomial must be monic and non-constant");
  for (int v = 0; v < field.nvars(); ++v)
    if (v != var && p.uses(v)) throw std::invalid_argument("place: polynomial must be univariate");
  const int d = p.degree_in(var);
  for (const MPoly& q : univariate_irreducibles(field.degree(), field.nvars(), var, d / 2))
    if (p.divisible_by(q)) throw std::invalid_argument("place: polynomial is reducible");
  return Place{var, false, std::move(p)};
}

int valuation(const FieldElem& f, const Place& place) {
  if (f.is_zero()) throw std::invalid_argument("valuation of zero");
  return poly_valuation(f.num(), place) - poly_valuation(f.den(), place);
}

FieldElem uniformizer(const FieldPtr& field, const Place& place) {
  if (place.at_infinity) return field->var(place.var).inv();
  return field->from_poly(place.poly);
}

ResidueMap::ResidueMap(FieldPtr source, Place place) : source_(std::move(source)), place_(std::move(place)) {
  const int k = source_->degree();
  const int d = place_.degree();
  if (k * d > GF2k::kMaxDegree) throw std::invalid_argument("place: residue field exceeds F_2^16");
  target_ = Field::make(k * d, vars_without(*source_, place_.var));
  if (place_.at_infinity) return;
  if (d > 1) embed_.emplace(k, k * d);
  const GF2k& big = target_->gf();
  for (GFElem r = 0; r < big.order(); ++r) {
    GFElem acc = 0;
    for (const auto& [m, c] : place_.poly.terms()) {
      GFElem cc = embed_ ? (*embed_)(c) : c;
      acc ^= big.mul(cc, big.pow(r, static_cast<std::uint64_t>(m.exponent(place_.var))));
    }
    if (acc == 0) {
      root_ = r;
      return;
    }
  }
  throw std::invalid_argument("place: polynomial has no root in the residue field");
}

MPoly ResidueMap::reduce_poly(const MPoly& p) const {
  if (place_.at_infinity) {
    auto coeffs = p.coefficients_in(place_.var);
    return coeffs.back().drop_variable(place_.var);
  }
  MPoly q = embed_ ? p.embedded(*embed_) : p;
  return q.substitute(place_.var, root_).drop_variable(place_.var);
}

FieldElem ResidueMap::operator()(const FieldElem& f) const {
  if (!(*f.field() == *source_)) throw std::invalid_argument("residue: element from a different field");
  if (f.is_zero()) return target_->zero();
  int vn = poly_valuation(f.num(), place_);
  int vd = poly_valuation(f.den(), place_);
  if (vn < vd) throw std::domain_error("residue: element has a pole at the place");
  if (vn > vd) return target_->zero();
  if (place_.at_infinity) return target_->fraction(reduce_poly(f.num()), reduce_poly(f.den()));
  MPoly n = strip_place(f.num(), place_, vn);
  MPoly d = strip_place(f.den(), place_, vd);
  return target_->fraction(reduce_poly(n), reduce_poly(d));
}

std::pair<int, FieldElem> leading_data(const FieldElem& f, int var) {
  if (f.is_zero()) throw std::invalid_argument("leading_data: zero has no leading term");
  const FieldPtr& field = f.field();
  Place p = zero_place(*field, var);
  int v = valuation(f, p);
  FieldElem unit = f * field->var(var).pow(-v);
  return {v, ResidueMap(field, p)(unit)};
}

std::vector<MPoly> univariate_irreducibles(int field_degree, int nvars, int var, int max_degree) {
  const GF2k& gf = GF2k::get(field_degree);
  std::vector<MPoly> out;
  for (int d = 1; d <= max_degree; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= gf.order();
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<MPoly::Term> terms{{Monomial::variable(var, d), 1}};
      std::uint64_t rest = code;
      for (int i = 0; i < d; ++i) {
        auto c = static_cast<GFElem>(rest % gf.order());
        rest /= gf.order();
        if (c) terms.emplace_back(i == 0 ? Monomial() : Monomial::variable(var, i), c);
      }
      MPoly p = MPoly::from_terms(field_degree, nvars, std::move(terms));
      bool irreducible = true;
      for (const MPoly& q : out) {
        if (2 * q.degree_in(var) > d) break;
        if (p.divisible_by(q)) {
          irreducible = false;
          break;
        }
      }
      if (irreducible) out.push_back(std::move(p));
    }
  }
  return out;
}

MPoly var_content(const MPoly& p, int var) {
  if (p.is_zero()) return p;
  std::map<Monomial, std::vector<MPoly::Term>> groups;
  for (const auto& [m, c] : p.terms()) groups[m.without(var)].emplace_back(Monomial::variable(var, m.exponent(var)), c);
  MPoly g(p.field_degree(), p.nvars());
  for (auto& [rest, terms] : groups) {
    g = gcd(g, MPoly::from_terms(p.field_degree(), p.nvars(), std::move(terms)));
    if (g.is_one()) break;
  }
  return g;
}

}  // namespace pfister
