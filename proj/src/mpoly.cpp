#include "pfister/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace pfister {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(int index, int exponent) {
  if (index < 0 || index >= kMaxVars) throw std::out_of_range("monomial: variable index");
  if (exponent < 0 || exponent > kMaxDegree) throw std::overflow_error("monomial: exponent out of range");
  auto e = static_cast<std::uint64_t>(exponent);
  return Monomial((e << 56) | (e << shift(index)));
}

Monomial Monomial::from_exponents(std::span<const int> exps) {
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] != 0) m = m * variable(static_cast<int>(i), exps[i]);
  }
  return m;
}

bool Monomial::divides(Monomial other) const {
  for (int v = 0; v < kMaxVars; ++v) {
    if (exponent(v) > other.exponent(v)) return false;
  }
  return true;
}

bool Monomial::all_even() const {
  for (int v = 0; v < kMaxVars; ++v) {
    if (exponent(v) & 1) return false;
  }
  return true;
}

Monomial Monomial::operator*(Monomial other) const {
  if (total_degree() + other.total_degree() > kMaxDegree) throw std::overflow_error("monomial: degree overflow");
  return Monomial(bits_ + other.bits_);
}

Monomial Monomial::operator/(Monomial other) const {
  if (!other.divides(*this)) throw std::domain_error("monomial: not divisible");
  return Monomial(bits_ - other.bits_);
}

Monomial Monomial::halved() const {
  Monomial m;
  for (int v = 0; v < kMaxVars; ++v) {
    if (exponent(v)) m = m * variable(v, exponent(v) / 2);
  }
  return m;
}

Monomial Monomial::without(int var) const { return with_exponent(var, 0); }

Monomial Monomial::with_exponent(int var, int e) const {
  int old = exponent(var);
  std::uint64_t b = bits_;
  b -= static_cast<std::uint64_t>(old) << shift(var);
  b -= static_cast<std::uint64_t>(old) << 56;
  Monomial m(b);
  return e == 0 ? m : m * variable(var, e);
}

// ---------------------------------------------------------------------------
// MPoly

MPoly::MPoly(int field_degree, int nvars) : gf_(&GF2k::get(field_degree)), nvars_(nvars) {
  if (nvars < 0 || nvars > Monomial::kMaxVars) throw std::out_of_range("polynomial: too many variables");
}

MPoly MPoly::constant(int field_degree, int nvars, GFElem c) {
  MPoly p(field_degree, nvars);
  if (!p.gf_->contains(c)) throw std::out_of_range("polynomial: coefficient outside field");
  if (c != 0) p.terms_.emplace_back(Monomial(), c);
  return p;
}

MPoly MPoly::variable(int field_degree, int nvars, int var) {
  MPoly p(field_degree, nvars);
  if (var < 0 || var >= nvars) throw std::out_of_range("polynomial: variable index");
  p.terms_.emplace_back(Monomial::variable(var), 1);
  return p;
}

std::vector<MPoly::Term> MPoly::combine(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  std::vector<Term> out;
  out.reserve(raw.size());
  for (const auto& t : raw) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second ^= t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.second != 0) {
      out.push_back(t);
    }
  }
  return out;
}

MPoly MPoly::from_terms(int field_degree, int nvars, std::vector<Term> terms) {
  MPoly p(field_degree, nvars);
  for (const auto& [m, c] : terms) {
    if (!p.gf_->contains(c)) throw std::out_of_range("polynomial: coefficient outside field");
    for (int v = nvars; v < Monomial::kMaxVars; ++v) {
      if (m.exponent(v) != 0) throw std::out_of_range("polynomial: exponent for undeclared variable");
    }
  }
  p.terms_ = combine(std::move(terms));
  return p;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (gf_ != o.gf_ || nvars_ != o.nvars_) throw std::invalid_argument("polynomial: incompatible rings");
}

GFElem MPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

int MPoly::total_degree() const { return terms_.empty() ? -1 : terms_.front().first.total_degree(); }

int MPoly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.first.exponent(var));
  return d;
}

int MPoly::min_degree_in(int var) const {
  if (terms_.empty()) return -1;
  int d = Monomial::kMaxDegree;
  for (const auto& t : terms_) d = std::min(d, t.first.exponent(var));
  return d;
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  MPoly r(gf_->degree(), nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    if (i->first > j->first) {
      r.terms_.push_back(*i++);
    } else if (j->first > i->first) {
      r.terms_.push_back(*j++);
    } else {
      GFElem c = i->second ^ j->second;
      if (c) r.terms_.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, terms_.end());
  r.terms_.insert(r.terms_.end(), j, o.terms_.end());
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  MPoly r(gf_->degree(), nvars_);
  if (is_zero() || o.is_zero()) return r;
  if (o.is_constant()) return scaled(o.leading_coeff());
  if (is_constant()) return o.scaled(leading_coeff());
  std::vector<Term> raw;
  raw.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) raw.emplace_back(ma * mb, gf_->mul(ca, cb));
  }
  r.terms_ = combine(std::move(raw));
  return r;
}

MPoly MPoly::scaled(GFElem c) const {
  MPoly r(gf_->degree(), nvars_);
  if (c == 0) return r;
  r.terms_ = terms_;
  if (c != 1) {
    for (auto& t : r.terms_) t.second = gf_->mul(t.second, c);
  }
  return r;
}

MPoly MPoly::times_monomial(Monomial m) const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.first = t.first * m;
  return r;
}

MPoly MPoly::square() const {
  // Frobenius: cross terms vanish in characteristic 2.
  MPoly r(gf_->degree(), nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) r.terms_.emplace_back(m * m, gf_->square(c));
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant(gf_->degree(), nvars_, 1);
  MPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base.square();
  }
  return result;
}

std::pair<MPoly, MPoly> MPoly::divmod(const MPoly& d) const {
  check_compatible(d);
  if (d.is_zero()) throw DivisionByZero();
  MPoly q(gf_->degree(), nvars_);
  MPoly rem(gf_->degree(), nvars_);
  MPoly p = *this;
  const auto [dm, dc] = d.leading();
  const GFElem dinv = gf_->inv(dc);
  std::vector<Term> qraw;
  std::vector<Term> rraw;
  while (!p.is_zero()) {
    const auto [pm, pc] = p.leading();
    if (dm.divides(pm)) {
      Monomial qm = pm / dm;
      GFElem qc = gf_->mul(pc, dinv);
      qraw.emplace_back(qm, qc);
      MPoly t = d.times_monomial(qm).scaled(qc);
      p = p + t;
    } else {
      rraw.push_back(p.terms_.front());
      p.terms_.erase(p.terms_.begin());
    }
  }
  q.terms_ = combine(std::move(qraw));
  rem.terms_ = combine(std::move(rraw));
  return {std::move(q), std::move(rem)};
}

MPoly MPoly::exact_div(const MPoly& d) const {
  if (d.is_constant()) {
    if (d.is_zero()) throw DivisionByZero();
    return scaled(gf_->inv(d.leading_coeff()));
  }
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw std::domain_error("polynomial: inexact division");
  return q;
}

bool MPoly::divisible_by(const MPoly& d) const {
  if (d.is_zero()) throw DivisionByZero();
  if (d.is_constant() || is_zero()) return true;
  if (total_degree() < d.total_degree()) return false;
  return divmod(d).second.is_zero();
}

MPoly MPoly::monic() const {
  if (is_zero() || leading_coeff() == 1) return *this;
  return scaled(gf_->inv(leading_coeff()));
}

std::vector<MPoly> MPoly::coefficients_in(int var) const {
  int d = degree_in(var);
  std::vector<MPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)), MPoly(gf_->degree(), nvars_));
  std::vector<std::vector<Term>> raw(out.size());
  for (const auto& [m, c] : terms_) raw[static_cast<std::size_t>(m.exponent(var))].emplace_back(m.without(var), c);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].terms_ = combine(std::move(raw[i]));
  return out;
}

MPoly MPoly::from_coefficients_in(int var, const std::vector<MPoly>& coeffs, int field_degree, int nvars) {
  std::vector<Term> raw;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial shift = i == 0 ? Monomial() : Monomial::variable(var, static_cast<int>(i));
    for (const auto& [m, c] : coeffs[i].terms_) raw.emplace_back(m * shift, c);
  }
  return from_terms(field_degree, nvars, std::move(raw));
}

MPoly MPoly::substitute(int var, GFElem c) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [m, coef] : terms_) {
    int e = m.exponent(var);
    GFElem f = e == 0 ? coef : gf_->mul(coef, gf_->pow(c, static_cast<std::uint64_t>(e)));
    if (f) raw.emplace_back(m.without(var), f);
  }
  MPoly r(gf_->degree(), nvars_);
  r.terms_ = combine(std::move(raw));
  return r;
}

MPoly MPoly::substitute(int var, const MPoly& p) const {
  check_compatible(p);
  auto coeffs = coefficients_in(var);
  MPoly acc(gf_->degree(), nvars_);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * p + *it;
  return acc;
}

MPoly MPoly::drop_variable(int var) const {
  MPoly r(gf_->degree(), nvars_ - 1);
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    if (m.exponent(var) != 0) throw std::logic_error("polynomial: dropping a used variable");
    std::vector<int> e;
    for (int v = 0; v < nvars_; ++v) {
      if (v != var) e.push_back(m.exponent(v));
    }
    raw.emplace_back(Monomial::from_exponents(e), c);
  }
  r.terms_ = combine(std::move(raw));
  return r;
}

MPoly MPoly::embedded(const GFEmbedding& emb) const {
  if (emb.from_degree() != gf_->degree()) throw std::invalid_argument("polynomial: embedding source mismatch");
  MPoly r(emb.to_degree(), nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, emb(c));
  return r;
}

MPoly MPoly::widened(int nvars) const {
  if (nvars < nvars_) throw std::invalid_argument("polynomial: cannot narrow");
  MPoly r(gf_->degree(), nvars);
  r.terms_ = terms_;
  return r;
}

bool MPoly::is_square() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.all_even(); });
}

MPoly MPoly::sqrt() const {
  if (!is_square()) throw std::domain_error("polynomial: not a square");
  MPoly r(gf_->degree(), nvars_);
  std::vector<Term> raw;
  for (const auto& [m, c] : terms_) raw.emplace_back(m.halved(), gf_->sqrt(c));
  r.terms_ = combine(std::move(raw));
  return r;
}

// ---------------------------------------------------------------------------
// gcd by recursive primitive remainder sequences

namespace {

int first_used_var(const MPoly& a, const MPoly& b) {
  for (int v = 0; v < a.nvars(); ++v) {
    if (a.uses(v) || b.uses(v)) return v;
  }
  return -1;
}

MPoly content_in(const MPoly& p, int var) {
  MPoly g(p.field_degree(), p.nvars());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

MPoly pseudo_remainder(MPoly a, const MPoly& b, int var) {
  const int db = b.degree_in(var);
  const auto bc = b.coefficients_in(var);
  const MPoly& lcb = bc.back();
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const int da = a.degree_in(var);
    auto ac = a.coefficients_in(var);
    MPoly shift_b = b * ac.back();
    shift_b = shift_b.times_monomial(Monomial::variable(var, da - db));
    a = a * lcb + shift_b;
  }
  return a;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly::constant(a.field_degree(), a.nvars(), 1);
  if (a == b) return a.monic();
  const int v = first_used_var(a, b);
  const MPoly ca = content_in(a, v);
  const MPoly cb = content_in(b, v);
  const MPoly c = gcd(ca, cb);
  MPoly pa = a.exact_div(ca);
  MPoly pb = b.exact_div(cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  MPoly g = MPoly::constant(a.field_degree(), a.nvars(), 1);
  if (pb.degree_in(v) > 0) {
    while (true) {
      MPoly r = pseudo_remainder(pa, pb, v);
      if (r.is_zero()) {
        g = pb;
        break;
      }
      if (r.degree_in(v) == 0) break;
      pa = std::move(pb);
      pb = r.exact_div(content_in(r, v));
    }
  }
  MPoly res = c * g;
  return res.monic();
}

}  // namespace pfister
