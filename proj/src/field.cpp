#include "pfister/field.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace pfister {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

std::string read_ident(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && is_ident_char(s[pos])) ++pos;
  return std::string(s.substr(start, pos - start));
}

long read_int(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  long v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    if (v > 1000000) throw ParseError(start, "integer too large");
    ++pos;
  }
  if (pos == start) throw ParseError(start, "expected integer");
  return v;
}

class ExprParser {
 public:
  ExprParser(const Field& field, std::string_view text) : field_(field), s_(text) {}

  FieldElem parse() {
    FieldElem v = expr();
    skip_ws(s_, pos_);
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  FieldElem expr() {
    FieldElem v = term();
    for (;;) {
      skip_ws(s_, pos_);
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        ++pos_;
        v += term();
      } else {
        return v;
      }
    }
  }

  FieldElem term() {
    FieldElem v = factor();
    for (;;) {
      skip_ws(s_, pos_);
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        v *= factor();
      } else if (pos_ < s_.size() && s_[pos_] == '/') {
        std::size_t at = ++pos_;
        FieldElem d = factor();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  FieldElem factor() {
    skip_ws(s_, pos_);
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return factor();
    }
    FieldElem base = primary();
    skip_ws(s_, pos_);
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws(s_, pos_);
      bool negative = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      std::size_t at = pos_;
      long e = read_int(s_, pos_);
      if (e > 4096) throw ParseError(at, "exponent too large");
      if (negative && base.is_zero()) throw ParseError(at, "division by zero");
      return base.pow(negative ? -static_cast<int>(e) : static_cast<int>(e));
    }
    return base;
  }

  FieldElem primary() {
    skip_ws(s_, pos_);
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElem v = expr();
      skip_ws(s_, pos_);
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = read_int(s_, pos_);
      return (v % 2) ? field_.one() : field_.zero();
    }
    if (is_ident_start(c)) {
      std::size_t at = pos_;
      std::string name = read_ident(s_, pos_);
      if (name == "g") return field_.generator();
      int idx = field_.var_index(name);
      if (idx < 0) throw ParseError(at, "unknown variable '" + name + "'");
      return field_.var(idx);
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  const Field& field_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string coeff_factor(const GF2k& gf, GFElem c) {
  std::string s = gf.to_string(c);
  if (s.find('+') != std::string::npos) return "(" + s + ")";
  return s;
}

std::string poly_to_string(const Field& f, const MPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (int v = 0; v < f.nvars(); ++v) {
      int e = m.exponent(v);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += f.var_name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += f.gf().to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += coeff_factor(f.gf(), c) + "*" + mono;
    }
  }
  return out;
}

bool is_bare_power(const MPoly& p) {
  if (p.size() != 1 || p.leading_coeff() != 1) return false;
  Monomial m = p.leading().first;
  int used = 0;
  for (int v = 0; v < p.nvars(); ++v) used += m.exponent(v) > 0;
  return used == 1;
}

void collect_monomials(int nvars, int max_degree, int var, std::vector<int>& exps, std::vector<Monomial>& out) {
  if (var == nvars) {
    out.push_back(Monomial::from_exponents(exps));
    return;
  }
  int used = 0;
  for (int v = 0; v < var; ++v) used += exps[static_cast<std::size_t>(v)];
  for (int e = 0; used + e <= max_degree; ++e) {
    exps[static_cast<std::size_t>(var)] = e;
    collect_monomials(nvars, max_degree, var + 1, exps, out);
  }
  exps[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

FieldPtr Field::make(int k, std::vector<std::string> vars) {
  if (k < 1 || k > GF2k::kMaxDegree) throw std::invalid_argument("field: k must be in [1,16]");
  if (vars.size() > static_cast<std::size_t>(Monomial::kMaxVars))
    throw std::invalid_argument("field: at most 7 variables are supported");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string& v = vars[i];
    if (v.empty() || !is_ident_start(v[0]) || !std::all_of(v.begin(), v.end(), is_ident_char))
      throw std::invalid_argument("field: invalid variable name '" + v + "'");
    if (v == "g") throw std::invalid_argument("field: 'g' is reserved for the generator");
    if (std::find(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(i), v) != vars.begin() + static_cast<std::ptrdiff_t>(i))
      throw std::invalid_argument("field: duplicate variable '" + v + "'");
  }
  GF2k::get(k);
  return FieldPtr(new Field(k, std::move(vars)));
}

FieldPtr Field::parse(std::string_view decl) {
  std::size_t pos = 0;
  skip_ws(decl, pos);
  if (decl.substr(pos, 2) != "F2") throw ParseError(pos, "field declaration must start with 'F2'");
  pos += 2;
  int k = 1;
  skip_ws(decl, pos);
  if (pos < decl.size() && decl[pos] == '^') {
    ++pos;
    skip_ws(decl, pos);
    std::size_t at = pos;
    long e = read_int(decl, pos);
    if (e < 1 || e > GF2k::kMaxDegree) throw ParseError(at, "extension degree must be in [1,16]");
    k = static_cast<int>(e);
  }
  std::vector<std::string> vars;
  skip_ws(decl, pos);
  if (pos < decl.size() && decl[pos] == '(') {
    ++pos;
    for (;;) {
      skip_ws(decl, pos);
      std::size_t at = pos;
      if (pos >= decl.size() || !is_ident_start(decl[pos])) throw ParseError(at, "expected variable name");
      std::string name = read_ident(decl, pos);
      if (name == "g") throw ParseError(at, "'g' is reserved for the generator");
      if (std::find(vars.begin(), vars.end(), name) != vars.end()) throw ParseError(at, "duplicate variable '" + name + "'");
      vars.push_back(name);
      skip_ws(decl, pos);
      if (pos < decl.size() && decl[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < decl.size() && decl[pos] == ')') {
        ++pos;
        break;
      }
      throw ParseError(pos, "expected ',' or ')'");
    }
  }
  skip_ws(decl, pos);
  if (pos != decl.size()) throw ParseError(pos, "trailing characters in field declaration");
  if (vars.size() > static_cast<std::size_t>(Monomial::kMaxVars)) throw ParseError(0, "at most 7 variables are supported");
  return make(k, std::move(vars));
}

int Field::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string Field::to_string() const {
  std::string s = "F2";
  if (k_ > 1) s += "^" + std::to_string(k_);
  if (!vars_.empty()) {
    s += "(";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (i) s += ",";
      s += vars_[i];
    }
    s += ")";
  }
  return s;
}

FieldElem Field::zero() const { return FieldElem(shared_from_this(), poly_zero(), poly_one()); }
FieldElem Field::one() const { return FieldElem(shared_from_this(), poly_one(), poly_one()); }
FieldElem Field::constant(GFElem c) const {
  if (!gf().contains(c)) throw std::out_of_range("field: constant outside F_2^k");
  return FieldElem(shared_from_this(), MPoly::constant(k_, nvars(), c), poly_one());
}
FieldElem Field::generator() const { return constant(k_ == 1 ? 1u : 2u); }
FieldElem Field::var(int i) const {
  if (i < 0 || i >= nvars()) throw std::out_of_range("field: variable index");
  return FieldElem(shared_from_this(), MPoly::variable(k_, nvars(), i), poly_one());
}
FieldElem Field::var(std::string_view name) const {
  int i = var_index(name);
  if (i < 0) throw std::invalid_argument("field: unknown variable '" + std::string(name) + "'");
  return var(i);
}
FieldElem Field::from_poly(MPoly p) const { return FieldElem(shared_from_this(), std::move(p), poly_one()); }
FieldElem Field::fraction(MPoly num, MPoly den) const { return FieldElem(shared_from_this(), std::move(num), std::move(den)); }
FieldElem Field::parse_elem(std::string_view text) const { return ExprParser(*this, text).parse(); }

FieldElem Field::random_poly(Rng& rng, int max_degree) const {
  std::vector<Monomial> monos;
  std::vector<int> exps(static_cast<std::size_t>(nvars()), 0);
  collect_monomials(nvars(), std::max(max_degree, 0), 0, exps, monos);
  std::vector<MPoly::Term> terms;
  for (Monomial m : monos) {
    auto c = static_cast<GFElem>(draw(rng, gf().order()));
    if (c) terms.emplace_back(m, c);
  }
  return from_poly(MPoly::from_terms(k_, nvars(), std::move(terms)));
}

FieldElem Field::random_nonzero_poly(Rng& rng, int max_degree) const {
  for (;;) {
    FieldElem x = random_poly(rng, max_degree);
    if (!x.is_zero()) return x;
  }
}

std::vector<FieldElem> Field::enumerate() const {
  if (!is_finite()) throw std::logic_error("field: enumerate needs a finite field");
  std::vector<FieldElem> out;
  out.reserve(gf().order());
  for (GFElem c = 0; c < gf().order(); ++c) out.push_back(constant(c));
  return out;
}

FieldElem::FieldElem(FieldPtr field, MPoly num, MPoly den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    den_ = field_->poly_one();
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  GFElem lc = den_.leading_coeff();
  if (lc != 1) {
    GFElem il = field_->gf().inv(lc);
    num_ = num_.scaled(il);
    den_ = den_.scaled(il);
  }
}

void FieldElem::check_same_field(const FieldElem& o) const {
  if (field_ != o.field_ && !(*field_ == *o.field_)) throw std::invalid_argument("field mismatch: " + field_->to_string() + " vs " + o.field_->to_string());
}

GFElem FieldElem::constant_value() const {
  if (!is_constant()) throw std::domain_error("element is not constant: " + to_string());
  return num_.constant_term();
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same_field(o);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) {
    // Shared denominator: only a common factor of the new numerator and den can appear.
    return FieldElem(field_, num_ + o.num_, den_);
  }
  if (den_.is_one()) return FieldElem(field_, num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return FieldElem(field_, num_ + o.num_ * den_, den_);
  MPoly g = gcd(den_, o.den_);
  MPoly b = den_.exact_div(g);
  MPoly d = o.den_.exact_div(g);
  return FieldElem(field_, num_ * d + o.num_ * b, g * b * d);
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same_field(o);
  if (is_zero() || o.is_zero()) return field_->zero();
  if (den_.is_one() && o.den_.is_one()) return FieldElem(field_, num_ * o.num_, den_);
  MPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_one()) {
    MPoly g = gcd(a, d);
    if (!g.is_one()) {
      a = a.exact_div(g);
      d = d.exact_div(g);
    }
  }
  if (!b.is_one()) {
    MPoly g = gcd(c, b);
    if (!g.is_one()) {
      c = c.exact_div(g);
      b = b.exact_div(g);
    }
  }
  FieldElem r(field_, field_->poly_one(), field_->poly_one());
  r.num_ = a * c;
  r.den_ = b * d;
  GFElem lc = r.den_.leading_coeff();
  if (lc != 1) {
    GFElem il = field_->gf().inv(lc);
    r.num_ = r.num_.scaled(il);
    r.den_ = r.den_.scaled(il);
  }
  return r;
}

FieldElem FieldElem::inv() const {
  if (is_zero()) throw DivisionByZero();
  FieldElem r(field_, field_->poly_one(), field_->poly_one());
  GFElem il = field_->gf().inv(num_.leading_coeff());
  r.num_ = den_.scaled(il);
  r.den_ = num_.scaled(il);
  return r;
}

FieldElem FieldElem::square() const {
  FieldElem r = *this;
  r.num_ = num_.square();
  r.den_ = den_.square();
  return r;
}

FieldElem FieldElem::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  FieldElem r = field_->one();
  FieldElem b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = b.square();
  }
  return r;
}

bool FieldElem::is_square() const { return num_.is_square() && den_.is_square(); }

FieldElem FieldElem::sqrt() const {
  if (!is_square()) throw std::domain_error("element is not a square: " + to_string());
  FieldElem r = *this;
  r.num_ = num_.sqrt();
  r.den_ = den_.sqrt();
  return r;
}

std::string FieldElem::to_string() const {
  std::string n = poly_to_string(*field_, num_);
  if (den_.is_one()) return n;
  if (num_.size() > 1 || n.find_first_of("+*") != std::string::npos) n = "(" + n + ")";
  std::string d = poly_to_string(*field_, den_);
  if (!is_bare_power(den_)) d = "(" + d + ")";
  return n + "/" + d;
}

int FieldElem::height() const { return std::max(num_.total_degree(), den_.total_degree()); }

EtaleElem EtaleElem::operator*(const EtaleElem& o) const {
  FieldElem yy = y * o.y;
  return {a, x * o.x + a * yy, x * o.y + o.x * y + yy};
}

EtaleElem EtaleElem::inv() const {
  FieldElem n = norm_sep(a, *this);
  if (n.is_zero()) throw DivisionByZero();
  FieldElem ni = n.inv();
  // conjugate of x + y theta is (x + y) + y theta
  return {a, (x + y) * ni, y * ni};
}

FieldElem norm_sep(const FieldElem& a, const EtaleElem& alpha) {
  if (!(alpha.a == a)) throw std::invalid_argument("norm_sep: element lives over a different base");
  return alpha.x.square() + alpha.x * alpha.y + a * alpha.y.square();
}

FieldElem norm_insep(const FieldElem& b, const FieldElem& x, const FieldElem& y) {
  if (b.is_zero()) throw std::invalid_argument("norm_insep: b must be nonzero");
  return x.square() + b * y.square();
}

FieldElem evaluate(const MPoly& p, const FieldPtr& target, const std::vector<FieldElem>& values) {
  if (p.field_degree() != target->degree()) throw std::invalid_argument("evaluate: coefficient fields differ");
  if (static_cast<int>(values.size()) != p.nvars()) throw std::invalid_argument("evaluate: wrong number of values");
  std::vector<std::vector<FieldElem>> powers(values.size(), std::vector<FieldElem>{target->one()});
  FieldElem acc = target->zero();
  for (const auto& [m, c] : p.terms()) {
    FieldElem t = target->constant(c);
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto e = static_cast<std::size_t>(m.exponent(static_cast<int>(i)));
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(pw.back() * values[i]);
      if (e > 0) t *= pw[e];
    }
    acc += t;
  }
  return acc;
}

FieldElem specialize(const FieldElem& x, const FieldPtr& target, const std::vector<FieldElem>& values) {
  FieldElem den = evaluate(x.den(), target, values);
  if (den.is_zero()) throw DivisionByZero();
  return evaluate(x.num(), target, values) / den;
}

}  // namespace pfister
