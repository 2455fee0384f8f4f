#include "pfister/descent.hpp"

#include <algorithm>
#include <stdexcept>

#include "pfister/witt.hpp"

namespace pfister {

LinkedTriple::LinkedTriple(std::vector<FieldElem> slots_, FieldElem b1_, FieldElem b2_)
    : slots(std::move(slots_)), b1(std::move(b1_)), b2(std::move(b2_)) {
  if (slots.empty()) throw std::invalid_argument("LinkedTriple: need n >= 2");
  if (b1.is_zero() || b2.is_zero()) throw std::invalid_argument("LinkedTriple: b1, b2 must be nonzero");
  if (!(*b1.field() == *b2.field())) throw std::invalid_argument("LinkedTriple: field mismatch");
  for (const auto& s : slots)
    if (!(*s.field() == *b1.field())) throw std::invalid_argument("LinkedTriple: field mismatch");
}

PfisterDesc LinkedTriple::pi() const {
  return PfisterDesc{std::vector<FieldElem>(slots.begin(), slots.end() - 1), slots.back()};
}

PfisterDesc LinkedTriple::phi(int i) const {
  if (i < 0 || i > 2) throw std::out_of_range("LinkedTriple::phi");
  PfisterDesc d = pi();
  const FieldElem b = i == 0 ? b1 : i == 1 ? b2 : b1 * b2;
  d.bilinear.insert(d.bilinear.begin(), b);
  return d;
}

PfisterDesc LinkedTriple::sigma_class() const {
  PfisterDesc d = pi();
  d.bilinear.insert(d.bilinear.begin(), {b1, b2});
  return d;
}

const char* status_name(DescentReport::Status s) {
  return s == DescentReport::Status::success ? "success" : "budget_exhausted";
}

namespace {

bool same_desc(const PfisterDesc& p, const PfisterDesc& q) {
  return p.bilinear == q.bilinear && p.as_slot == q.as_slot;
}

PfisterDesc without_slot(const PfisterDesc& d, int j) {
  PfisterDesc r = d;
  r.bilinear.erase(r.bilinear.begin() + j);
  return r;
}

PfisterDesc specialize_desc(const PfisterDesc& d, const FieldPtr& F, const std::vector<FieldElem>& g) {
  PfisterDesc r{{}, specialize(d.as_slot, F, g)};
  for (const auto& b : d.bilinear) r.bilinear.push_back(specialize(b, F, g));
  return r;
}

QSymbol specialize_symbol(const QSymbol& q, const FieldPtr& F, const std::vector<FieldElem>& g) {
  return QSymbol(specialize(q.a, F, g), specialize(q.b, F, g));
}

class DescentDiagnostic : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Generators of the descent field: constants and repeats are dropped.
class GenBuilder {
 public:
  explicit GenBuilder(FieldPtr src) : src_(std::move(src)) {}

  void add(const std::string& name, const FieldElem& v) {
    if (v.is_constant()) return;
    for (const auto& x : values_)
      if (x == v) return;
    names_.push_back(name);
    values_.push_back(v);
  }

  FieldPtr build() {
    L_ = Field::make(src_->degree(), names_);
    return L_;
  }

  FieldElem lift(const FieldElem& v) const {
    if (v.is_constant()) return L_->constant(v.constant_value());
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] == v) return L_->var(static_cast<int>(i));
    throw DescentDiagnostic("descent: value is not among the generators");
  }

  void fill(DescentReport& r) const {
    r.generator_names = names_;
    r.generators = values_;
    r.descended_field = L_;
  }

 private:
  FieldPtr src_;
  std::vector<std::string> names_;
  std::vector<FieldElem> values_;
  FieldPtr L_;
};

// ---- triples ----

void push_value(std::vector<FormStep>& steps, const QuadForm& P, const Vec& x) {
  if (eval(P, x).is_one()) return;
  steps.push_back(FormStep{FormStep::Kind::ScaleByValue, 0, x, std::nullopt});
}

// x with P(x) = 1/P(u)^2.
Vec inverse_square_vector(const QuadForm& P, const FieldElem& pu) {
  Vec e = zero_vector(P);
  e[0] = pu.inv();
  return e;
}

// Moves multiplying slot 0 by P(x) P(u) / P(u)^2.
std::vector<FormStep> ratio_moves(const QuadForm& P, const Vec& x, const Vec& u) {
  std::vector<FormStep> s;
  push_value(s, P, x);
  push_value(s, P, u);
  push_value(s, P, inverse_square_vector(P, eval(P, u)));
  return s;
}

std::vector<FormStep> concat(std::vector<FormStep> a, const std::vector<FormStep>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Fills forms and certificates from the slot-0 moves and descended slot-0 values.
void finish_triple(DescentReport& r, const LinkedTriple& t, GenBuilder& gb,
                   const std::vector<std::vector<FormStep>>& moves, const std::vector<FieldElem>& slot0) {
  gb.build();
  gb.fill(r);
  PfisterDesc pi_L{{}, gb.lift(t.slots.back())};
  for (std::size_t i = 0; i + 1 < t.slots.size(); ++i) pi_L.bilinear.push_back(gb.lift(t.slots[i]));
  for (int i = 0; i < 3; ++i) {
    r.form_certs.push_back(make_form_certificate(t.phi(i), moves[static_cast<std::size_t>(i)]));
    PfisterDesc psi = pi_L;
    psi.bilinear.insert(psi.bilinear.begin(), slot0[static_cast<std::size_t>(i)]);
    r.forms.push_back(psi);
    if (!same_desc(specialize_desc(psi, t.field(), r.generators), r.form_certs.back().end))
      throw DescentDiagnostic("triple_descend: descended form does not extend to the certified form");
  }
  r.status = DescentReport::Status::success;
}

void add_slot_generators(GenBuilder& gb, const LinkedTriple& t) {
  for (std::size_t i = 0; i < t.slots.size(); ++i) gb.add("a" + std::to_string(i + 1), t.slots[i]);
}

}  // namespace

PfisterDesc apply_form_step(const PfisterDesc& d, const FormStep& s) {
  PfisterDesc r = d;
  if (s.kind == FormStep::Kind::ASShift) {
    if (!s.lambda) throw MoveError("as_shift: missing lambda");
    r.as_slot += s.lambda->wp();
    return r;
  }
  if (s.slot < 0 || s.slot >= static_cast<int>(d.bilinear.size())) throw MoveError("scale_by_value: bad slot");
  const QuadForm rest = expand_pfister(without_slot(d, s.slot));
  if (static_cast<int>(s.vector.size()) != rest.dim()) throw MoveError("scale_by_value: vector length");
  const FieldElem v = eval(rest, s.vector);
  if (v.is_zero()) throw MoveError("scale_by_value: value is zero");
  r.bilinear[static_cast<std::size_t>(s.slot)] *= v;
  return r;
}

FormCertificate make_form_certificate(PfisterDesc start, std::vector<FormStep> steps) {
  PfisterDesc cur = start;
  for (const auto& s : steps) cur = apply_form_step(cur, s);
  return FormCertificate{std::move(start), std::move(steps), std::move(cur)};
}

bool verify_form_certificate(const FormCertificate& c) {
  try {
    PfisterDesc cur = c.start;
    for (const auto& s : c.steps) cur = apply_form_step(cur, s);
    return same_desc(cur, c.end);
  } catch (const std::exception&) {
    return false;
  }
}

DescentReport triple_descend(const LinkedTriple& t, const SearchBudget& budget) {
  DescentReport r;
  r.kind = DescentReport::Kind::Triple;
  const FieldPtr& F = t.field();
  GenBuilder gb(F);
  add_slot_generators(gb, t);

  // pi _|_ b1 pi _|_ b2 pi is isotropic exactly when the sigma class is.
  const QuadForm P = expand_pfister(t.pi());
  const int m = P.dim();
  const QuadForm sub = P.perp(P.scaled(t.b1)).perp(P.scaled(t.b2));
  const IsotropyResult sres = isotropic_vector(sub, budget);
  if (!sres.found()) {
    const IsotropyResult rho = isotropic_vector(expand_pfister(t.sigma_class()), budget);
    if (rho.anisotropic()) {
      r.case_tag = "anisotropic";
      r.aniso_cert = rho.cert;
      gb.add("b1", t.b1);
      gb.add("b2", t.b2);
      gb.build();
      const FieldElem B1 = gb.lift(t.b1), B2 = gb.lift(t.b2);
      finish_triple(r, t, gb, {{}, {}, {}}, {B1, B2, B1 * B2});
      return r;
    }
    r.notes.push_back(std::string("value equation: ") + (sres.anisotropic() ? "anisotropic" : "undecided"));
    r.notes.push_back(std::string("sigma class: ") + (rho.found() ? "isotropic" : "undecided"));
    return r;
  }
  auto part = [&](int k) { return Vec(sres.vector.begin() + k * m, sres.vector.begin() + (k + 1) * m); };
  const Vec u = part(0), v = part(1), w = part(2);
  const FieldElem pu = eval(P, u), pv = eval(P, v), pw = eval(P, w);

  // Isotropic pi: every slot can be scaled to 1.
  std::optional<Vec> z;
  for (const Vec* x : {&u, &v, &w})
    if (!is_zero_vector(*x) && eval(P, *x).is_zero()) z = *x;
  if (z) {
    r.case_tag = "isotropic_phi";
    r.notes.push_back("pi isotropic");
    const HyperbolicSplit hs = split_off_hyperbolic(P, *z);
    auto universal = [&](const FieldElem& c) {
      Vec x = hs.v;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += c * hs.w[i];
      std::vector<FormStep> s;
      push_value(s, P, x);
      return s;
    };
    const FieldElem one = F->one();
    gb.build();
    const FieldElem L1 = gb.lift(one);
    finish_triple(r, t, gb, {universal(t.b1.inv()), universal(t.b2.inv()), universal((t.b1 * t.b2).inv())},
                  {L1, L1, L1});
    return r;
  }

  if (is_zero_vector(w)) {
    // pi(u) = b1 pi(v): phi_1 isotropic.
    r.case_tag = "isotropic_phi";
    const auto s = ratio_moves(P, v, u);
    gb.add("b", t.b2);
    gb.build();
    const FieldElem B = gb.lift(t.b2);
    finish_triple(r, t, gb, {s, {}, s}, {gb.lift(F->one()), B, B});
    return r;
  }
  if (is_zero_vector(v)) {
    r.case_tag = "isotropic_phi";
    const auto s = ratio_moves(P, w, u);
    gb.add("b", t.b1);
    gb.build();
    const FieldElem B = gb.lift(t.b1);
    finish_triple(r, t, gb, {{}, s, s}, {B, gb.lift(F->one()), B});
    return r;
  }
  if (is_zero_vector(u)) {
    // b1 pi(v) = b2 pi(w): phi_2 is phi_1.
    r.case_tag = "hyperbolic_middle";
    const auto s = ratio_moves(P, w, v);
    gb.add("b", t.b1);
    gb.build();
    const FieldElem B = gb.lift(t.b1);
    finish_triple(r, t, gb, {{}, s, s}, {B, B, B * B});
    return r;
  }

  // 1 + b1 f + b2 g = 0 with f = pi(v)/pi(u), g = pi(w)/pi(u).
  r.case_tag = "hyperbolic";
  const auto sf = ratio_moves(P, v, u), sg = ratio_moves(P, w, u);
  const FieldElem Bf = t.b1 * pv / pu;
  if (!(t.b2 * pw / pu == Bf + F->one())) throw DescentDiagnostic("triple_descend: value equation mismatch");
  gb.add("b", Bf);
  gb.build();
  const FieldElem B = gb.lift(Bf);
  const FieldElem B1 = B + gb.lift(F->one());
  finish_triple(r, t, gb, {sf, sg, concat(sf, sg)}, {B, B1, B * B1});
  return r;
}

bool verify_descent(const DescentReport& r, const LinkedTriple& t) {
  try {
    if (r.kind != DescentReport::Kind::Triple) return false;
    if (r.status == DescentReport::Status::budget_exhausted) return r.forms.empty() && r.form_certs.empty();
    const FieldPtr& F = t.field();
    const FieldPtr& L = r.descended_field;
    if (!L || L->degree() != F->degree()) return false;
    const std::size_t g = r.generators.size();
    if (static_cast<int>(g) != L->nvars() || r.generator_names != L->vars()) return false;
    const bool aniso = r.case_tag == "anisotropic";
    if (static_cast<int>(g) > t.n() + (aniso ? 1 : 0)) return false;
    for (const auto& x : r.generators)
      if (!(*x.field() == *F)) return false;
    if (r.forms.size() != 3 || r.form_certs.size() != 3) return false;
    for (int i = 0; i < 3; ++i) {
      const auto& c = r.form_certs[static_cast<std::size_t>(i)];
      const auto& psi = r.forms[static_cast<std::size_t>(i)];
      if (!same_desc(c.start, t.phi(i)) || !verify_form_certificate(c)) return false;
      if (psi.fold() != t.n() || !(*psi.as_slot.field() == *L)) return false;
      if (!same_desc(specialize_desc(psi, F, r.generators), c.end)) return false;
    }
    // psi_1 + psi_2 + psi_3 lies in I^{n+1}: common pi and slot_3 = slot_1 slot_2.
    for (int i = 1; i < 3; ++i)
      if (!same_desc(without_slot(r.forms[static_cast<std::size_t>(i)], 0), without_slot(r.forms[0], 0))) return false;
    if (!(r.forms[2].bilinear[0] == r.forms[0].bilinear[0] * r.forms[1].bilinear[0])) return false;
    if (aniso) {
      if (!r.aniso_cert || !certifies(*r.aniso_cert, expand_pfister(t.sigma_class()))) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// ---- quadruples ----

namespace {

void check_quad(const QuadInstance& inst) {
  if (inst.q.size() != 4) throw std::invalid_argument("QuadInstance: need four symbols");
  for (const auto& s : inst.q)
    if (!(*s.field() == *inst.q.front().field())) throw std::invalid_argument("QuadInstance: field mismatch");
  if (inst.split_witness) {
    if (!(inst.split_witness->chain.start == inst.q) || !verify_product_split(*inst.split_witness))
      throw std::invalid_argument("QuadInstance: split witness fails verification");
  }
}

void shift_if(std::vector<RewriteMove>& mv, const FieldElem& l) {
  if (!l.is_zero()) mv.push_back(RewriteMove::as_shift(l));
}

Certificate cert_for(const QSymbol& q, const std::vector<RewriteMove>& moves) {
  std::vector<CertStep> steps;
  for (const auto& m : moves) steps.push_back(CertStep{0, m});
  return make_certificate({q}, std::move(steps));
}

// [c, b) -> [c, d4) given a witness that [c, b d4) is split.
void scale_to(std::vector<RewriteMove>& mv, const FieldElem& c, const FieldElem& b, const FieldElem& d4,
              const SplitWitness& w) {
  if (b == d4) return;
  const EtaleElem g = norm_preimage(c, b * d4, w);
  mv.push_back(RewriteMove::norm_scale(g.x / d4, g.y / d4));
}

void finish_quad(DescentReport& r, const QuadInstance& inst, const std::vector<std::vector<RewriteMove>>& moves,
                 std::vector<QSymbol> descended, std::vector<CertStep> chain, std::vector<SplitWitness> witnesses) {
  const FieldPtr& F = inst.q.front().field();
  for (std::size_t i = 0; i < 4; ++i) {
    r.symbol_certs.push_back(cert_for(inst.q[i], moves[i]));
    if (!(specialize_symbol(descended[i], F, r.generators) == r.symbol_certs.back().end.front()))
      throw DescentDiagnostic("quad_descend: descended symbol " + std::to_string(i + 1) + " does not extend");
  }
  r.product_split = ProductSplitCert{make_certificate(descended, std::move(chain)), std::move(witnesses)};
  if (!verify_product_split(*r.product_split)) throw DescentDiagnostic("quad_descend: product split chain fails");
  r.symbols = std::move(descended);
  r.status = DescentReport::Status::success;
}

// Cheaper searches for classifying [c_i, d_i d4); an undecided verdict is harmless there.
SearchBudget classify_budget(const SearchBudget& b) {
  SearchBudget r = b;
  r.exhaustive_limit = std::min<std::uint64_t>(b.exhaustive_limit, 1024);
  r.trials = std::min(b.trials, 20);
  r.cert_attempts = std::min(b.cert_attempts, 300);
  return r;
}

bool degenerate_quad(DescentReport& r, const QuadInstance& inst, const SearchBudget& budget) {
  std::vector<SplitWitness> ws;
  for (const auto& q : inst.q) {
    const SplitResult s = split_test(q, classify_budget(budget));
    if (s.verdict != SplitResult::Verdict::Split) return false;
    ws.push_back(*s.witness);
  }
  const FieldPtr& F = inst.q.front().field();
  r.case_tag = "degenerate";
  GenBuilder gb(F);
  gb.build();
  gb.fill(r);
  const FieldPtr& L = r.descended_field;
  std::vector<std::vector<RewriteMove>> moves(4);
  FieldElem root = F->zero();
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& q = inst.q[i];
    const auto& w = ws[i];
    shift_if(moves[i], w.lambda);
    FieldElem B = q.b;
    if (!w.mu.is_zero()) {
      moves[i].push_back(RewriteMove::slot_push(w.mu, F->zero()));
      B = w.mu.square() * q.b;
    }
    // N_0(B + (B+1) theta) = B.
    if (!B.is_one()) moves[i].push_back(RewriteMove::norm_scale(B, B + F->one()));
    r.c_values.push_back(q.a + w.mu.square() * q.b);
    root += w.lambda;
  }
  r.c_sum_root = root;
  const QSymbol trivial(L->zero(), L->one());
  finish_quad(r, inst, moves, {trivial, trivial, trivial, trivial}, {},
              std::vector<SplitWitness>(4, SplitWitness{L->zero(), L->zero()}));
  return true;
}

}  // namespace

DescentReport quad_descend(const QuadInstance& inst, const SearchBudget& budget) {
  check_quad(inst);
  DescentReport r;
  r.kind = DescentReport::Kind::Quad;
  if (degenerate_quad(r, inst, budget)) return r;

  const FieldPtr& F = inst.q.front().field();
  const auto& Q = inst.q;

  // Step 1: l^2 + l + sum a_i + sum b_i N(alpha_i) = 0.
  FieldElem A = F->zero();
  for (const auto& q : Q) A += q.a;
  const auto sol = solve_slot_equation(A, Q, budget);
  if (!sol) {
    r.notes.push_back("slot equation: undecided");
    return r;
  }
  std::vector<FieldElem> c, d;
  std::vector<std::vector<RewriteMove>> moves(4);
  for (std::size_t i = 0; i < 4; ++i) {
    const EtaleElem& al = sol->alphas[i];
    if (al.is_zero()) {
      c.push_back(Q[i].a);
      d.push_back(Q[i].b);
    } else {
      const FieldElem bn = Q[i].b * norm_sep(Q[i].a, al);
      c.push_back(Q[i].a + bn);
      d.push_back(bn);
      moves[i].push_back(RewriteMove::slot_push(al.x, al.y));
    }
  }
  r.c_values = c;
  r.c_sum_root = sol->lambda;
  if (!(c[0] + c[1] + c[2] + c[3] == sol->lambda.wp()))
    throw DescentDiagnostic("quad_descend: c_1 + c_2 + c_3 + c_4 is not lambda^2 + lambda");
  shift_if(moves[3], sol->lambda);  // Q4 = [c1 + c2 + c3, d4)
  const FieldElem& d4 = d[3];

  // Steps 3-4: split behaviour of H_i = [c_i, d_i d4). The B and C
  // constructions only use witnesses, so undecided symbols join the rest.
  std::vector<QSymbol> H;
  std::vector<SplitResult> hs;
  std::vector<int> split_idx, rest_idx;
  int divisions = 0;
  const SearchBudget quick = classify_budget(budget);
  for (std::size_t i = 0; i < 3; ++i) {
    H.emplace_back(c[i], d[i] * d4);
    hs.push_back(split_test(H.back(), quick));
    r.h_verdicts.push_back(verdict_name(hs.back().verdict));
    if (hs.back().verdict == SplitResult::Verdict::Split) split_idx.push_back(static_cast<int>(i));
    else rest_idx.push_back(static_cast<int>(i));
    divisions += hs.back().verdict == SplitResult::Verdict::Division;
  }
  if (split_idx.size() == 2 && divisions == 1)
    throw DescentDiagnostic("quad_descend: exactly two of [c_i, d_i d4) split");
  if (split_idx.size() == 2) split_idx.clear();
  rest_idx.clear();
  for (int i = 0; i < 3; ++i)
    if (split_idx.size() != 1 || split_idx.front() != i) rest_idx.push_back(i);

  if (split_idx.size() == 3) {
    r.case_tag = "A";
    GenBuilder gb(F);
    gb.add("c1", c[0]);
    gb.add("c2", c[1]);
    gb.add("c3", c[2]);
    gb.add("d4", d4);
    gb.build();
    gb.fill(r);
    for (std::size_t i = 0; i < 3; ++i) scale_to(moves[i], c[i], d[i], d4, *hs[i].witness);
    const FieldElem D = gb.lift(d4);
    std::vector<QSymbol> desc;
    FieldElem sum = r.descended_field->zero();
    std::vector<CertStep> chain;
    std::vector<SplitWitness> ws;
    for (int i = 0; i < 3; ++i) {
      const FieldElem ci = gb.lift(c[static_cast<std::size_t>(i)]);
      desc.emplace_back(ci, D);
      sum += ci;
      chain.push_back(CertStep{i, RewriteMove::exchange(3)});
      ws.push_back(SplitWitness{ci, ci / D});  // [c_i, d4^2)
    }
    desc.emplace_back(sum, D);
    ws.push_back(SplitWitness{sum.field()->zero(), sum.field()->zero()});
    finish_quad(r, inst, moves, desc, chain, ws);
    return r;
  }

  // Cases B and C: the remaining ones share a left slot s.
  const bool caseB = split_idx.empty();
  r.case_tag = caseB ? "B" : "C";
  const int p = caseB ? -1 : split_idx.front();
  std::vector<QSymbol> Hd;
  for (int i : rest_idx) Hd.push_back(H[static_cast<std::size_t>(i)]);
  const auto cs = common_left_slot(Hd, budget);
  if (!cs) {
    r.notes.push_back("common left slot: undecided");
    return r;
  }
  const std::size_t nd = rest_idx.size();
  std::vector<FieldElem> f(nd, F->zero());
  std::vector<bool> delta(nd, false);
  FieldElem prod = F->one();
  for (std::size_t k = 0; k < nd; ++k) {
    const auto i = static_cast<std::size_t>(rest_idx[k]);
    delta[k] = cs->pushes[k].has_value();
    f[k] = delta[k] ? d[i] * norm_sep(c[i], *cs->pushes[k]) : d[i];
    prod *= f[k];
  }
  if (caseB) prod *= d4;

  // x with c_first + delta f_first f4 = l^2 + l + x^2 prod.
  const auto i0 = static_cast<std::size_t>(rest_idx[0]);
  const FieldElem lead = c[i0] + (delta[0] ? f[0] * d4 : F->zero());
  const SplitResult xs = split_test(QSymbol(lead, prod), budget);
  if (xs.verdict == SplitResult::Verdict::Division)
    throw DescentDiagnostic("quad_descend: [c + delta f f4, prod f) is not split");
  if (xs.verdict != SplitResult::Verdict::Split) {
    r.notes.push_back("x: undecided");
    return r;
  }
  const FieldElem x = xs.witness->mu;
  if (x.is_zero() && hs[i0].verdict == SplitResult::Verdict::Division)
    throw DescentDiagnostic("quad_descend: x = 0 although [c_i, d_i d4) is division");
  const FieldElem X = x.square() * prod;

  std::vector<FieldElem> u(nd, F->zero());
  FieldElem usum = F->zero();
  for (std::size_t k = 0; k < nd; ++k) {
    const auto i = static_cast<std::size_t>(rest_idx[k]);
    u[k] = xs.witness->lambda + cs->shifts[0] + cs->shifts[k];
    const FieldElem e = c[i] + u[k].wp();
    if (!(e == X + (delta[k] ? f[k] * d4 : F->zero())))
      throw DescentDiagnostic("quad_descend: e_i mismatch");
    if (delta[k]) {
      const EtaleElem bi = cs->pushes[k]->inv();
      moves[i].push_back(RewriteMove::norm_scale(bi.x, bi.y));
    }
    shift_if(moves[i], u[k]);
    usum += u[k];
  }
  shift_if(moves[3], usum);

  GenBuilder gb(F);
  if (caseB) {
    for (std::size_t k = 0; k < 3; ++k) gb.add("f" + std::to_string(k + 1), f[k]);
  } else {
    r.permutation = {p, rest_idx[0], rest_idx[1]};
    scale_to(moves[static_cast<std::size_t>(p)], c[static_cast<std::size_t>(p)], d[static_cast<std::size_t>(p)], d4,
             *hs[static_cast<std::size_t>(p)].witness);
    gb.add("e1", c[static_cast<std::size_t>(p)]);
    gb.add("f2", f[0]);
    gb.add("f3", f[1]);
  }
  gb.add("f4", d4);
  gb.add("x", x);
  gb.build();
  gb.fill(r);
  const FieldPtr& L = r.descended_field;
  const FieldElem F4 = gb.lift(d4), xL = gb.lift(x), one = L->one(), zero = L->zero();
  FieldElem XL = xL.square();
  for (std::size_t k = 0; k < nd; ++k) XL *= gb.lift(f[k]);
  if (caseB) XL *= F4;

  std::vector<QSymbol> desc(4, QSymbol(zero, one));
  FieldElem esum = zero;
  for (std::size_t k = 0; k < nd; ++k) {
    const FieldElem fL = gb.lift(f[k]);
    const FieldElem e = delta[k] ? XL + fL * F4 : XL;
    desc[static_cast<std::size_t>(rest_idx[k])] = QSymbol(e, fL);
    esum += e;
  }
  if (!caseB) {
    const FieldElem e1 = gb.lift(c[static_cast<std::size_t>(p)]);
    desc[static_cast<std::size_t>(p)] = QSymbol(e1, F4);
    esum += e1;
  }
  desc[3] = QSymbol(esum, F4);

  // Exchanges against Q4 give [e_i, f_i f4) and [0, f4); slot pushes give [X, f_i f4);
  // exchanging those into the first division position leaves [X, prod f4^2).
  std::vector<CertStep> chain;
  if (!caseB) chain.push_back(CertStep{p, RewriteMove::exchange(3)});
  for (int i : rest_idx) chain.push_back(CertStep{i, RewriteMove::exchange(3)});
  for (std::size_t k = 0; k < nd; ++k)
    if (delta[k]) chain.push_back(CertStep{rest_idx[k], RewriteMove::slot_push(one, zero)});
  for (std::size_t k = 1; k < nd; ++k) chain.push_back(CertStep{rest_idx[0], RewriteMove::exchange(rest_idx[k])});
  chain.push_back(CertStep{rest_idx[0], RewriteMove::norm_scale(F4, zero)});

  std::vector<SplitWitness> ws(4, SplitWitness{zero, zero});
  ws[static_cast<std::size_t>(rest_idx[0])] = SplitWitness{zero, xL};
  if (!caseB) {
    const FieldElem e1 = gb.lift(c[static_cast<std::size_t>(p)]);
    ws[static_cast<std::size_t>(p)] = SplitWitness{e1, e1 / F4};
  }
  finish_quad(r, inst, moves, desc, chain, ws);
  return r;
}

bool verify_descent(const DescentReport& r, const QuadInstance& inst) {
  try {
    if (r.kind != DescentReport::Kind::Quad || inst.q.size() != 4) return false;
    const FieldPtr& F = inst.q.front().field();
    if (r.c_values.size() == 4 && r.c_sum_root) {
      if (!(r.c_values[0] + r.c_values[1] + r.c_values[2] + r.c_values[3] == r.c_sum_root->wp())) return false;
    }
    if (r.status == DescentReport::Status::budget_exhausted) return r.symbols.empty() && r.symbol_certs.empty();
    if (r.c_values.size() != 4 || !r.c_sum_root) return false;
    const FieldPtr& L = r.descended_field;
    if (!L || L->degree() != F->degree()) return false;
    const std::size_t g = r.generators.size();
    if (static_cast<int>(g) != L->nvars() || r.generator_names != L->vars()) return false;
    const std::size_t bound = r.case_tag == "degenerate" ? 0 : r.case_tag == "A" ? 4 : 5;
    if (g > bound) return false;
    for (const auto& x : r.generators)
      if (!(*x.field() == *F)) return false;
    if (r.symbols.size() != 4 || r.symbol_certs.size() != 4 || !r.product_split) return false;
    for (std::size_t i = 0; i < 4; ++i) {
      const Certificate& c = r.symbol_certs[i];
      if (!(*r.symbols[i].field() == *L)) return false;
      if (c.start.size() != 1 || !(c.start.front() == inst.q[i]) || !verify_certificate(c)) return false;
      if (c.end.size() != 1 || !(specialize_symbol(r.symbols[i], F, r.generators) == c.end.front())) return false;
    }
    if (!(r.product_split->chain.start == r.symbols) || !verify_product_split(*r.product_split)) return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace pfister
