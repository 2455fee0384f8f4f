#include "pfister/brauer.hpp"

#include <algorithm>

#include "pfister/witt.hpp"

namespace pfister {

QSymbol::QSymbol(FieldElem a_, FieldElem b_) : a(std::move(a_)), b(std::move(b_)) {
  if (!(*a.field() == *b.field())) throw std::invalid_argument("QSymbol: field mismatch");
  if (b.is_zero()) throw std::invalid_argument("QSymbol: b must be nonzero");
}

std::string QSymbol::to_string() const { return "[" + a.to_string() + ", " + b.to_string() + ")"; }

RewriteMove RewriteMove::as_shift(FieldElem l) {
  RewriteMove m{Kind::ASShift, std::move(l), std::nullopt, -1};
  return m;
}

RewriteMove RewriteMove::norm_scale(FieldElem x, FieldElem y) {
  return {Kind::NormScale, std::nullopt, std::make_pair(std::move(x), std::move(y)), -1};
}

RewriteMove RewriteMove::slot_push(FieldElem x, FieldElem y) {
  return {Kind::SlotPush, std::nullopt, std::make_pair(std::move(x), std::move(y)), -1};
}

RewriteMove RewriteMove::exchange(int partner) { return {Kind::Exchange, std::nullopt, std::nullopt, partner}; }

const char* move_kind_name(RewriteMove::Kind k) {
  switch (k) {
    case RewriteMove::Kind::ASShift: return "as_shift";
    case RewriteMove::Kind::NormScale: return "norm_scale";
    case RewriteMove::Kind::SlotPush: return "slot_push";
    case RewriteMove::Kind::Exchange: return "exchange";
  }
  return "?";
}

std::optional<RewriteMove::Kind> parse_move_kind(const std::string& name) {
  for (auto k : {RewriteMove::Kind::ASShift, RewriteMove::Kind::NormScale, RewriteMove::Kind::SlotPush,
                 RewriteMove::Kind::Exchange})
    if (name == move_kind_name(k)) return k;
  return std::nullopt;
}

namespace {

void same_field(const FieldElem& e, const QSymbol& s) {
  if (!(*e.field() == *s.field())) throw MoveError("move parameter lives in a different field");
}

EtaleElem move_alpha(const RewriteMove& m, const QSymbol& s) {
  if (!m.alpha) throw MoveError(std::string(move_kind_name(m.kind)) + ": missing alpha");
  same_field(m.alpha->first, s);
  same_field(m.alpha->second, s);
  EtaleElem al{s.a, m.alpha->first, m.alpha->second};
  if (al.is_zero()) throw MoveError(std::string(move_kind_name(m.kind)) + ": alpha is zero");
  return al;
}

FieldElem nonzero_norm(const RewriteMove& m, const QSymbol& s) {
  FieldElem n = norm_sep(s.a, move_alpha(m, s));
  if (n.is_zero()) throw MoveError(std::string(move_kind_name(m.kind)) + ": norm of alpha vanishes");
  return n;
}

SplitResult split_with(const QSymbol& q, FieldElem l, FieldElem m) {
  SplitWitness w{std::move(l), std::move(m)};
  if (!check_split_witness(q, w)) throw std::logic_error("split_test: witness failed verification");
  SplitResult r;
  r.verdict = SplitResult::Verdict::Split;
  r.witness = std::move(w);
  return r;
}

// Certificate for a single symbol from a list of steps at position 0.
Certificate single_cert(const QSymbol& q, std::vector<RewriteMove> moves) {
  std::vector<CertStep> steps;
  for (auto& m : moves) steps.push_back({0, std::move(m)});
  return make_certificate({q}, std::move(steps));
}

// Small elements used as coordinates in linkage searches: 0, 1, t_i, t_i + 1.
std::vector<FieldElem> small_pool(const FieldPtr& F) {
  std::vector<FieldElem> pool{F->zero(), F->one()};
  for (int i = 0; i < F->nvars(); ++i) {
    pool.push_back(F->var(i));
    pool.push_back(F->var(i) + F->one());
  }
  return pool;
}

SearchBudget inner_budget(const SearchBudget& b) {
  SearchBudget r = b;
  r.exhaustive_limit = std::min<std::uint64_t>(b.exhaustive_limit, 4096);
  r.trials = std::min(b.trials, 50);
  r.cert_attempts = std::min(b.cert_attempts, 1000);
  return r;
}

}  // namespace

std::vector<QSymbol> apply_move(const std::vector<QSymbol>& symbols, int pos, const RewriteMove& m) {
  if (pos < 0 || pos >= static_cast<int>(symbols.size())) throw MoveError("move position out of range");
  std::vector<QSymbol> out = symbols;
  QSymbol& s = out[static_cast<std::size_t>(pos)];
  switch (m.kind) {
    case RewriteMove::Kind::ASShift: {
      if (!m.lambda) throw MoveError("as_shift: missing lambda");
      same_field(*m.lambda, s);
      s = QSymbol(s.a + m.lambda->wp(), s.b);
      break;
    }
    case RewriteMove::Kind::NormScale: {
      FieldElem n = nonzero_norm(m, s);
      s = QSymbol(s.a, s.b / n);
      break;
    }
    case RewriteMove::Kind::SlotPush: {
      FieldElem bn = s.b * nonzero_norm(m, s);
      s = QSymbol(s.a + bn, bn);
      break;
    }
    case RewriteMove::Kind::Exchange: {
      int j = m.partner;
      if (j < 0 || j >= static_cast<int>(symbols.size()) || j == pos) throw MoveError("exchange: bad partner");
      QSymbol& t = out[static_cast<std::size_t>(j)];
      QSymbol s2(s.a, s.b * t.b);
      QSymbol t2(s.a + t.a, t.b);
      s = s2;
      t = t2;
      break;
    }
  }
  return out;
}

Certificate make_certificate(std::vector<QSymbol> start, std::vector<CertStep> moves) {
  std::vector<QSymbol> cur = start;
  for (const auto& st : moves) cur = apply_move(cur, st.position, st.move);
  return {std::move(start), std::move(moves), std::move(cur)};
}

bool verify_certificate(const Certificate& c) {
  try {
    std::vector<QSymbol> cur = c.start;
    for (const auto& st : c.moves) cur = apply_move(cur, st.position, st.move);
    return cur == c.end;
  } catch (const std::exception&) {
    return false;
  }
}

bool check_split_witness(const QSymbol& q, const SplitWitness& w) {
  if (!(*w.lambda.field() == *q.field()) || !(*w.mu.field() == *q.field())) return false;
  return q.a == w.lambda.wp() + w.mu.square() * q.b;
}

const char* verdict_name(SplitResult::Verdict v) {
  switch (v) {
    case SplitResult::Verdict::Split: return "split";
    case SplitResult::Verdict::Division: return "division";
    case SplitResult::Verdict::Unknown: return "unknown";
  }
  return "?";
}

PfisterDesc norm_form(const QSymbol& q) { return PfisterDesc{{q.b}, q.a}; }

SplitResult split_test(const QSymbol& q, const SearchBudget& budget) {
  const FieldPtr& F = q.field();
  if (auto l = artin_schreier_solve(q.a)) return split_with(q, *l, F->zero());
  if (q.b.is_square()) return split_with(q, q.a, q.a / q.b.sqrt());

  const WpReduced red = wp_reduce(q.a);
  if (!(red.value == q.a)) {
    // Search on [a', b) with a' = a + wp(shift), which has smaller entries.
    SplitResult r = split_test(QSymbol(red.value, q.b), budget);
    if (r.verdict == SplitResult::Verdict::Split) return split_with(q, r.witness->lambda + red.shift, r.witness->mu);
    if (r.verdict == SplitResult::Verdict::Division) {
      CertSearchLimits lim;
      lim.max_attempts = budget.cert_attempts;
      QuadForm nf = expand_pfister(norm_form(q));
      r.cert = find_aniso_cert(nf, lim);
      if (!r.cert) r.verdict = SplitResult::Verdict::Unknown;
    }
    return r;
  }

  IsotropyResult iso = isotropic_vector(expand_pfister(norm_form(q)), budget);
  if (iso.found()) {
    // N(g0) = b N(g1) for g0 = x0 + y0 theta, g1 = x1 + y1 theta.
    const Vec& v = iso.vector;
    EtaleElem g0{q.a, v[0], v[1]};
    EtaleElem g1{q.a, v[2], v[3]};
    if (!norm_sep(q.a, g1).is_zero()) {
      EtaleElem g = g0 * g1.inv();
      if (!g.y.is_zero()) return split_with(q, g.x / g.y, g.y.inv());
      return split_with(q, q.a, q.a / g.x);
    }
    const EtaleElem& h = g1.is_zero() ? g0 : g1;
    return split_with(q, h.x / h.y, F->zero());
  }
  SplitResult r;
  if (iso.anisotropic()) {
    r.verdict = SplitResult::Verdict::Division;
    r.cert = std::move(iso.cert);
  }
  return r;
}

EtaleElem norm_preimage(const FieldElem& a, const FieldElem& c, const SplitWitness& w) {
  if (!(a == w.lambda.wp() + w.mu.square() * c)) throw std::invalid_argument("norm_preimage: witness does not split [a,c)");
  EtaleElem al = [&]() -> EtaleElem {
    if (!w.mu.is_zero()) {
      FieldElem mi = w.mu.inv();
      return {a, w.lambda * mi, mi};
    }
    // a = l^2 + l, so N_a(x + y theta) = (x + l y)(x + (l+1) y).
    FieldElem y = c + a.field()->one();
    return {a, c + w.lambda * y, y};
  }();
  if (!(norm_sep(a, al) == c)) throw std::logic_error("norm_preimage: norm mismatch");
  return al;
}

bool verify_product_split(const ProductSplitCert& c) {
  if (!verify_certificate(c.chain) || c.witnesses.size() != c.chain.end.size()) return false;
  for (std::size_t i = 0; i < c.witnesses.size(); ++i)
    if (!check_split_witness(c.chain.end[i], c.witnesses[i])) return false;
  return true;
}

IsoResult is_isomorphic(const QSymbol& p, const QSymbol& q, const SearchBudget& budget) {
  if (!(*p.field() == *q.field())) throw std::invalid_argument("is_isomorphic: field mismatch");
  IsoResult out;
  auto yes = [&](std::vector<RewriteMove> moves) {
    out.verdict = Tri::yes;
    out.certificate = single_cert(p, std::move(moves));
    if (!(out.certificate->end.front() == q)) throw std::logic_error("is_isomorphic: certificate misses target");
    return out;
  };
  if (p == q) return yes({});
  if (p.b == q.b) {
    // [a1,b) = [a2,b) iff [a1 + a2, b) is split.
    SplitResult s = split_test(QSymbol(p.a + q.a, p.b), budget);
    if (s.verdict == SplitResult::Verdict::Split) {
      const auto& w = *s.witness;
      std::vector<RewriteMove> moves;
      if (!w.mu.is_zero()) {
        moves.push_back(RewriteMove::slot_push(w.mu, p.field()->zero()));
        moves.push_back(RewriteMove::norm_scale(w.mu, p.field()->zero()));
      }
      if (!w.lambda.is_zero()) moves.push_back(RewriteMove::as_shift(w.lambda));
      return yes(std::move(moves));
    }
    if (s.verdict == SplitResult::Verdict::Division) {
      out.verdict = Tri::no;
      return out;
    }
  }
  if (p.a == q.a) {
    // [a,b1) = [a,b2) iff [a, b1 b2) is split.
    SplitResult s = split_test(QSymbol(p.a, p.b * q.b), budget);
    if (s.verdict == SplitResult::Verdict::Split) {
      EtaleElem g = norm_preimage(p.a, p.b * q.b, *s.witness).scaled(q.b.inv());
      return yes({RewriteMove::norm_scale(g.x, g.y)});
    }
    if (s.verdict == SplitResult::Verdict::Division) {
      out.verdict = Tri::no;
      return out;
    }
  }
  SplitResult sp = split_test(p, budget);
  SplitResult sq = split_test(q, budget);
  using V = SplitResult::Verdict;
  if ((sp.verdict == V::Split && sq.verdict == V::Division) || (sp.verdict == V::Division && sq.verdict == V::Split)) {
    out.verdict = Tri::no;
    return out;
  }
  if (sp.verdict == V::Split && sq.verdict == V::Split) {
    out.verdict = Tri::yes;
    return out;
  }
  out.verdict = is_isometric(expand_pfister(norm_form(p)), expand_pfister(norm_form(q)), budget);
  return out;
}

std::optional<SlotSolution> solve_slot_equation(const FieldElem& A, const std::vector<QSymbol>& symbols,
                                                const SearchBudget& budget) {
  const FieldPtr& F = A.field();
  SlotSolution sol{F->zero(), {}};
  for (const auto& q : symbols) sol.alphas.push_back({q.a, F->zero(), F->zero()});

  auto finish = [&]() -> std::optional<SlotSolution> {
    FieldElem total = sol.lambda.wp() + A;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      FieldElem bn = symbols[i].b * norm_sep(symbols[i].a, sol.alphas[i]);
      if (bn.is_zero()) sol.alphas[i] = {symbols[i].a, F->zero(), F->zero()};
      total += bn;
    }
    if (!total.is_zero()) throw std::logic_error("solve_slot_equation: identity failed");
    return sol;
  };

  if (auto l = artin_schreier_solve(A)) {
    sol.lambda = *l;
    return finish();
  }
  // Search with a smaller representative of A modulo wp(F).
  const WpReduced red = wp_reduce(A);
  const FieldElem& Ar = red.value;
  QuadForm P(F);
  P.add_block(F->one(), F->one(), Ar);
  for (const auto& q : symbols) P.add_block(q.b, F->one(), q.a);
  IsotropyResult iso = isotropic_vector(P, budget);
  if (!iso.found()) return std::nullopt;
  const Vec& v = iso.vector;
  const std::size_t n = symbols.size();
  if (!v[1].is_zero()) {
    FieldElem yi = v[1].inv();
    sol.lambda = v[0] * yi;
    for (std::size_t i = 0; i < n; ++i) sol.alphas[i] = {symbols[i].a, v[2 * i + 2] * yi, v[2 * i + 3] * yi};
  } else if (!v[0].is_zero()) {
    // sum b_i N(alpha_i / x0) = 1; scale by Ar and take lambda = Ar.
    FieldElem s = Ar / v[0];
    sol.lambda = Ar;
    for (std::size_t i = 0; i < n; ++i) sol.alphas[i] = {symbols[i].a, v[2 * i + 2] * s, v[2 * i + 3] * s};
  } else {
    // The subform without [1,A] is isotropic, hence universal: represent A.
    QuadForm sub(F);
    for (const auto& q : symbols) sub.add_block(q.b, F->one(), q.a);
    Vec u(v.begin() + 2, v.end());
    HyperbolicSplit h = split_off_hyperbolic(sub, u);
    for (std::size_t i = 0; i < n; ++i)
      sol.alphas[i] = {symbols[i].a, Ar * h.v[2 * i] + h.w[2 * i], Ar * h.v[2 * i + 1] + h.w[2 * i + 1]};
    sol.lambda = F->zero();
  }
  sol.lambda += red.shift;
  return finish();
}

std::optional<CommonSlot> common_left_slot(const std::vector<QSymbol>& qs, const SearchBudget& budget) {
  if (qs.empty()) throw std::invalid_argument("common_left_slot: no symbols");
  const FieldPtr& F = qs.front().field();
  const std::size_t n = qs.size();
  CommonSlot out{qs.front().a, {}, std::vector<std::optional<EtaleElem>>(n), std::vector<FieldElem>(n, F->zero())};

  auto finish = [&]() -> std::optional<CommonSlot> {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<RewriteMove> moves;
      if (out.pushes[i]) moves.push_back(RewriteMove::slot_push(out.pushes[i]->x, out.pushes[i]->y));
      if (!out.shifts[i].is_zero()) moves.push_back(RewriteMove::as_shift(out.shifts[i]));
      out.certs.push_back(single_cert(qs[i], std::move(moves)));
      if (!(out.certs.back().end.front().a == out.s)) throw std::logic_error("common_left_slot: slot mismatch");
    }
    return out;
  };
  auto set_push = [&](std::size_t i, const EtaleElem& al) {
    if (!al.is_zero()) out.pushes[i] = al;
  };

  // Cheap path: every a_i already equals a_0 modulo wp(F).
  bool cheap = true;
  for (std::size_t i = 1; i < n && cheap; ++i) {
    if (auto l = artin_schreier_solve(qs[i].a + out.s)) out.shifts[i] = *l;
    else cheap = false;
  }
  if (cheap) return finish();
  std::fill(out.shifts.begin(), out.shifts.end(), F->zero());

  if (n >= 2) {
    auto sol = solve_slot_equation(qs[0].a + qs[1].a, {qs[0], qs[1]}, budget);
    if (!sol) return std::nullopt;
    set_push(0, sol->alphas[0]);
    set_push(1, sol->alphas[1]);
    const WpReduced red = wp_reduce(qs[0].a + qs[0].b * norm_sep(qs[0].a, sol->alphas[0]));
    out.s = red.value;
    out.shifts[0] = red.shift;
    out.shifts[1] = sol->lambda + red.shift;
  }
  for (std::size_t i = 2; i < n; ++i) {
    auto sol = solve_slot_equation(out.s + qs[i].a, {qs[i]}, budget);
    if (!sol) return std::nullopt;
    set_push(i, sol->alphas[0]);
    out.shifts[i] = sol->lambda;
  }
  return finish();
}

LinkageResult inseparably_linked(const std::vector<QSymbol>& qs, const SearchBudget& budget) {
  LinkageResult out;
  if (qs.empty()) throw std::invalid_argument("inseparably_linked: no symbols");
  const FieldPtr& F = qs.front().field();
  const SearchBudget inner = inner_budget(budget);
  const auto pool = small_pool(F);

  // A split symbol takes any right slot: [a,b) -> [wp(l), m^2 b) -> [0, m^2 b) -> [0, B).
  std::vector<std::optional<SplitWitness>> split(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    SplitResult s = split_test(qs[i], inner);
    if (s.verdict == SplitResult::Verdict::Split) split[i] = s.witness;
  }
  auto to_slot = [&](const QSymbol& q, const SplitWitness& w, const FieldElem& B) {
    std::vector<RewriteMove> moves;
    if (!w.mu.is_zero()) moves.push_back(RewriteMove::slot_push(w.mu, F->zero()));
    if (!w.lambda.is_zero()) moves.push_back(RewriteMove::as_shift(w.lambda));
    const FieldElem c = w.mu.is_zero() ? q.b / B : w.mu.square() * q.b / B;
    if (!c.is_one()) moves.push_back(RewriteMove::norm_scale(F->one(), c + F->one()));
    return single_cert(q, std::move(moves));
  };

  auto try_slot = [&](const FieldElem& B) -> bool {
    std::vector<Certificate> certs;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const QSymbol& q = qs[i];
      if (q.b == B) {
        certs.push_back(single_cert(q, {}));
        continue;
      }
      if (split[i]) {
        certs.push_back(to_slot(q, *split[i], B));
        if (!(certs.back().end.front().b == B)) throw std::logic_error("inseparably_linked: slot mismatch");
        continue;
      }
      // [a,b) = [a,B) iff B/b is a norm iff [a, bB) is split.
      SplitResult s = split_test(QSymbol(q.a, q.b * B), inner);
      if (s.verdict != SplitResult::Verdict::Split) return false;
      EtaleElem g = norm_preimage(q.a, q.b * B, *s.witness).scaled(B.inv());
      certs.push_back(single_cert(q, {RewriteMove::norm_scale(g.x, g.y)}));
      if (!(certs.back().end.front().b == B)) throw std::logic_error("inseparably_linked: slot mismatch");
    }
    out.verdict = Tri::yes;
    out.b = B;
    out.certs = std::move(certs);
    return true;
  };

  for (const auto& q : qs)
    for (const auto& x : pool)
      for (const auto& y : pool) {
        EtaleElem al{q.a, x, y};
        if (al.is_zero()) continue;
        FieldElem nb = norm_sep(q.a, al);
        if (nb.is_zero()) continue;
        if (try_slot(q.b * nb)) return out;
      }
  return out;
}

Tri triple_sigma_hyperbolic(const std::vector<QSymbol>& qs, const SearchBudget& budget) {
  if (qs.size() != 3) throw std::invalid_argument("triple_sigma_hyperbolic: need three symbols");
  std::vector<PfisterDesc> forms;
  for (const auto& q : qs) forms.push_back(norm_form(q));
  const QuadForm sigma = sigma_S(forms);
  // Cheap first pass: hyperbolic planes that show up without a common slot.
  if (is_hyperbolic(sigma, inner_budget(budget)) == Tri::yes) return Tri::yes;
  if (auto cs = common_left_slot(qs, budget)) {
    const FieldElem b1 = cs->certs[0].end.front().b;
    const FieldElem b2 = cs->certs[1].end.front().b;
    const FieldElem b3 = cs->certs[2].end.front().b;
    // <<b3; s]] = <<b1 b2; s]] needs [s, b1 b2 b3) split.
    if (split_test(QSymbol(cs->s, b1 * b2 * b3), budget).verdict == SplitResult::Verdict::Split) {
      IsotropyResult r = isotropic_vector(expand_pfister(PfisterDesc{{b1, b2}, cs->s}), budget);
      if (r.found()) return Tri::yes;
      if (r.anisotropic()) return Tri::no;
      return Tri::unknown;
    }
  }
  return is_hyperbolic(sigma, budget);
}

std::vector<QSymbol> linked_quad_to_triple(const std::vector<QSymbol>& s) {
  if (s.size() != 4) throw std::invalid_argument("linked_quad_to_triple: need four symbols");
  for (const auto& q : s)
    if (!(q.a == s[0].a)) throw std::invalid_argument("linked_quad_to_triple: left slots differ");
  if (!(s[3].b == s[0].b * s[1].b * s[2].b))
    throw std::invalid_argument("linked_quad_to_triple: fourth right slot must be b1 b2 b3");
  std::vector<QSymbol> out;
  for (std::size_t i = 1; i < 4; ++i) out.emplace_back(s[0].a, s[0].b * s[i].b);
  return out;
}

}  // namespace pfister
