#include "pfister/fixtures.hpp"

#include <stdexcept>

namespace pfister {

FieldPtr Instance::field() const {
  return std::visit(
      [](const auto& p) -> FieldPtr {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, QuadInstance>) return p.q.front().field();
        else if constexpr (std::is_same_v<T, std::vector<PfisterDesc>>) return p.front().as_slot.field();
        else return p.field();
      },
      payload);
}

std::string Instance::kind() const {
  static const char* names[] = {"form", "symbol", "triple", "quad", "pfister_tuple"};
  return names[payload.index()];
}

namespace {

std::vector<std::string> numbered(const std::string& stem, int from, int to) {
  std::vector<std::string> v;
  for (int i = from; i <= to; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

// Nonconstant polynomial of degree <= 1.
FieldElem small_poly(const FieldPtr& F, Rng& rng) {
  for (;;) {
    FieldElem x = F->random_poly(rng, 1);
    if (!x.is_constant()) return x;
  }
}

// Disguise q by NormScale^{-1}(al) then ASShift(l); returns the moves undoing it.
struct Disguise {
  QSymbol q;
  std::vector<RewriteMove> undo;
};

Disguise disguise(const QSymbol& q, Rng& rng, bool scale) {
  const FieldPtr& F = q.field();
  Disguise d{q, {}};
  std::optional<EtaleElem> al;
  if (scale) {
    for (;;) {
      EtaleElem cand{q.a, F->random_poly(rng, 1), F->random_poly(rng, 1)};
      if (!cand.is_zero() && !norm_sep(q.a, cand).is_zero()) {
        al = cand;
        break;
      }
    }
    d.q = QSymbol(q.a, q.b * norm_sep(q.a, *al));
  }
  const FieldElem l = F->random_poly(rng, 1);
  if (!l.is_zero()) {
    d.q = QSymbol(d.q.a + l.wp(), d.q.b);
    d.undo.push_back(RewriteMove::as_shift(l));
  }
  if (al) d.undo.push_back(RewriteMove::norm_scale(al->x, al->y));
  return d;
}

// Disguises every symbol; returns the disguised list and the undo steps.
std::pair<std::vector<QSymbol>, std::vector<CertStep>> disguise_all(const std::vector<QSymbol>& core, Rng& rng,
                                                                     bool scale) {
  std::vector<QSymbol> out;
  std::vector<CertStep> undo;
  for (std::size_t i = 0; i < core.size(); ++i) {
    Disguise d = disguise(core[i], rng, scale);
    out.push_back(d.q);
    for (auto& m : d.undo) undo.push_back(CertStep{static_cast<int>(i), std::move(m)});
  }
  return {out, undo};
}

QuadInstance with_chain(std::vector<QSymbol> q, std::vector<CertStep> steps, std::vector<SplitWitness> ws) {
  QuadInstance inst{q, ProductSplitCert{make_certificate(q, std::move(steps)), std::move(ws)}};
  if (!verify_product_split(*inst.split_witness)) throw std::logic_error("fixture: split chain fails");
  return inst;
}

// Core [e_i, f_i) at the division positions and [e1, f4) at p (or none), with
// e_i = X + delta_i f_i f4, X = x^2 prod(f), and Q4 = [sum e, f4).
QuadInstance backwards_quad(const FieldPtr& F, const std::vector<int>& div, int p, const std::vector<FieldElem>& f,
                            const FieldElem& f4, const FieldElem& x, const std::optional<FieldElem>& e1, Rng& rng) {
  std::vector<bool> delta;
  FieldElem prod = F->one();
  for (const auto& fi : f) prod *= fi;
  if (p < 0) prod *= f4;
  const FieldElem X = x.square() * prod;
  std::vector<QSymbol> core(4, QSymbol(F->zero(), F->one()));
  FieldElem esum = F->zero();
  for (std::size_t k = 0; k < div.size(); ++k) {
    delta.push_back(draw(rng, 2) == 1);
    const FieldElem e = delta.back() ? X + f[k] * f4 : X;
    core[static_cast<std::size_t>(div[k])] = QSymbol(e, f[k]);
    esum += e;
  }
  if (p >= 0) {
    core[static_cast<std::size_t>(p)] = QSymbol(*e1, f4);
    esum += *e1;
  }
  core[3] = QSymbol(esum, f4);

  auto [q, steps] = disguise_all(core, rng, false);
  if (p >= 0) steps.push_back(CertStep{p, RewriteMove::exchange(3)});
  for (int i : div) steps.push_back(CertStep{i, RewriteMove::exchange(3)});
  for (std::size_t k = 0; k < div.size(); ++k)
    if (delta[k]) steps.push_back(CertStep{div[k], RewriteMove::slot_push(F->one(), F->zero())});
  for (std::size_t k = 1; k < div.size(); ++k) steps.push_back(CertStep{div[0], RewriteMove::exchange(div[k])});
  steps.push_back(CertStep{div[0], RewriteMove::norm_scale(f4, F->zero())});
  std::vector<SplitWitness> ws(4, SplitWitness{F->zero(), F->zero()});
  ws[static_cast<std::size_t>(div[0])] = SplitWitness{F->zero(), x};
  if (p >= 0) ws[static_cast<std::size_t>(p)] = SplitWitness{*e1, *e1 / f4};
  return with_chain(q, steps, ws);
}

}  // namespace

LinkedTriple generic_triple(int n) {
  if (n < 2 || n > 6) throw std::invalid_argument("generic_triple: need 2 <= n <= 6");
  auto vars = numbered("X", 1, n - 1);
  vars.push_back("Y1");
  vars.push_back("Y2");
  const FieldPtr F = Field::make(1, vars);
  std::vector<FieldElem> slots;
  for (int i = 0; i < n - 1; ++i) slots.push_back(F->var(i));
  return LinkedTriple(slots, F->var("Y1"), F->var("Y2"));
}

std::vector<PfisterDesc> canonical_monomial(int m) {
  if (m < 2 || m > 7) throw std::invalid_argument("canonical_monomial: need 2 <= m <= 7");
  auto vars = numbered("Y", 1, m - 1);
  vars.insert(vars.begin(), "X");
  const FieldPtr F = Field::make(1, vars);
  const FieldElem X = F->var("X");
  std::vector<PfisterDesc> out;
  FieldElem prod = F->one();
  for (int i = 1; i < m; ++i) {
    const FieldElem y = F->var(i);
    out.push_back(PfisterDesc{{y}, X});
    prod *= y;
  }
  out.push_back(PfisterDesc{{prod}, X});
  return out;
}

QuadInstance linked_quad() {
  const FieldPtr F = Field::make(1, {"a", "b1", "b2", "b3"});
  const FieldElem a = F->var("a"), b1 = F->var("b1"), b2 = F->var("b2"), b3 = F->var("b3");
  const FieldElem B = b1 * b2 * b3;
  std::vector<QSymbol> q{{a, b1}, {a, b2}, {a, b3}, {a, B}};
  // Exchanging Q4 against each Q_i leaves [0, b_i) and [a, B^2).
  std::vector<CertStep> steps;
  for (int i = 0; i < 3; ++i) steps.push_back(CertStep{3, RewriteMove::exchange(i)});
  std::vector<SplitWitness> ws(3, SplitWitness{F->zero(), F->zero()});
  ws.push_back(SplitWitness{a, a / B});
  return with_chain(q, steps, ws);
}

LinkedTriple hyperbolic_triple(int n, const std::string& variant, std::uint64_t seed) {
  if (n < 2 || n > 4) throw std::invalid_argument("hyperbolic_triple: need 2 <= n <= 4");
  if (variant != "sum" && variant != "norm") throw std::invalid_argument("hyperbolic_triple: variant is sum or norm");
  auto vars = numbered("X", 1, n - 1);
  vars.push_back("Y");
  const FieldPtr F = Field::make(1, vars);
  Rng rng(seed);
  std::vector<FieldElem> slots;
  for (int i = 0; i < n - 1; ++i) slots.push_back(F->var(i));
  FieldElem b1 = F->var("Y") + F->random_poly(rng, 1);
  while (b1.is_constant()) b1 = F->var("Y") + F->random_poly(rng, 1);
  if (variant == "sum") return LinkedTriple(slots, b1, b1 + F->one());
  // pi(v) with v supported on one block, y in {0, 1}: a witness the search can reach.
  LinkedTriple t(slots, b1, b1);
  const QuadForm P = expand_pfister(t.pi());
  for (;;) {
    Vec v = zero_vector(P);
    const std::size_t j = draw(rng, P.blocks().size());
    v[2 * j] = small_poly(F, rng);
    v[2 * j + 1] = draw(rng, 2) ? F->one() : F->zero();
    const FieldElem pv = eval(P, v);
    if (!pv.is_zero() && !pv.is_one()) return LinkedTriple(slots, b1, b1 * pv);
  }
}

QuadInstance case_a_quad(std::uint64_t seed) {
  const FieldPtr F = Field::make(1, {"c1", "c2", "c3", "d4"});
  const FieldElem c1 = F->var(0), c2 = F->var(1), c3 = F->var(2), d4 = F->var(3);
  std::vector<QSymbol> core{{c1, d4}, {c2, d4}, {c3, d4}, {c1 + c2 + c3, d4}};
  std::vector<CertStep> steps;
  std::vector<QSymbol> q = core;
  if (seed != 0) {
    Rng rng(seed);
    std::tie(q, steps) = disguise_all(core, rng, false);
  }
  std::vector<SplitWitness> ws;
  for (int i = 0; i < 3; ++i) {
    steps.push_back(CertStep{i, RewriteMove::exchange(3)});
    ws.push_back(SplitWitness{core[static_cast<std::size_t>(i)].a, core[static_cast<std::size_t>(i)].a / d4});
  }
  ws.push_back(SplitWitness{F->zero(), F->zero()});
  return with_chain(q, steps, ws);
}

QuadInstance case_b_quad(std::uint64_t seed) {
  const FieldPtr F = Field::make(1, {"f1", "f2", "f3", "f4", "x"});
  Rng rng(seed);
  return backwards_quad(F, {0, 1, 2}, -1, {F->var(0), F->var(1), F->var(2)}, F->var(3), F->var(4), std::nullopt,
                        rng);
}

QuadInstance case_c_quad(std::uint64_t seed) {
  const FieldPtr F = Field::make(1, {"e1", "f2", "f3", "f4", "x"});
  Rng rng(seed);
  const int p = static_cast<int>(draw(rng, 3));
  std::vector<int> div;
  for (int i = 0; i < 3; ++i)
    if (i != p) div.push_back(i);
  return backwards_quad(F, div, p, {F->var(1), F->var(2)}, F->var(3), F->var(4), F->var(0), rng);
}

QuadInstance split_quad(std::uint64_t seed) {
  const FieldPtr F = Field::make(2);
  const auto elems = F->enumerate();
  Rng rng(seed);
  std::vector<QSymbol> q;
  std::vector<SplitWitness> ws;
  for (int i = 0; i < 4; ++i) {
    const FieldElem a = elems[draw(rng, elems.size())];
    const FieldElem b = elems[1 + draw(rng, elems.size() - 1)];
    q.emplace_back(a, b);
    ws.push_back(*split_test(q.back()).witness);
  }
  return with_chain(q, {}, ws);
}

QuadInstance random_quad(std::uint64_t seed) {
  const FieldPtr F = Field::make(1, {"t1", "t2"});
  Rng rng(seed);
  const FieldElem a = small_poly(F, rng);
  std::vector<FieldElem> b;
  for (int i = 0; i < 3; ++i) b.push_back(F->random_nonzero_poly(rng, 1));
  const FieldElem B = b[0] * b[1] * b[2];
  std::vector<QSymbol> core{{a, b[0]}, {a, b[1]}, {a, b[2]}, {a, B}};
  auto [q, steps] = disguise_all(core, rng, true);
  for (int i = 0; i < 3; ++i) steps.push_back(CertStep{3, RewriteMove::exchange(i)});
  std::vector<SplitWitness> ws(3, SplitWitness{F->zero(), F->zero()});
  ws.push_back(SplitWitness{a, a / B});
  return with_chain(q, steps, ws);
}

const std::vector<std::string>& fixture_kinds() {
  static const std::vector<std::string> k{"generic_triple", "canonical_monomial", "linked_quad",
                                          "hyperbolic_triple", "case_a", "case_b",
                                          "case_c", "split_quad", "random_quad"};
  return k;
}

Instance make_fixture(const std::string& kind, const FixtureParams& p) {
  if (kind == "generic_triple") return Instance{generic_triple(p.n), std::nullopt};
  if (kind == "canonical_monomial") return Instance{canonical_monomial(p.m), std::nullopt};
  if (kind == "linked_quad") return Instance{linked_quad(), std::nullopt};
  if (kind == "hyperbolic_triple") return Instance{hyperbolic_triple(p.n, p.variant, p.seed), std::nullopt};
  if (kind == "case_a") return Instance{case_a_quad(p.seed), std::nullopt};
  if (kind == "case_b") return Instance{case_b_quad(p.seed), std::nullopt};
  if (kind == "case_c") return Instance{case_c_quad(p.seed), std::nullopt};
  if (kind == "split_quad") return Instance{split_quad(p.seed), std::nullopt};
  if (kind == "random_quad") return Instance{random_quad(p.seed), std::nullopt};
  throw std::invalid_argument("unknown fixture kind: " + kind);
}

}  // namespace pfister
