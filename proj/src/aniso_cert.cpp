#include "pfister/aniso_cert.hpp"

#include <map>
#include <mutex>

namespace pfister {

namespace {

bool finite_binary_anisotropic(const QuadForm& q) {
  const auto& blk = q.blocks().front();
  const FieldElem& a = blk.block.a;
  const FieldElem& b = blk.block.b;
  if (a.is_zero()) return false;
  // Projective points (1:0) and (x:1).
  for (const auto& x : q.field()->enumerate())
    if ((a * x.square() + x + b).is_zero()) return false;
  return true;
}

bool binary_anisotropic(const QuadForm& q) {
  const auto& blk = q.blocks().front();
  if (blk.block.a.is_zero() || blk.block.b.is_zero()) return false;
  return !in_wp_image(blk.block.a * blk.block.b);
}

bool leaf_holds(const AnisoCert& c) {
  switch (c.kind) {
    case AnisoCert::Kind::Empty:
      return c.form.empty();
    case AnisoCert::Kind::FiniteExhaustive:
      return c.form.field()->is_finite() && c.form.dim() == 2 && finite_binary_anisotropic(c.form);
    case AnisoCert::Kind::Binary:
      return c.form.dim() == 2 && binary_anisotropic(c.form);
    case AnisoCert::Kind::Residue:
      return false;
  }
  return false;
}

std::optional<AnisoCert> leaf_for(const QuadForm& q) {
  AnisoCert c(q);
  if (q.empty()) {
    c.kind = AnisoCert::Kind::Empty;
  } else if (q.dim() == 2 && q.field()->is_finite()) {
    c.kind = AnisoCert::Kind::FiniteExhaustive;
  } else if (q.dim() == 2) {
    c.kind = AnisoCert::Kind::Binary;
  } else {
    return std::nullopt;
  }
  if (!leaf_holds(c)) return std::nullopt;
  return c;
}

std::optional<AnisoCert> chain_cert(const QuadForm& q, const std::vector<std::string>& chain, std::size_t depth) {
  if (auto leaf = leaf_for(q)) return leaf;
  if (q.dim() == 2 || depth >= chain.size()) return std::nullopt;
  int var = q.field()->var_index(chain[depth]);
  if (var < 0) return std::nullopt;
  Place p = zero_place(*q.field(), var);
  auto split = residue_split(q, p);
  if (!split) return std::nullopt;
  auto c0 = chain_cert(split->first, chain, depth + 1);
  if (!c0) return std::nullopt;
  auto c1 = chain_cert(split->second, chain, depth + 1);
  if (!c1) return std::nullopt;
  AnisoCert node(q);
  node.kind = AnisoCert::Kind::Residue;
  node.place = p;
  node.children.push_back(std::move(*c0));
  node.children.push_back(std::move(*c1));
  return node;
}

const std::vector<MPoly>& cached_irreducibles(int k, int nvars, int var, int max_degree) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int>, std::vector<MPoly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(k, nvars, var, max_degree);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, univariate_irreducibles(k, nvars, var, max_degree)).first;
  return it->second;
}

std::vector<Place> candidate_places(const QuadForm& q, const CertSearchLimits& limits) {
  const Field& f = *q.field();
  std::vector<Place> out;
  for (int v = 0; v < f.nvars(); ++v) {
    out.push_back(zero_place(f, v));
    int dmax = 0;
    std::uint64_t size = 1;
    while (dmax < limits.max_place_degree && f.degree() * (dmax + 1) <= GF2k::kMaxDegree &&
           size * f.gf().order() <= 256) {
      size *= f.gf().order();
      ++dmax;
    }
    std::vector<MPoly> contents;
    for (const auto& blk : q.blocks()) {
      for (const FieldElem* x : {&blk.scale, &blk.block.a, &blk.block.b}) {
        if (x->is_zero()) continue;
        for (const MPoly* p : {&x->num(), &x->den()}) {
          MPoly c = var_content(*p, v);
          if (c.degree_in(v) > 0) contents.push_back(std::move(c));
        }
      }
    }
    if (!contents.empty()) {
      for (const MPoly& irr : cached_irreducibles(f.degree(), f.nvars(), v, dmax)) {
        if (irr.size() == 1) continue;  // the zero place is already listed
        for (const MPoly& c : contents) {
          if (c.degree_in(v) >= irr.degree_in(v) && c.divisible_by(irr)) {
            out.push_back(poly_place(f, v, irr));
            break;
          }
        }
      }
    }
    out.push_back(infinity_place(f, v));
  }
  return out;
}

std::optional<AnisoCert> search(const QuadForm& q, const CertSearchLimits& limits, int& attempts) {
  if (auto leaf = leaf_for(q)) return leaf;
  if (q.dim() == 2 || q.field()->is_finite()) return std::nullopt;
  for (const Place& p : candidate_places(q, limits)) {
    if (++attempts > limits.max_attempts) return std::nullopt;
    std::optional<std::pair<QuadForm, QuadForm>> split;
    try {
      split = residue_split(q, p);
    } catch (const std::invalid_argument&) {
      continue;
    } catch (const std::overflow_error&) {
      continue;
    }
    if (!split) continue;
    auto c0 = search(split->first, limits, attempts);
    if (!c0) continue;
    auto c1 = search(split->second, limits, attempts);
    if (!c1) continue;
    AnisoCert node(q);
    node.kind = AnisoCert::Kind::Residue;
    node.place = p;
    node.children.push_back(std::move(*c0));
    node.children.push_back(std::move(*c1));
    return node;
  }
  return std::nullopt;
}

}  // namespace

int AnisoCert::node_count() const {
  int n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

const char* kind_name(AnisoCert::Kind k) {
  switch (k) {
    case AnisoCert::Kind::Empty:
      return "empty";
    case AnisoCert::Kind::FiniteExhaustive:
      return "finite_exhaustive";
    case AnisoCert::Kind::Binary:
      return "binary";
    case AnisoCert::Kind::Residue:
      return "residue";
  }
  return "?";
}

std::optional<std::pair<QuadForm, QuadForm>> residue_split(const QuadForm& q, const Place& place) {
  ResidueMap res(q.field(), place);
  const FieldElem pi = uniformizer(q.field(), place);
  QuadForm q0(res.target()), q1(res.target());
  for (const auto& blk : q.blocks()) {
    const FieldElem& a = blk.block.a;
    const FieldElem& b = blk.block.b;
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    int va = valuation(a, place);
    int vb = valuation(b, place);
    if (va + vb != 0) return std::nullopt;
    // c[a,b] = (c s)[a s, b/s] with s = pi^{-va}
    const int m = -va;
    FieldElem a1 = m ? a * pi.pow(m) : a;
    FieldElem b1 = m ? b * pi.pow(-m) : b;
    FieldElem c1 = m ? blk.scale * pi.pow(m) : blk.scale;
    int vc = valuation(c1, place);
    FieldElem unit = vc ? c1 * pi.pow(-vc) : c1;
    QuadForm& dst = (vc % 2 == 0) ? q0 : q1;
    dst.add_block(res(unit), res(a1), res(b1));
  }
  return std::make_pair(std::move(q0), std::move(q1));
}

bool replay(const AnisoCert& cert) {
  if (cert.kind != AnisoCert::Kind::Residue) return cert.children.empty() && leaf_holds(cert);
  if (!cert.place || cert.children.size() != 2) return false;
  const Place& p = *cert.place;
  if (p.var < 0 || p.var >= cert.form.field()->nvars()) return false;
  std::optional<std::pair<QuadForm, QuadForm>> split;
  try {
    if (!p.at_infinity) poly_place(*cert.form.field(), p.var, p.poly);
    split = residue_split(cert.form, p);
  } catch (const std::exception&) {
    return false;
  }
  if (!split) return false;
  if (!(split->first == cert.children[0].form) || !(split->second == cert.children[1].form)) return false;
  return replay(cert.children[0]) && replay(cert.children[1]);
}

bool certifies(const AnisoCert& cert, const QuadForm& q) { return cert.form == q && replay(cert); }

std::optional<AnisoCert> residue_anisotropy_cert(const QuadForm& q, const std::vector<std::string>& chain) {
  return chain_cert(q, chain, 0);
}

std::optional<AnisoCert> find_aniso_cert(const QuadForm& q, const CertSearchLimits& limits) {
  int attempts = 0;
  return search(q, limits, attempts);
}

}  // namespace pfister
