#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfister/isotropy.hpp"
#include "pfister/quadform.hpp"

namespace pfister {

/// The quaternion algebra [a,b) with u^2 + u = a, v^2 = b, vu = (u+1)v.
struct QSymbol {
  FieldElem a;
  FieldElem b;

  QSymbol(FieldElem a_, FieldElem b_);
  const FieldPtr& field() const { return a.field(); }
  std::string to_string() const;
  friend bool operator==(const QSymbol& p, const QSymbol& q) { return p.a == q.a && p.b == q.b; }
};

/// Side condition of a move failed, or the move does not fit the list.
class MoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Elementary rewrite of a list of symbols.
///   ASShift(l)      [a,b)          -> [a + l^2 + l, b)
///   NormScale(al)   [a, b N(al))   -> [a, b)            al != 0, N = N_a
///   SlotPush(al)    [a,b)          -> [a + bN, bN)      N = N_a(al) != 0
///   Exchange(j)     at (i, j): ([a1,b1), [a2,b2)) -> ([a1, b1 b2), [a1 + a2, b2))
struct RewriteMove {
  enum class Kind { ASShift, NormScale, SlotPush, Exchange };
  Kind kind;
  std::optional<FieldElem> lambda;
  /// Coordinates (x, y) of x + y*theta over the left slot of the symbol.
  std::optional<std::pair<FieldElem, FieldElem>> alpha;
  int partner = -1;

  static RewriteMove as_shift(FieldElem l);
  static RewriteMove norm_scale(FieldElem x, FieldElem y);
  static RewriteMove slot_push(FieldElem x, FieldElem y);
  static RewriteMove exchange(int partner);
};

const char* move_kind_name(RewriteMove::Kind k);
std::optional<RewriteMove::Kind> parse_move_kind(const std::string& name);

struct CertStep {
  int position;
  RewriteMove move;
};

struct Certificate {
  std::vector<QSymbol> start;
  std::vector<CertStep> moves;
  std::vector<QSymbol> end;
};

std::vector<QSymbol> apply_move(const std::vector<QSymbol>& symbols, int pos, const RewriteMove& m);
/// Replays the steps from start; fills end.
Certificate make_certificate(std::vector<QSymbol> start, std::vector<CertStep> moves);
bool verify_certificate(const Certificate& c);

/// a = l^2 + l + m^2 b.
struct SplitWitness {
  FieldElem lambda;
  FieldElem mu;
};
bool check_split_witness(const QSymbol& q, const SplitWitness& w);

struct SplitResult {
  enum class Verdict { Split, Division, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<SplitWitness> witness;
  std::optional<AnisoCert> cert;  // for the norm form when Division
};
const char* verdict_name(SplitResult::Verdict v);

SplitResult split_test(const QSymbol& q, const SearchBudget& budget = {});
/// <<b; a]]
PfisterDesc norm_form(const QSymbol& q);

/// alpha with N_a(alpha) = c, given that [a, c) is split by w.
EtaleElem norm_preimage(const FieldElem& a, const FieldElem& c, const SplitWitness& w);

/// A move chain ending in symbols that are each split by an explicit witness,
/// which shows the tensor product of the start symbols is split.
struct ProductSplitCert {
  Certificate chain;
  std::vector<SplitWitness> witnesses;
};
bool verify_product_split(const ProductSplitCert& c);

struct IsoResult {
  Tri verdict = Tri::unknown;
  std::optional<Certificate> certificate;
};
IsoResult is_isomorphic(const QSymbol& p, const QSymbol& q, const SearchBudget& budget = {});

/// l and alpha_i with l^2 + l + A + sum b_i N_{a_i}(alpha_i) = 0. Zero alpha_i
/// are returned when b_i N(alpha_i) vanishes.
struct SlotSolution {
  FieldElem lambda;
  std::vector<EtaleElem> alphas;
};
std::optional<SlotSolution> solve_slot_equation(const FieldElem& A, const std::vector<QSymbol>& symbols,
                                                const SearchBudget& budget = {});

/// Certificates rewriting each symbol to [s, b_i') by SlotPush then ASShift.
struct CommonSlot {
  FieldElem s;
  std::vector<Certificate> certs;
  std::vector<std::optional<EtaleElem>> pushes;
  std::vector<FieldElem> shifts;
};
/// Requires the tensor product of the symbols to be split when there are
/// three or more of them; nullopt means the search budget ran out.
std::optional<CommonSlot> common_left_slot(const std::vector<QSymbol>& qs, const SearchBudget& budget = {});

struct LinkageResult {
  Tri verdict = Tri::unknown;  // yes or unknown
  std::optional<FieldElem> b;
  std::vector<Certificate> certs;
};
/// Search for a common right slot by norm scaling.
LinkageResult inseparably_linked(const std::vector<QSymbol>& qs, const SearchBudget& budget = {});

/// Hyperbolicity of the sum of the norm forms of a triple with split product,
/// computed on the 3-fold Pfister form <<b1', b2'; s]] after moving the triple
/// to a common left slot s.
Tri triple_sigma_hyperbolic(const std::vector<QSymbol>& qs, const SearchBudget& budget = {});

/// ([a,b1),[a,b2),[a,b3),[a,b1 b2 b3)) -> ([a, b1 b2), [a, b1 b3), [a, b1 b4)).
std::vector<QSymbol> linked_quad_to_triple(const std::vector<QSymbol>& s);

}  // namespace pfister
