#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfister/brauer.hpp"

namespace pfister {

/// phi_1 = <<b1, a_1..a_{n-1}]], phi_2 = <<b2, ...]], phi_3 = <<b1 b2, ...]],
/// where a_1..a_{n-2} are bilinear slots and a_{n-1} is the separable slot.
struct LinkedTriple {
  std::vector<FieldElem> slots;
  FieldElem b1;
  FieldElem b2;

  LinkedTriple(std::vector<FieldElem> slots_, FieldElem b1_, FieldElem b2_);
  int n() const { return static_cast<int>(slots.size()) + 1; }
  const FieldPtr& field() const { return b1.field(); }
  /// <<a_1, ..., a_{n-1}]]
  PfisterDesc pi() const;
  /// i in {0, 1, 2}
  PfisterDesc phi(int i) const;
  /// <<b1, b2, a_1, ..., a_{n-1}]], the Witt class of the sum of the phi_i.
  PfisterDesc sigma_class() const;
};

struct QuadInstance {
  std::vector<QSymbol> q;  // four symbols
  std::optional<ProductSplitCert> split_witness;
};

/// b_slot -> b_slot * rest(v), where rest is the Pfister form of the other
/// slots, or the separable slot a -> a + l^2 + l.
struct FormStep {
  enum class Kind { ScaleByValue, ASShift };
  Kind kind;
  int slot = 0;
  Vec vector;
  std::optional<FieldElem> lambda;
};

struct FormCertificate {
  PfisterDesc start;
  std::vector<FormStep> steps;
  PfisterDesc end;
};

PfisterDesc apply_form_step(const PfisterDesc& d, const FormStep& s);
FormCertificate make_form_certificate(PfisterDesc start, std::vector<FormStep> steps);
bool verify_form_certificate(const FormCertificate& c);

struct DescentReport {
  enum class Kind { Triple, Quad };
  enum class Status { success, budget_exhausted };

  Kind kind = Kind::Triple;
  Status status = Status::budget_exhausted;
  std::string case_tag;
  /// The descent field L = k(generators); descended objects live in
  /// descended_field, whose variables are named by generator_names.
  std::vector<std::string> generator_names;
  std::vector<FieldElem> generators;
  FieldPtr descended_field;

  std::vector<PfisterDesc> forms;
  std::vector<FormCertificate> form_certs;
  std::optional<AnisoCert> aniso_cert;

  std::vector<QSymbol> symbols;
  std::vector<Certificate> symbol_certs;
  std::optional<ProductSplitCert> product_split;
  /// c_1..c_4 and lambda with lambda^2 + lambda = c_1 + c_2 + c_3 + c_4.
  std::vector<FieldElem> c_values;
  std::optional<FieldElem> c_sum_root;
  /// Split verdicts of [c_i, d_i d_4).
  std::vector<std::string> h_verdicts;
  /// Case C: original index of the symbol treated as position 1, then the rest.
  std::vector<int> permutation;
  std::vector<std::string> notes;
};

const char* status_name(DescentReport::Status s);

DescentReport triple_descend(const LinkedTriple& t, const SearchBudget& budget = {});
DescentReport quad_descend(const QuadInstance& inst, const SearchBudget& budget = {});

bool verify_descent(const DescentReport& r, const LinkedTriple& original);
bool verify_descent(const DescentReport& r, const QuadInstance& original);

}  // namespace pfister
