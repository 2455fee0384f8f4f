#pragma once

#include <optional>
#include <vector>

#include "pfister/isotropy.hpp"

namespace pfister {

/// q = H(v, w) _|_ rest, where H is a hyperbolic plane with q(v) = q(w) = 0,
/// b(v,w) = 1. basis[2i], basis[2i+1] are the coordinates of block i of rest
/// inside the ambient space of q.
struct HyperbolicSplit {
  Vec v;
  Vec w;
  QuadForm rest;
  std::vector<Vec> basis;
};

HyperbolicSplit split_off_hyperbolic(const QuadForm& q, const Vec& v);
/// Exact check that the split is an isometric decomposition of q.
bool verify_split(const QuadForm& q, const HyperbolicSplit& s);

struct WittDecomposition {
  enum class Status { exact, lower_bound };
  int index = 0;
  QuadForm aniso_part;
  Status status = Status::exact;
  std::optional<AnisoCert> cert;  // for the anisotropic part when exact
  std::vector<Vec> isotropic_vectors;  // one per split, in the form being split

  explicit WittDecomposition(QuadForm q) : aniso_part(std::move(q)) {}
};

WittDecomposition witt_decompose(const QuadForm& q, const SearchBudget& budget = {});
Tri is_hyperbolic(const QuadForm& q, const SearchBudget& budget = {});
Tri is_isometric(const QuadForm& p, const QuadForm& q, const SearchBudget& budget = {});

}  // namespace pfister
