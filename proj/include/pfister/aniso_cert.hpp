#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfister/place.hpp"
#include "pfister/quadform.hpp"

namespace pfister {

/// Replayable proof that a form is anisotropic.
///
/// A residue node rewrites every block c[a,b] at a place as u pi^e [a', b']
/// with units u, a', b' and e in {0,1}; the residues of the e = 0 blocks and
/// of the e = 1 blocks form two forms over the residue field, each certified
/// by a child. Leaves are the empty form, a binary form c[a,b] with ab not in
/// wp(F), or a binary form over a finite field checked point by point.
struct AnisoCert {
  enum class Kind { Empty, FiniteExhaustive, Binary, Residue };

  Kind kind = Kind::Empty;
  QuadForm form;
  std::optional<Place> place;
  std::vector<AnisoCert> children;

  explicit AnisoCert(QuadForm q) : form(std::move(q)) {}
  int node_count() const;
};

const char* kind_name(AnisoCert::Kind k);

/// Units-and-uniformizer decomposition of q at a place, or nullopt when some
/// block has a zero entry or v(a) + v(b) != 0.
std::optional<std::pair<QuadForm, QuadForm>> residue_split(const QuadForm& q, const Place& place);

/// Check a certificate from scratch against its own form.
bool replay(const AnisoCert& cert);
/// Check that cert proves anisotropy of exactly q.
bool certifies(const AnisoCert& cert, const QuadForm& q);

/// Certificate along zero places of the named variables, used in order for
/// every branch; nullopt when the shape does not fit.
std::optional<AnisoCert> residue_anisotropy_cert(const QuadForm& q, const std::vector<std::string>& chain);

struct CertSearchLimits {
  int max_place_degree = 4;   // also capped by q^d <= 2^8 and kd <= 16
  int max_attempts = 4000;    // residue splits tried in total
};

/// Depth-first search over zero, infinite and small irreducible places.
std::optional<AnisoCert> find_aniso_cert(const QuadForm& q, const CertSearchLimits& limits = {});

}  // namespace pfister
