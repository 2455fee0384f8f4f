#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pfister/aniso_cert.hpp"
#include "pfister/quadform.hpp"

namespace pfister {

struct SearchBudget {
  /// Cap on enumerated candidates in the exhaustive stages.
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
  /// Total degree bound for polynomial coordinates in search.
  int degree_bound = 2;
  /// Seeded random candidates after the deterministic stages.
  int trials = 400;
  std::uint64_t seed = 1;
  /// Residue splits tried while looking for an anisotropy certificate.
  int cert_attempts = 4000;
};

enum class Tri { no, yes, unknown };
const char* tri_name(Tri t);

struct IsotropyResult {
  enum class Status { Found, ProvablyAnisotropic, Unknown };
  Status status = Status::Unknown;
  Vec vector;
  std::optional<AnisoCert> cert;
  std::string method;

  bool found() const { return status == Status::Found; }
  bool anisotropic() const { return status == Status::ProvablyAnisotropic; }
};

/// Nonzero v with q(v) = 0, a certificate of anisotropy, or Unknown.
///
/// Stages, first hit wins: zero block entries; exact decision for binary
/// forms; a two-block construction over finite fields; pairs of diagonal
/// entries with square ratio; 0/1 vectors; residue certificates; small
/// coordinates with one block solved exactly through wp; seeded random
/// coordinates with one block solved exactly.
IsotropyResult isotropic_vector(const QuadForm& q, const SearchBudget& budget = {});

/// Exact decision for c[a,b]: a zero vector or nullopt when anisotropic.
std::optional<Vec> binary_isotropic_vector(const ScaledBlock& blk);

}  // namespace pfister
