#include "pfister/gf2k.hpp"

#include <array>
#include <memory>
#include <mutex>

namespace pfister {

namespace {

// Lexicographically smallest irreducible polynomial of each degree; degree 1
// uses x+1 so that the generator g equals 1 in F_2.
constexpr std::array<std::uint32_t, 17> kModuli = {
    0x0,    0x3,    0x7,    0xb,    0x13,   0x25,   0x43,    0x83,   0x11b,
    0x203,  0x409,  0x805,  0x1009, 0x201b, 0x4021, 0x8003, 0x1002b};

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t mod, int k) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << k)) a ^= mod;
  }
  return r;
}

}  // namespace

std::uint32_t GF2k::modulus_for(int k) {
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("GF(2^k): k must be in [1,16]");
  return kModuli[static_cast<std::size_t>(k)];
}

const GF2k& GF2k::get(int k) {
  static std::array<std::unique_ptr<GF2k>, kMaxDegree + 1> cache;
  static std::array<std::once_flag, kMaxDegree + 1> flags;
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("GF(2^k): k must be in [1,16]");
  auto idx = static_cast<std::size_t>(k);
  std::call_once(flags[idx], [&] { cache[idx].reset(new GF2k(k)); });
  return *cache[idx];
}

GF2k::GF2k(int k) : k_(k), modulus_(modulus_for(k)) {
  const std::uint32_t n = order() - 1;
  exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  log_.assign(order(), 0);
  // Smallest primitive element by brute force; deterministic across runs.
  for (std::uint32_t cand = (k == 1 ? 1u : 2u); cand < order(); ++cand) {
    std::uint32_t x = 1;
    std::uint32_t period = 0;
    do {
      x = slow_mul(x, cand, modulus_, k_);
      ++period;
    } while (x != 1);
    if (period != n) continue;
    x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = slow_mul(x, cand, modulus_, k_);
    }
    break;
  }
  for (std::uint32_t i = n; i < exp_.size(); ++i) exp_[i] = exp_[i - n];
}

GFElem GF2k::pow(GFElem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t n = order() - 1;
  return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % n)) % n)];
}

GFElem GF2k::sqrt(GFElem a) const { return pow(a, std::uint64_t{1} << (k_ - 1)); }

GFElem GF2k::trace(GFElem a) const {
  GFElem t = 0;
  GFElem x = a;
  for (int i = 0; i < k_; ++i) {
    t ^= x;
    x = square(x);
  }
  return t;
}

std::optional<GFElem> GF2k::solve_artin_schreier(GFElem a) const {
  if (trace(a) != 0) return std::nullopt;
  for (GFElem l = 0; l < order(); ++l) {
    if ((square(l) ^ l) == a) return l;
  }
  return std::nullopt;  // unreachable for trace-zero input
}

GFElem GF2k::reduce(std::uint64_t poly) const {
  for (int bit = 63; bit >= k_; --bit) {
    if (poly & (std::uint64_t{1} << bit)) poly ^= static_cast<std::uint64_t>(modulus_) << (bit - k_);
  }
  return static_cast<GFElem>(poly);
}

std::string GF2k::to_string(GFElem a) const {
  if (a == 0) return "0";
  if (k_ == 1) return "1";
  std::string out;
  for (int i = k_ - 1; i >= 0; --i) {
    if (!(a & (1u << i))) continue;
    if (!out.empty()) out += "+";
    if (i == 0)
      out += "1";
    else if (i == 1)
      out += "g";
    else
      out += "g^" + std::to_string(i);
  }
  return out;
}

GFEmbedding::GFEmbedding(int from_degree, int to_degree) : from_(from_degree), to_(to_degree) {
  if (to_degree % from_degree != 0) throw std::invalid_argument("GF embedding: degree does not divide");
  const GF2k& small = GF2k::get(from_degree);
  const GF2k& big = GF2k::get(to_degree);
  const std::uint32_t mod = small.modulus();
  GFElem root = 0;
  bool found = false;
  for (GFElem r = 0; r < big.order() && !found; ++r) {
    GFElem acc = 0;
    GFElem power = 1;
    for (int i = 0; i <= from_degree; ++i) {
      if (mod & (1u << i)) acc ^= power;
      power = big.mul(power, r);
    }
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw std::logic_error("GF embedding: modulus has no root");
  table_.resize(small.order());
  for (GFElem a = 0; a < small.order(); ++a) {
    GFElem acc = 0;
    GFElem power = 1;
    for (int i = 0; i < from_degree; ++i) {
      if (a & (1u << i)) acc ^= power;
      power = big.mul(power, root);
    }
    table_[a] = acc;
  }
}

}  // namespace pfister
