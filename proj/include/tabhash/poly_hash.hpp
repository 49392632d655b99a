#pragma once

#include <cstdint>
#include <vector>

namespace tabhash {

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

// Degree-(k-1) polynomial over Z_p, the classic k-independent family:
//   h(x) = (sum_i coefficients[i] * x^i mod p) & (2^out_bits - 1)
// coefficients[0] is the constant term.
struct PolyHashParams {
  unsigned k = 2;
  std::uint64_t prime = kMersenne61;
  unsigned out_bits = 32;
  std::vector<std::uint64_t> coefficients;
  std::uint64_t seed = 0;

  // Coefficients uniform in [prime], drawn from stream kPoly of `seed` by
  // rejection. `prime` must be prime; only 2^61 - 1 uses the fast reduction.
  static PolyHashParams make(unsigned k, unsigned out_bits, std::uint64_t seed,
                             std::uint64_t prime = kMersenne61);
  // Explicit coefficients (each < prime).
  static PolyHashParams with_coefficients(std::vector<std::uint64_t> coefficients,
                                          unsigned out_bits, std::uint64_t prime = kMersenne61);

  bool operator==(const PolyHashParams&) const = default;
};

std::uint64_t mul_mod_mersenne61(std::uint64_t a, std::uint64_t b) noexcept;

// Horner evaluation. Throws RangeError if key >= prime.
std::uint64_t poly_hash(const PolyHashParams& params, std::uint64_t key);
std::uint64_t poly_hash_unchecked(const PolyHashParams& params, std::uint64_t key) noexcept;

}  // namespace tabhash
