#include "tabhash/poly_hash.hpp"

#include <string>

#include "tabhash/error.hpp"
#include "tabhash/generator.hpp"
#include "tabhash/universe.hpp"

namespace tabhash {

namespace {

void check_params(unsigned k, unsigned out_bits, std::uint64_t prime) {
  if (k < 1) throw ConfigError("polynomial family needs k >= 1");
  if (out_bits < 1 || out_bits > 64) throw ConfigError("out_bits must be in [1, 64]");
  if (prime < 2 || prime >= (std::uint64_t{1} << 63))
    throw ConfigError("prime must be in [2, 2^63)");
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  if (p == kMersenne61) return mul_mod_mersenne61(a, b);
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

}  // namespace

std::uint64_t mul_mod_mersenne61(std::uint64_t a, std::uint64_t b) noexcept {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = (static_cast<std::uint64_t>(prod) & kMersenne61) +
                    static_cast<std::uint64_t>(prod >> 61);
  r = (r & kMersenne61) + (r >> 61);
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

PolyHashParams PolyHashParams::make(unsigned k, unsigned out_bits, std::uint64_t seed,
                                    std::uint64_t prime) {
  check_params(k, out_bits, prime);
  PolyHashParams params;
  params.k = k;
  params.prime = prime;
  params.out_bits = out_bits;
  params.seed = seed;
  gen::WordStream words(seed, gen::Stream::kPoly);
  params.coefficients.resize(k);
  for (auto& a : params.coefficients) a = words.below(prime);
  return params;
}

PolyHashParams PolyHashParams::with_coefficients(std::vector<std::uint64_t> coefficients,
                                                 unsigned out_bits, std::uint64_t prime) {
  check_params(static_cast<unsigned>(coefficients.size()), out_bits, prime);
  for (std::uint64_t a : coefficients)
    if (a >= prime) throw ConfigError("coefficient not reduced mod p");
  PolyHashParams params;
  params.k = static_cast<unsigned>(coefficients.size());
  params.prime = prime;
  params.out_bits = out_bits;
  params.coefficients = std::move(coefficients);
  return params;
}

std::uint64_t poly_hash_unchecked(const PolyHashParams& params, std::uint64_t key) noexcept {
  const std::uint64_t p = params.prime;
  std::uint64_t h = 0;
  for (auto it = params.coefficients.rbegin(); it != params.coefficients.rend(); ++it) {
    h = mul_mod(h, key, p) + *it;
    if (h >= p) h -= p;
  }
  return h & low_mask(params.out_bits);
}

std::uint64_t poly_hash(const PolyHashParams& params, std::uint64_t key) {
  if (key >= params.prime)
    throw RangeError("key " + std::to_string(key) + " not below the prime modulus");
  return poly_hash_unchecked(params, key);
}

}  // namespace tabhash
