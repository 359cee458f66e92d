#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "sboxevo/sbox.hpp"

namespace sboxevo {

// Polynomials over GF(2) are bit-encoded: bit i is the coefficient of x^i.

inline int poly_degree(std::uint32_t p) {
  return p == 0 ? -1 : std::bit_width(p) - 1;
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint32_t m) {
  const int dm = poly_degree(m);
  while (a != 0) {
    const int da = 63 - std::countl_zero(a);
    if (da < dm) break;
    a ^= static_cast<std::uint64_t>(m) << (da - dm);
  }
  return a;
}

// trial division against all polynomials of degree up to deg(p)/2
inline bool poly_irreducible(std::uint32_t p) {
  const int d = poly_degree(p);
  if (d < 1) return false;
  if (d == 1) return true;
  if ((p & 1u) == 0) return false;  // divisible by x
  for (std::uint32_t q = 2; poly_degree(q) <= d / 2; ++q) {
    if (poly_mod(p, q) == 0) return false;
  }
  return true;
}

// GF(2^n) with a fixed irreducible modulus of degree n.
struct FieldSpec {
  int n = 0;
  std::uint32_t poly = 0;

  std::uint32_t order() const { return 1u << n; }
  bool operator==(const FieldSpec&) const = default;
};

inline FieldSpec make_field(int n, std::uint32_t poly) {
  if (n < kMinBits || n > kMaxBits) {
    throw std::invalid_argument("field bit-width must be in [3,10], got " +
                                std::to_string(n));
  }
  if (poly_degree(poly) != n) {
    throw std::invalid_argument("field polynomial must have degree " +
                                std::to_string(n));
  }
  if (!poly_irreducible(poly)) {
    throw std::invalid_argument("field polynomial is not irreducible");
  }
  return FieldSpec{n, poly};
}

// Minimal-weight moduli; any irreducible choice yields the same delta/beta
// values, so these are fixed once for reproducibility.
inline FieldSpec default_field(int n) {
  switch (n) {
    case 3: return FieldSpec{3, 0x0B};     // x^3 + x + 1
    case 4: return FieldSpec{4, 0x13};     // x^4 + x + 1
    case 5: return FieldSpec{5, 0x25};     // x^5 + x^2 + 1
    case 6: return FieldSpec{6, 0x43};     // x^6 + x + 1
    case 7: return FieldSpec{7, 0x83};     // x^7 + x + 1
    case 8: return FieldSpec{8, 0x11B};    // x^8 + x^4 + x^3 + x + 1
    case 9: return FieldSpec{9, 0x211};    // x^9 + x^4 + 1
    case 10: return FieldSpec{10, 0x409};  // x^10 + x^3 + 1
    default:
      throw std::invalid_argument("no default field for n=" + std::to_string(n));
  }
}

inline std::uint32_t gf_mul(const FieldSpec& fs, std::uint32_t a, std::uint32_t b) {
  std::uint32_t acc = 0;
  std::uint32_t shifted = a;
  while (b != 0) {
    if (b & 1u) acc ^= shifted;
    b >>= 1;
    shifted <<= 1;
    if (shifted & fs.order()) shifted ^= fs.poly;
  }
  return acc;
}

// x^d with 0^0 = 1 and 0^d = 0 for d > 0
inline std::uint32_t gf_pow(const FieldSpec& fs, std::uint32_t x, std::uint32_t d) {
  std::uint32_t result = 1;
  std::uint32_t base = x;
  while (d != 0) {
    if (d & 1u) result = gf_mul(fs, result, base);
    base = gf_mul(fs, base, base);
    d >>= 1;
  }
  return result;
}

// Lookup table of x -> x^d over GF(2^n); a permutation iff gcd(d, 2^n-1) = 1.
inline SBox power_map(const FieldSpec& fs, std::uint32_t d) {
  std::vector<std::uint16_t> table(fs.order());
  for (std::uint32_t x = 0; x < fs.order(); ++x) {
    table[x] = static_cast<std::uint16_t>(gf_pow(fs, x, d));
  }
  return make_sbox(fs.n, std::move(table));
}

// x^(2^n - 2): field inversion extended by 0 -> 0
inline SBox inverse_map(int n) {
  const FieldSpec fs = default_field(n);
  return power_map(fs, fs.order() - 2);
}

// x^(2^i + 1); a permutation when gcd(2^i + 1, 2^n - 1) = 1
inline SBox gold_map(int n, int i) {
  const FieldSpec fs = default_field(n);
  return power_map(fs, (1u << i) + 1);
}

}  // namespace sboxevo
