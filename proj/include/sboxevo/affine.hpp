#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sboxevo/rng.hpp"
#include "sboxevo/sbox.hpp"

namespace sboxevo {

// x -> M*x + c over GF(2); rows[r] holds the column mask of matrix row r.
struct AffineMap {
  int n = 0;
  std::vector<std::uint16_t> rows;
  std::uint16_t constant = 0;

  bool operator==(const AffineMap&) const = default;
};

inline int gf2_rank(std::vector<std::uint16_t> rows, int n) {
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if ((rows[r] >> col) & 1u) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r != rank && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

inline bool is_invertible(const AffineMap& m) {
  return gf2_rank(m.rows, m.n) == m.n;
}

inline AffineMap identity_affine(int n) {
  AffineMap m{n, std::vector<std::uint16_t>(n), 0};
  for (int r = 0; r < n; ++r) m.rows[r] = static_cast<std::uint16_t>(1u << r);
  return m;
}

// Rejection-samples random binary matrices until full rank (a constant
// expected number of attempts), then draws the constant.
// Draw order: n row masks per attempt, then one constant.
inline AffineMap random_affine_permutation(int n, RandomSource& rng) {
  const std::uint32_t size = 1u << n;
  std::vector<std::uint16_t> rows(n);
  do {
    for (auto& row : rows) row = static_cast<std::uint16_t>(rng.below(size));
  } while (gf2_rank(rows, n) != n);
  const auto constant = static_cast<std::uint16_t>(rng.below(size));
  return AffineMap{n, std::move(rows), constant};
}

inline std::uint16_t apply(const AffineMap& m, std::uint32_t x) {
  std::uint32_t y = m.constant;
  for (int r = 0; r < m.n; ++r) {
    y ^= static_cast<std::uint32_t>(std::popcount(static_cast<std::uint32_t>(m.rows[r] & x)) & 1) << r;
  }
  return static_cast<std::uint16_t>(y);
}

inline SBox as_sbox(const AffineMap& m) {
  std::vector<std::uint16_t> table(std::size_t{1} << m.n);
  for (std::uint32_t x = 0; x < table.size(); ++x) table[x] = apply(m, x);
  return make_sbox(m.n, std::move(table));
}

// A o F o B as a lookup table: table[x] = A(F(B(x)))
inline SBox apply_affine(const AffineMap& a, const SBox& f, const AffineMap& b) {
  if (a.n != f.n || b.n != f.n) {
    throw std::invalid_argument("apply_affine: bit-width mismatch");
  }
  std::vector<std::uint16_t> table(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    table[x] = apply(a, f.table[apply(b, x)]);
  }
  return SBox{f.n, std::move(table)};
}

}  // namespace sboxevo
