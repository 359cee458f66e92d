#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sboxevo/sbox.hpp"

namespace sboxevo {

enum class TableKind { Ddt, Bct };

// 2^n x 2^n table of counts, row-major: counts[(a << n) + b].
struct CountTable {
  int n = 0;
  TableKind kind = TableKind::Ddt;
  std::vector<std::uint32_t> counts;

  std::uint32_t size() const { return 1u << n; }
  std::uint32_t at(std::uint32_t a, std::uint32_t b) const {
    return counts[(static_cast<std::size_t>(a) << n) + b];
  }
  bool operator==(const CountTable&) const = default;
};

// counts[a][b] = |{x : F(x) ^ F(x ^ a) = b}|
inline CountTable ddt(const SBox& f) {
  const std::uint32_t size = f.size();
  CountTable t{f.n, TableKind::Ddt,
               std::vector<std::uint32_t>(static_cast<std::size_t>(size) * size, 0)};
  for (std::uint32_t a = 0; a < size; ++a) {
    std::uint32_t* row = &t.counts[static_cast<std::size_t>(a) << f.n];
    for (std::uint32_t x = 0; x < size; ++x) {
      ++row[f.table[x] ^ f.table[x ^ a]];
    }
  }
  return t;
}

// max DDT count over a != 0 (all b)
inline int delta_uniformity(const SBox& f) {
  const std::uint32_t size = f.size();
  std::vector<std::uint32_t> row(size);
  std::uint32_t best = 0;
  for (std::uint32_t a = 1; a < size; ++a) {
    std::fill(row.begin(), row.end(), 0u);
    for (std::uint32_t x = 0; x < size; ++x) {
      const std::uint32_t count = ++row[f.table[x] ^ f.table[x ^ a]];
      if (count > best) best = count;
    }
  }
  return static_cast<int>(best);
}

// counts[a][b] = |{x : F^-1(F(x) ^ a) ^ F^-1(F(x ^ b) ^ a) = b}|,
// evaluated by the literal triple loop; retained as the oracle for bct_fast.
inline CountTable bct_naive(const SBox& f) {
  if (!is_permutation(f)) {
    throw std::invalid_argument("bct requires a permutation");
  }
  const SBox finv = invert(f);
  const std::uint32_t size = f.size();
  CountTable t{f.n, TableKind::Bct,
               std::vector<std::uint32_t>(static_cast<std::size_t>(size) * size, 0)};
  for (std::uint32_t a = 0; a < size; ++a) {
    std::uint32_t* row = &t.counts[static_cast<std::size_t>(a) << f.n];
    for (std::uint32_t b = 0; b < size; ++b) {
      std::uint32_t count = 0;
      for (std::uint32_t x = 0; x < size; ++x) {
        const std::uint32_t lhs = finv.table[f.table[x] ^ a] ^
                                  finv.table[f.table[x ^ b] ^ a];
        count += (lhs == b) ? 1u : 0u;
      }
      row[b] = count;
    }
  }
  return t;
}

namespace detail {

// Accumulates one BCT row for fixed a != 0 into `row` (caller zeroes it) and
// returns the max count over b != 0.
//
// For fixed a, put H(x) = F^-1(F(x) ^ a) ^ x. The boomerang condition at
// (a, b) rewrites to H(x) = H(x ^ b), so row b counts the x-pairs at xor
// distance b inside each level set of H. Bucketing x by H(x) and walking
// pairs inside each bucket costs 2^n plus the sum of squared bucket sizes
// instead of 2^(2n).
struct BctRowScratch {
  std::vector<std::uint16_t> h;
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> cursor;
  std::vector<std::uint16_t> ordered;

  explicit BctRowScratch(std::uint32_t size)
      : h(size), start(size + 1), cursor(size + 1), ordered(size) {}
};

inline std::uint32_t bct_row(const SBox& f, const SBox& finv, std::uint32_t a,
                             BctRowScratch& scratch, std::uint32_t* row) {
  const std::uint32_t size = f.size();
  for (std::uint32_t x = 0; x < size; ++x) {
    scratch.h[x] = static_cast<std::uint16_t>(finv.table[f.table[x] ^ a] ^ x);
  }
  std::fill(scratch.start.begin(), scratch.start.end(), 0u);
  for (std::uint32_t x = 0; x < size; ++x) ++scratch.start[scratch.h[x] + 1];
  for (std::uint32_t v = 0; v < size; ++v) scratch.start[v + 1] += scratch.start[v];
  std::copy(scratch.start.begin(), scratch.start.end(), scratch.cursor.begin());
  for (std::uint32_t x = 0; x < size; ++x) {
    scratch.ordered[scratch.cursor[scratch.h[x]]++] = static_cast<std::uint16_t>(x);
  }

  row[0] = size;
  std::uint32_t best = 0;
  for (std::uint32_t v = 0; v < size; ++v) {
    const std::uint32_t lo = scratch.start[v];
    const std::uint32_t hi = scratch.start[v + 1];
    for (std::uint32_t i = lo; i < hi; ++i) {
      const std::uint32_t xi = scratch.ordered[i];
      for (std::uint32_t j = i + 1; j < hi; ++j) {
        const std::uint32_t b = xi ^ scratch.ordered[j];
        const std::uint32_t count = (row[b] += 2);
        if (count > best) best = count;
      }
    }
  }
  return best;
}

}  // namespace detail

// Same table as bct_naive, via the per-row bucket walk.
inline CountTable bct_fast(const SBox& f) {
  if (!is_permutation(f)) {
    throw std::invalid_argument("bct requires a permutation");
  }
  const SBox finv = invert(f);
  const std::uint32_t size = f.size();
  CountTable t{f.n, TableKind::Bct,
               std::vector<std::uint32_t>(static_cast<std::size_t>(size) * size, 0)};
  // H_0 is identically zero, so row a=0 is flat 2^n.
  std::fill(t.counts.begin(), t.counts.begin() + size, size);
  detail::BctRowScratch scratch(size);
  for (std::uint32_t a = 1; a < size; ++a) {
    detail::bct_row(f, finv, a, scratch, &t.counts[static_cast<std::size_t>(a) << f.n]);
  }
  return t;
}

// max BCT count over a != 0, b != 0; does not materialize the table
inline int boomerang_uniformity(const SBox& f) {
  if (!is_permutation(f)) {
    throw std::invalid_argument("boomerang uniformity requires a permutation");
  }
  const SBox finv = invert(f);
  const std::uint32_t size = f.size();
  detail::BctRowScratch scratch(size);
  std::vector<std::uint32_t> row(size);
  std::uint32_t best = 0;
  for (std::uint32_t a = 1; a < size; ++a) {
    std::fill(row.begin(), row.end(), 0u);
    const std::uint32_t row_best = detail::bct_row(f, finv, a, scratch, row.data());
    if (row_best > best) best = row_best;
    if (best == size) break;  // cannot grow further
  }
  return static_cast<int>(best);
}

// Max monomial weight over the coordinate functions' algebraic normal forms,
// each obtained with the in-place binary Moebius transform.
inline int algebraic_degree(const SBox& f) {
  const std::uint32_t size = f.size();
  std::vector<std::uint8_t> tt(size);
  int degree = 0;
  for (int bit = 0; bit < f.n; ++bit) {
    for (std::uint32_t x = 0; x < size; ++x) {
      tt[x] = static_cast<std::uint8_t>((f.table[x] >> bit) & 1u);
    }
    for (std::uint32_t step = 1; step < size; step <<= 1) {
      for (std::uint32_t x = 0; x < size; ++x) {
        if (x & step) tt[x] ^= tt[x ^ step];
      }
    }
    for (std::uint32_t u = 0; u < size; ++u) {
      if (tt[u]) degree = std::max(degree, std::popcount(u));
    }
  }
  return degree;
}

struct PropertyReport {
  int n = 0;
  int delta = 0;
  std::optional<int> beta;  // absent when the sbox is not a permutation
  int bal = 0;
  int degree = 0;

  bool operator==(const PropertyReport&) const = default;
};

inline PropertyReport evaluate_properties(const SBox& f) {
  PropertyReport report;
  report.n = f.n;
  report.delta = delta_uniformity(f);
  report.bal = missing_outputs(f);
  if (report.bal == 0) report.beta = boomerang_uniformity(f);
  report.degree = algebraic_degree(f);
  return report;
}

}  // namespace sboxevo
