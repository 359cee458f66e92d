#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sboxevo/rng.hpp"
#include "sboxevo/sbox.hpp"

namespace sboxevo {

// Free-form lookup table: 2^n genes, each any value in [0, 2^n).
// Decodes to an SBox verbatim; balancedness is not preserved.
struct IntegerGenotype {
  int n = 0;
  std::vector<std::uint16_t> genes;

  bool operator==(const IntegerGenotype&) const = default;
};

inline IntegerGenotype make_integer_genotype(int n, std::vector<std::uint16_t> genes) {
  make_sbox(n, genes);  // same validity rules
  return IntegerGenotype{n, std::move(genes)};
}

inline SBox decode(const IntegerGenotype& g) { return SBox{g.n, g.genes}; }

// Draw order: one below(2^n) per gene.
inline IntegerGenotype random_integer_genotype(int n, RandomSource& rng) {
  const std::uint32_t size = 1u << n;
  std::vector<std::uint16_t> genes(size);
  for (auto& gene : genes) gene = static_cast<std::uint16_t>(rng.below(size));
  return IntegerGenotype{n, std::move(genes)};
}

// Resamples a single gene. Draw order: position, then value.
inline IntegerGenotype int_mutate(const IntegerGenotype& g, RandomSource& rng) {
  IntegerGenotype child = g;
  const std::size_t pos = rng.index(child.genes.size());
  child.genes[pos] = static_cast<std::uint16_t>(rng.below(1u << g.n));
  return child;
}

enum class IntCrossover { OnePoint, TwoPoint, Average };
inline constexpr IntCrossover kIntCrossovers[] = {
    IntCrossover::OnePoint, IntCrossover::TwoPoint, IntCrossover::Average};

namespace xover {

// p1 genes before `cut`, p2 genes from `cut` on
inline std::vector<std::uint16_t> one_point(const std::vector<std::uint16_t>& p1,
                                            const std::vector<std::uint16_t>& p2,
                                            std::size_t cut) {
  std::vector<std::uint16_t> child(p1.begin(), p1.begin() + cut);
  child.insert(child.end(), p2.begin() + cut, p2.end());
  return child;
}

// p2 genes on [lo, hi), p1 genes elsewhere
inline std::vector<std::uint16_t> two_point(const std::vector<std::uint16_t>& p1,
                                            const std::vector<std::uint16_t>& p2,
                                            std::size_t lo, std::size_t hi) {
  std::vector<std::uint16_t> child = p1;
  for (std::size_t i = lo; i < hi; ++i) child[i] = p2[i];
  return child;
}

// per-gene mean, halves rounded up
inline std::vector<std::uint16_t> average(const std::vector<std::uint16_t>& p1,
                                          const std::vector<std::uint16_t>& p2) {
  std::vector<std::uint16_t> child(p1.size());
  for (std::size_t i = 0; i < child.size(); ++i) {
    child[i] = static_cast<std::uint16_t>((p1[i] + p2[i] + 1) / 2);
  }
  return child;
}

}  // namespace xover

// Draw order: one-point draws its cut, two-point draws two cuts (both in
// [1, 2^n - 1]), average draws nothing.
inline IntegerGenotype int_crossover(const IntegerGenotype& p1,
                                     const IntegerGenotype& p2,
                                     RandomSource& rng, IntCrossover op) {
  if (p1.n != p2.n) throw std::invalid_argument("crossover: bit-width mismatch");
  const auto interior_cut = [&] {
    return static_cast<std::size_t>(1 + rng.below(static_cast<std::uint32_t>(p1.genes.size() - 1)));
  };
  switch (op) {
    case IntCrossover::OnePoint:
      return IntegerGenotype{p1.n, xover::one_point(p1.genes, p2.genes, interior_cut())};
    case IntCrossover::TwoPoint: {
      std::size_t lo = interior_cut();
      std::size_t hi = interior_cut();
      if (lo > hi) std::swap(lo, hi);
      return IntegerGenotype{p1.n, xover::two_point(p1.genes, p2.genes, lo, hi)};
    }
    case IntCrossover::Average:
      return IntegerGenotype{p1.n, xover::average(p1.genes, p2.genes)};
  }
  throw std::logic_error("unreachable");
}

}  // namespace sboxevo
