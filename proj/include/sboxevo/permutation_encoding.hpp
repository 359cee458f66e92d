#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sboxevo/rng.hpp"
#include "sboxevo/sbox.hpp"

namespace sboxevo {

// Permutation of [0, 2^n); decodes to a bijective SBox, so balancedness is
// structural. Every operator below maps permutations to permutations.
struct PermutationGenotype {
  int n = 0;
  std::vector<std::uint16_t> genes;

  bool operator==(const PermutationGenotype&) const = default;
};

inline PermutationGenotype make_permutation_genotype(int n, std::vector<std::uint16_t> genes) {
  const SBox f = make_sbox(n, genes);
  if (!is_permutation(f)) {
    throw std::invalid_argument("permutation genotype: genes are not a permutation");
  }
  return PermutationGenotype{n, std::move(genes)};
}

inline SBox decode(const PermutationGenotype& g) { return SBox{g.n, g.genes}; }

// unbiased shuffle of the identity. Draw order: one shuffle.
inline PermutationGenotype random_permutation_genotype(int n, RandomSource& rng) {
  std::vector<std::uint16_t> genes(std::size_t{1} << n);
  std::iota(genes.begin(), genes.end(), std::uint16_t{0});
  rng.shuffle(genes);
  return PermutationGenotype{n, std::move(genes)};
}

enum class PermMutation { Insert, Inversion, Swap };
inline constexpr PermMutation kPermMutations[] = {
    PermMutation::Insert, PermMutation::Inversion, PermMutation::Swap};

enum class PermCrossover { Pmx, Pbx, Ox, Ulx, Cyclic };
inline constexpr PermCrossover kPermCrossovers[] = {
    PermCrossover::Pmx, PermCrossover::Pbx, PermCrossover::Ox,
    PermCrossover::Ulx, PermCrossover::Cyclic};

// Deterministic cores on plain gene vectors. The rng wrappers below draw the
// positions/segments/masks and delegate here, so each operator's behavior is
// testable without replaying a generator.
namespace perm {

inline void swap_positions(std::vector<std::uint16_t>& genes, std::size_t i, std::size_t j) {
  std::swap(genes[i], genes[j]);
}

// remove the element at `from` and reinsert it so it lands at index `to`
inline void insert_move(std::vector<std::uint16_t>& genes, std::size_t from, std::size_t to) {
  const std::uint16_t value = genes[from];
  genes.erase(genes.begin() + from);
  genes.insert(genes.begin() + to, value);
}

// reverse the inclusive segment [lo, hi]
inline void reverse_segment(std::vector<std::uint16_t>& genes, std::size_t lo, std::size_t hi) {
  std::reverse(genes.begin() + lo, genes.begin() + hi + 1);
}

// PMX: child keeps p1's inclusive segment [lo, hi]; p2 values displaced from
// the segment are relocated along the p1->p2 mapping chain; the rest copies p2.
inline std::vector<std::uint16_t> pmx(const std::vector<std::uint16_t>& p1,
                                      const std::vector<std::uint16_t>& p2,
                                      std::size_t lo, std::size_t hi) {
  const std::size_t size = p1.size();
  constexpr std::uint16_t kUnset = 0xFFFF;
  std::vector<std::uint16_t> child(size, kUnset);
  std::vector<std::uint16_t> pos2(size);
  for (std::size_t i = 0; i < size; ++i) pos2[p2[i]] = static_cast<std::uint16_t>(i);
  std::vector<bool> in_segment(size, false);
  for (std::size_t i = lo; i <= hi; ++i) {
    child[i] = p1[i];
    in_segment[p1[i]] = true;
  }
  for (std::size_t i = lo; i <= hi; ++i) {
    const std::uint16_t value = p2[i];
    if (in_segment[value]) continue;
    std::size_t slot = i;
    do {
      slot = pos2[p1[slot]];
    } while (slot >= lo && slot <= hi);
    child[slot] = value;
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (child[i] == kUnset) child[i] = p2[i];
  }
  return child;
}

// OX: child keeps p1's inclusive segment; remaining values are taken in p2
// order starting after the segment, wrapping around.
inline std::vector<std::uint16_t> ox(const std::vector<std::uint16_t>& p1,
                                     const std::vector<std::uint16_t>& p2,
                                     std::size_t lo, std::size_t hi) {
  const std::size_t size = p1.size();
  std::vector<std::uint16_t> child(size);
  std::vector<bool> used(size, false);
  for (std::size_t i = lo; i <= hi; ++i) {
    child[i] = p1[i];
    used[p1[i]] = true;
  }
  std::size_t write = (hi + 1) % size;
  for (std::size_t step = 0; step < size; ++step) {
    const std::uint16_t value = p2[(hi + 1 + step) % size];
    if (used[value]) continue;
    child[write] = value;
    used[value] = true;
    write = (write + 1) % size;
  }
  return child;
}

// positions of the p1/p2 value cycles, in discovery order (left to right)
inline std::vector<std::vector<std::size_t>> value_cycles(
    const std::vector<std::uint16_t>& p1, const std::vector<std::uint16_t>& p2) {
  const std::size_t size = p1.size();
  std::vector<std::uint16_t> pos1(size);
  for (std::size_t i = 0; i < size; ++i) pos1[p1[i]] = static_cast<std::uint16_t>(i);
  std::vector<bool> visited(size, false);
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t start = 0; start < size; ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> cycle;
    std::size_t i = start;
    do {
      visited[i] = true;
      cycle.push_back(i);
      i = pos1[p2[i]];
    } while (i != start);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

// cyclic crossover: cycle k copies from p2 when take_p2[k], else from p1
inline std::vector<std::uint16_t> cyclic(const std::vector<std::uint16_t>& p1,
                                         const std::vector<std::uint16_t>& p2,
                                         const std::vector<bool>& take_p2) {
  std::vector<std::uint16_t> child(p1.size());
  const auto cycles = value_cycles(p1, p2);
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    const auto& src = take_p2[k] ? p2 : p1;
    for (const std::size_t i : cycles[k]) child[i] = src[i];
  }
  return child;
}

// PBX: keep p1's genes at the selected positions; fill the rest left to right
// with the unused values in p2 order.
inline std::vector<std::uint16_t> pbx(const std::vector<std::uint16_t>& p1,
                                      const std::vector<std::uint16_t>& p2,
                                      const std::vector<bool>& keep) {
  const std::size_t size = p1.size();
  std::vector<std::uint16_t> child(size);
  std::vector<bool> used(size, false);
  for (std::size_t i = 0; i < size; ++i) {
    if (keep[i]) {
      child[i] = p1[i];
      used[p1[i]] = true;
    }
  }
  std::size_t write = 0;
  for (std::size_t i = 0; i < size; ++i) {
    const std::uint16_t value = p2[i];
    if (used[value]) continue;
    while (keep[write]) ++write;
    child[write++] = value;
  }
  return child;
}

// ULX: agreeing positions copy; each remaining position flips a coin between
// the parent genes, falling back to the unused one; positions where both are
// already used are deferred and filled with a shuffle of the leftover values.
// Draw order: one coin per undecided position (left to right), then one
// shuffle of the leftovers.
inline std::vector<std::uint16_t> ulx(const std::vector<std::uint16_t>& p1,
                                      const std::vector<std::uint16_t>& p2,
                                      RandomSource& rng) {
  const std::size_t size = p1.size();
  constexpr std::uint16_t kUnset = 0xFFFF;
  std::vector<std::uint16_t> child(size, kUnset);
  std::vector<bool> used(size, false);
  for (std::size_t i = 0; i < size; ++i) {
    if (p1[i] == p2[i]) {
      child[i] = p1[i];
      used[p1[i]] = true;
    }
  }
  std::vector<std::size_t> deferred;
  for (std::size_t i = 0; i < size; ++i) {
    if (child[i] != kUnset) continue;
    const std::uint16_t pick = rng.coin() ? p2[i] : p1[i];
    const std::uint16_t other = pick == p1[i] ? p2[i] : p1[i];
    if (!used[pick]) {
      child[i] = pick;
      used[pick] = true;
    } else if (!used[other]) {
      child[i] = other;
      used[other] = true;
    } else {
      deferred.push_back(i);
    }
  }
  std::vector<std::uint16_t> leftovers;
  for (std::uint16_t v = 0; v < size; ++v) {
    if (!used[v]) leftovers.push_back(v);
  }
  rng.shuffle(leftovers);
  for (std::size_t k = 0; k < deferred.size(); ++k) child[deferred[k]] = leftovers[k];
  return child;
}

}  // namespace perm

// Draw order: Swap/Insert draw two distinct positions (second adjusted past
// the first); Inversion draws two cut points and sorts them.
inline PermutationGenotype perm_mutate(const PermutationGenotype& g,
                                       RandomSource& rng, PermMutation op) {
  PermutationGenotype child = g;
  const std::size_t size = child.genes.size();
  switch (op) {
    case PermMutation::Swap: {
      const std::size_t i = rng.index(size);
      std::size_t j = rng.index(size - 1);
      if (j >= i) ++j;
      perm::swap_positions(child.genes, i, j);
      break;
    }
    case PermMutation::Insert: {
      const std::size_t from = rng.index(size);
      std::size_t to = rng.index(size - 1);
      if (to >= from) ++to;
      perm::insert_move(child.genes, from, to);
      break;
    }
    case PermMutation::Inversion: {
      std::size_t lo = rng.index(size);
      std::size_t hi = rng.index(size);
      if (lo > hi) std::swap(lo, hi);
      perm::reverse_segment(child.genes, lo, hi);
      break;
    }
  }
  return child;
}

// Draw order: PMX/OX draw two cut points and sort them; PBX draws one coin
// per position; Cyclic draws one coin per value cycle (discovery order); ULX
// draws as documented on perm::ulx.
inline PermutationGenotype perm_crossover(const PermutationGenotype& p1,
                                          const PermutationGenotype& p2,
                                          RandomSource& rng, PermCrossover op) {
  if (p1.n != p2.n) throw std::invalid_argument("crossover: bit-width mismatch");
  const std::size_t size = p1.genes.size();
  switch (op) {
    case PermCrossover::Pmx:
    case PermCrossover::Ox: {
      std::size_t lo = rng.index(size);
      std::size_t hi = rng.index(size);
      if (lo > hi) std::swap(lo, hi);
      return PermutationGenotype{
          p1.n, op == PermCrossover::Pmx ? perm::pmx(p1.genes, p2.genes, lo, hi)
                                         : perm::ox(p1.genes, p2.genes, lo, hi)};
    }
    case PermCrossover::Pbx: {
      std::vector<bool> keep(size);
      for (std::size_t i = 0; i < size; ++i) keep[i] = rng.coin();
      return PermutationGenotype{p1.n, perm::pbx(p1.genes, p2.genes, keep)};
    }
    case PermCrossover::Ulx:
      return PermutationGenotype{p1.n, perm::ulx(p1.genes, p2.genes, rng)};
    case PermCrossover::Cyclic: {
      const auto cycles = perm::value_cycles(p1.genes, p2.genes);
      std::vector<bool> take_p2(cycles.size());
      for (std::size_t k = 0; k < cycles.size(); ++k) take_p2[k] = rng.coin();
      return PermutationGenotype{p1.n, perm::cyclic(p1.genes, p2.genes, take_p2)};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace sboxevo
