#include "sboxevo/permutation_encoding.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace sboxevo;

namespace {

bool is_permutation_vector(const std::vector<std::uint16_t>& genes) {
  std::vector<bool> seen(genes.size(), false);
  for (const auto v : genes) {
    if (v >= genes.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::uint16_t> vec(std::initializer_list<std::uint16_t> values) {
  return std::vector<std::uint16_t>(values);
}

}  // namespace

TEST(PermutationGenotype, DecodeIsAlwaysBalanced) {
  RandomSource rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const PermutationGenotype g = random_permutation_genotype(5, rng);
    EXPECT_EQ(missing_outputs(decode(g)), 0);
  }
}

TEST(PermutationGenotype, MakeValidates) {
  EXPECT_NO_THROW(make_permutation_genotype(3, vec({7, 6, 5, 4, 3, 2, 1, 0})));
  EXPECT_THROW(make_permutation_genotype(3, vec({0, 0, 2, 3, 4, 5, 6, 7})),
               std::invalid_argument);
}

TEST(PermMutationCores, SpecTraces) {
  auto genes = vec({0, 1, 2, 3});
  perm::swap_positions(genes, 0, 1);
  EXPECT_EQ(genes, vec({1, 0, 2, 3}));

  genes = vec({0, 1, 2, 3});
  perm::reverse_segment(genes, 1, 3);
  EXPECT_EQ(genes, vec({0, 3, 2, 1}));

  genes = vec({0, 1, 2, 3});
  perm::insert_move(genes, 3, 0);
  EXPECT_EQ(genes, vec({3, 0, 1, 2}));
}

TEST(PermMutation, OutputsStayPermutations) {
  RandomSource rng(52);
  for (const int n : {4, 5, 6}) {
    for (const auto op : kPermMutations) {
      PermutationGenotype g = random_permutation_genotype(n, rng);
      for (int trial = 0; trial < 3000; ++trial) {
        g = perm_mutate(g, rng, op);
        ASSERT_TRUE(is_permutation_vector(g.genes));
      }
    }
  }
}

TEST(PermMutation, Deterministic) {
  RandomSource a(8), b(8);
  RandomSource seed_rng(9);
  const PermutationGenotype g = random_permutation_genotype(5, seed_rng);
  for (const auto op : kPermMutations) {
    EXPECT_EQ(perm_mutate(g, a, op), perm_mutate(g, b, op));
  }
}

TEST(PermCrossoverCores, PmxSpecTrace) {
  const auto child = perm::pmx(vec({0, 1, 2, 3, 4}), vec({4, 3, 2, 1, 0}), 1, 3);
  EXPECT_EQ(child, vec({4, 1, 2, 3, 0}));
}

TEST(PermCrossoverCores, PmxMappingChain) {
  const auto child = perm::pmx(vec({3, 4, 8, 2, 7, 1, 6, 0, 9, 5}),
                               vec({4, 2, 5, 1, 6, 8, 9, 7, 3, 0}), 3, 5);
  EXPECT_EQ(child, vec({4, 8, 5, 2, 7, 1, 9, 6, 3, 0}));
}

TEST(PermCrossoverCores, OxFillsAfterSegmentInParentOrder) {
  // segment [2,3,4] kept from p1; the rest reads p2 from position 5 on,
  // wrapping, skipping used values: writes 1,0,7 at 5,6,7 then 6,5 at 0,1
  const auto child = perm::ox(vec({0, 1, 2, 3, 4, 5, 6, 7}),
                              vec({7, 6, 5, 4, 3, 2, 1, 0}), 2, 4);
  EXPECT_EQ(child, vec({6, 5, 2, 3, 4, 1, 0, 7}));
}

TEST(PermCrossoverCores, CyclicAssignsWholeCycles) {
  const auto p1 = vec({0, 1, 2, 3});
  const auto p2 = vec({1, 0, 3, 2});
  const auto cycles = perm::value_cycles(p1, p2);
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(perm::cyclic(p1, p2, {false, false}), vec({0, 1, 2, 3}));
  EXPECT_EQ(perm::cyclic(p1, p2, {true, true}), vec({1, 0, 3, 2}));
  EXPECT_EQ(perm::cyclic(p1, p2, {false, true}), vec({0, 1, 3, 2}));
  EXPECT_EQ(perm::cyclic(p1, p2, {true, false}), vec({1, 0, 2, 3}));
}

TEST(PermCrossoverCores, PbxKeepsMaskedPositions) {
  const auto child = perm::pbx(vec({0, 1, 2, 3, 4}), vec({4, 3, 2, 1, 0}),
                               {true, false, true, false, false});
  // kept 0@0 and 2@2; remaining 4,3,1 in p2 order fill positions 1,3,4
  EXPECT_EQ(child, vec({0, 4, 2, 3, 1}));
}

TEST(PermCrossover, IdenticalParentsAreFixedPointsForPmxOxCyclic) {
  RandomSource rng(53);
  const PermutationGenotype g = random_permutation_genotype(4, rng);
  for (const auto op :
       {PermCrossover::Pmx, PermCrossover::Ox, PermCrossover::Cyclic}) {
    EXPECT_EQ(perm_crossover(g, g, rng, op), g);
  }
}

TEST(PermCrossover, OutputsStayPermutations) {
  RandomSource rng(54);
  for (const int n : {4, 5, 6}) {
    for (const auto op : kPermCrossovers) {
      for (int trial = 0; trial < 2000; ++trial) {
        const PermutationGenotype p1 = random_permutation_genotype(n, rng);
        const PermutationGenotype p2 = random_permutation_genotype(n, rng);
        const PermutationGenotype child = perm_crossover(p1, p2, rng, op);
        ASSERT_TRUE(is_permutation_vector(child.genes));
      }
    }
  }
}

TEST(PermCrossover, Deterministic) {
  RandomSource seed_rng(10);
  const PermutationGenotype p1 = random_permutation_genotype(5, seed_rng);
  const PermutationGenotype p2 = random_permutation_genotype(5, seed_rng);
  for (const auto op : kPermCrossovers) {
    RandomSource a(11), b(11);
    EXPECT_EQ(perm_crossover(p1, p2, a, op), perm_crossover(p1, p2, b, op));
  }
}
