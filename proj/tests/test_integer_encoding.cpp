#include "sboxevo/integer_encoding.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace sboxevo;

namespace {

IntegerGenotype constant_genotype(int n, std::uint16_t value) {
  return IntegerGenotype{n, std::vector<std::uint16_t>(std::size_t{1} << n, value)};
}

}  // namespace

TEST(IntegerGenotype, DecodeIsVerbatim) {
  std::vector<std::uint16_t> genes(16);
  std::iota(genes.begin(), genes.end(), std::uint16_t{0});
  const IntegerGenotype g{4, genes};
  EXPECT_EQ(decode(g), identity_sbox(4));
  EXPECT_EQ(decode(g).table, genes);

  const IntegerGenotype zeros = constant_genotype(4, 0);
  EXPECT_EQ(missing_outputs(decode(zeros)), 15);
}

TEST(IntegerGenotype, MakeValidates) {
  EXPECT_THROW(make_integer_genotype(4, std::vector<std::uint16_t>(15, 0)),
               std::invalid_argument);
  EXPECT_THROW(make_integer_genotype(4, std::vector<std::uint16_t>(16, 16)),
               std::invalid_argument);
}

TEST(IntegerGenotype, RandomGenesAreInRange) {
  RandomSource rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const IntegerGenotype g = random_integer_genotype(5, rng);
    EXPECT_EQ(g.genes.size(), 32u);
    for (const auto gene : g.genes) EXPECT_LT(gene, 32);
  }
}

TEST(IntegerGenotype, MutateChangesAtMostOnePosition) {
  RandomSource rng(42);
  const IntegerGenotype g = random_integer_genotype(4, rng);
  for (int trial = 0; trial < 100; ++trial) {
    const IntegerGenotype child = int_mutate(g, rng);
    int differing = 0;
    for (std::size_t i = 0; i < g.genes.size(); ++i) {
      differing += g.genes[i] != child.genes[i] ? 1 : 0;
    }
    EXPECT_LE(differing, 1);
  }
}

TEST(IntegerGenotype, MutateFollowsTheDocumentedDraws) {
  const IntegerGenotype g = constant_genotype(4, 0);
  RandomSource op_rng(4242);
  const IntegerGenotype child = int_mutate(g, op_rng);

  RandomSource trace(4242);
  const std::size_t pos = trace.index(16);
  const std::uint16_t value = static_cast<std::uint16_t>(trace.below(16));
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(child.genes[i], i == pos ? value : 0);
  }
}

TEST(IntegerGenotype, MutateIsDeterministic) {
  RandomSource a(7), b(7);
  const IntegerGenotype g = constant_genotype(5, 3);
  EXPECT_EQ(int_mutate(g, a), int_mutate(g, b));
}

TEST(IntegerCrossover, IdenticalParentsYieldThemselves) {
  RandomSource rng(43);
  const IntegerGenotype g = random_integer_genotype(4, rng);
  for (const auto op : kIntCrossovers) {
    EXPECT_EQ(int_crossover(g, g, rng, op), g);
  }
}

TEST(IntegerCrossover, OnePointCore) {
  const std::vector<std::uint16_t> p1(16, 0);
  const std::vector<std::uint16_t> p2(16, 1);
  const auto child = xover::one_point(p1, p2, 4);
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(child[i], i < 4 ? 0 : 1);
  }
}

TEST(IntegerCrossover, TwoPointCore) {
  const std::vector<std::uint16_t> p1(16, 0);
  const std::vector<std::uint16_t> p2(16, 1);
  const auto child = xover::two_point(p1, p2, 3, 9);
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(child[i], (i >= 3 && i < 9) ? 1 : 0);
  }
}

TEST(IntegerCrossover, AverageRoundsHalvesUp) {
  const auto child = xover::average(std::vector<std::uint16_t>(16, 0),
                                    std::vector<std::uint16_t>(16, 15));
  EXPECT_EQ(child, std::vector<std::uint16_t>(16, 8));
}

TEST(IntegerCrossover, PointOperatorsTakeGenesFromParents) {
  RandomSource rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const IntegerGenotype p1 = random_integer_genotype(4, rng);
    const IntegerGenotype p2 = random_integer_genotype(4, rng);
    for (const auto op : {IntCrossover::OnePoint, IntCrossover::TwoPoint}) {
      const IntegerGenotype child = int_crossover(p1, p2, rng, op);
      for (std::size_t i = 0; i < child.genes.size(); ++i) {
        EXPECT_TRUE(child.genes[i] == p1.genes[i] || child.genes[i] == p2.genes[i]);
      }
    }
  }
}

TEST(IntegerCrossover, RejectsMismatchedWidths) {
  RandomSource rng(45);
  const IntegerGenotype a = random_integer_genotype(4, rng);
  const IntegerGenotype b = random_integer_genotype(5, rng);
  EXPECT_THROW(int_crossover(a, b, rng, IntCrossover::Average), std::invalid_argument);
}
