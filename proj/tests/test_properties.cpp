#include "sboxevo/properties.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <numeric>

#include "sboxevo/gf2.hpp"
#include "sboxevo/rng.hpp"

using namespace sboxevo;

namespace {

// literal count of x with F(x) ^ F(x ^ a) = b
std::uint32_t ddt_cell_oracle(const SBox& f, std::uint32_t a, std::uint32_t b) {
  std::uint32_t count = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    count += (f.table[x] ^ f.table[x ^ a]) == b ? 1u : 0u;
  }
  return count;
}

int delta_oracle(const SBox& f) {
  std::uint32_t best = 0;
  for (std::uint32_t a = 1; a < f.size(); ++a) {
    for (std::uint32_t b = 0; b < f.size(); ++b) {
      best = std::max(best, ddt_cell_oracle(f, a, b));
    }
  }
  return static_cast<int>(best);
}

// ANF coefficient of monomial u from the definition: xor of the truth table
// over the subsets of u. Independent of the butterfly used by the library.
int degree_oracle(const SBox& f) {
  int degree = 0;
  for (int bit = 0; bit < f.n; ++bit) {
    for (std::uint32_t u = 0; u < f.size(); ++u) {
      std::uint32_t coeff = 0;
      for (std::uint32_t x = u;; x = (x - 1) & u) {
        coeff ^= (f.table[x] >> bit) & 1u;
        if (x == 0) break;
      }
      if (coeff) degree = std::max(degree, std::popcount(u));
    }
  }
  return degree;
}

SBox random_permutation(int n, RandomSource& rng) {
  std::vector<std::uint16_t> t(std::size_t{1} << n);
  std::iota(t.begin(), t.end(), std::uint16_t{0});
  rng.shuffle(t);
  return make_sbox(n, std::move(t));
}

}  // namespace

TEST(Ddt, IdentityConcentratesOnTheDiagonal) {
  const CountTable t = ddt(identity_sbox(4));
  for (std::uint32_t a = 0; a < 16; ++a) {
    for (std::uint32_t b = 0; b < 16; ++b) {
      EXPECT_EQ(t.at(a, b), a == b ? 16u : 0u);
    }
  }
}

TEST(Ddt, ConstantZeroConcentratesOnBZero) {
  const CountTable t = ddt(make_sbox(4, std::vector<std::uint16_t>(16, 0)));
  for (std::uint32_t a = 0; a < 16; ++a) {
    for (std::uint32_t b = 0; b < 16; ++b) {
      EXPECT_EQ(t.at(a, b), b == 0 ? 16u : 0u);
    }
  }
}

TEST(Ddt, MatchesCellOracleOnRandomBoxes) {
  RandomSource rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::uint16_t> table(32);
    for (auto& v : table) v = static_cast<std::uint16_t>(rng.below(32));
    const SBox f = make_sbox(5, std::move(table));
    const CountTable t = ddt(f);
    for (std::uint32_t a = 0; a < 32; ++a) {
      for (std::uint32_t b = 0; b < 32; ++b) {
        ASSERT_EQ(t.at(a, b), ddt_cell_oracle(f, a, b));
      }
    }
  }
}

TEST(Ddt, RowsSumToTableSizeAndEntriesAreEven) {
  RandomSource rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const SBox f = random_permutation(5, rng);
    const CountTable t = ddt(f);
    for (std::uint32_t a = 0; a < f.size(); ++a) {
      std::uint32_t sum = 0;
      for (std::uint32_t b = 0; b < f.size(); ++b) {
        EXPECT_EQ(t.at(a, b) % 2, 0u);
        sum += t.at(a, b);
      }
      EXPECT_EQ(sum, f.size());
    }
  }
}

TEST(Delta, PinnedValues) {
  EXPECT_EQ(delta_uniformity(identity_sbox(4)), 16);

  const SBox inv4 = inverse_map(4);
  EXPECT_EQ(delta_oracle(inv4), 4);
  EXPECT_EQ(delta_uniformity(inv4), 4);

  const SBox gold5 = gold_map(5, 1);
  EXPECT_EQ(delta_oracle(gold5), 2);
  EXPECT_EQ(delta_uniformity(gold5), 2);
}

TEST(BctNaive, IdentityIsFlat) {
  const CountTable t = bct_naive(identity_sbox(4));
  for (const auto c : t.counts) EXPECT_EQ(c, 16u);
}

TEST(BctNaive, RowZeroAndColumnZeroAreFull) {
  RandomSource rng(33);
  const SBox f = random_permutation(4, rng);
  const CountTable t = bct_naive(f);
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(t.at(0, i), f.size());
    EXPECT_EQ(t.at(i, 0), f.size());
  }
}

TEST(BctNaive, RejectsNonPermutation) {
  EXPECT_THROW(bct_naive(make_sbox(4, std::vector<std::uint16_t>(16, 0))),
               std::invalid_argument);
}

TEST(BctNaive, InverseMapN4MaxIsSix) {
  const CountTable t = bct_naive(inverse_map(4));
  std::uint32_t best = 0;
  for (std::uint32_t a = 1; a < 16; ++a) {
    for (std::uint32_t b = 1; b < 16; ++b) best = std::max(best, t.at(a, b));
  }
  EXPECT_EQ(best, 6u);
}

TEST(BctFast, MatchesNaiveOnRandomPermutations) {
  RandomSource rng(34);
  for (const int n : {3, 4, 5}) {
    for (int trial = 0; trial < 25; ++trial) {
      const SBox f = random_permutation(n, rng);
      EXPECT_EQ(bct_fast(f).counts, bct_naive(f).counts);
    }
  }
}

TEST(BctFast, IdentityIsFlat) {
  const CountTable t = bct_fast(identity_sbox(4));
  for (const auto c : t.counts) EXPECT_EQ(c, 16u);
}

TEST(BctFast, EntriesAreEvenOffTheAxes) {
  RandomSource rng(35);
  const SBox f = random_permutation(6, rng);
  const CountTable t = bct_fast(f);
  for (const auto c : t.counts) EXPECT_EQ(c % 2, 0u);
}

TEST(Boomerang, PinnedValues) {
  EXPECT_EQ(boomerang_uniformity(inverse_map(4)), 6);
  EXPECT_EQ(boomerang_uniformity(inverse_map(6)), 4);
  EXPECT_EQ(boomerang_uniformity(gold_map(5, 1)), 2);
  EXPECT_EQ(boomerang_uniformity(identity_sbox(4)), 16);
}

TEST(Boomerang, AgreesWithFastTableMax) {
  RandomSource rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const SBox f = random_permutation(5, rng);
    const CountTable t = bct_fast(f);
    std::uint32_t best = 0;
    for (std::uint32_t a = 1; a < f.size(); ++a) {
      for (std::uint32_t b = 1; b < f.size(); ++b) {
        best = std::max(best, t.at(a, b));
      }
    }
    EXPECT_EQ(boomerang_uniformity(f), static_cast<int>(best));
  }
}

TEST(Boomerang, DeltaNeverExceedsBeta) {
  RandomSource rng(37);
  for (const int n : {4, 5, 6}) {
    for (int trial = 0; trial < 20; ++trial) {
      const SBox f = random_permutation(n, rng);
      EXPECT_LE(delta_uniformity(f), boomerang_uniformity(f));
    }
  }
}

TEST(Degree, PinnedValues) {
  EXPECT_EQ(algebraic_degree(identity_sbox(4)), 1);
  EXPECT_EQ(algebraic_degree(make_sbox(4, std::vector<std::uint16_t>(16, 0))), 0);

  const SBox inv4 = inverse_map(4);
  EXPECT_EQ(degree_oracle(inv4), 3);
  EXPECT_EQ(algebraic_degree(inv4), 3);
}

TEST(Degree, MatchesSubsetSumOracle) {
  RandomSource rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::uint16_t> table(16);
    for (auto& v : table) v = static_cast<std::uint16_t>(rng.below(16));
    const SBox f = make_sbox(4, std::move(table));
    EXPECT_EQ(algebraic_degree(f), degree_oracle(f));
  }
}

TEST(Report, CollectsEverything) {
  const PropertyReport r = evaluate_properties(inverse_map(4));
  EXPECT_EQ(r.n, 4);
  EXPECT_EQ(r.delta, 4);
  ASSERT_TRUE(r.beta.has_value());
  EXPECT_EQ(*r.beta, 6);
  EXPECT_EQ(r.bal, 0);
  EXPECT_EQ(r.degree, 3);
}

TEST(Report, BetaAbsentForNonPermutations) {
  const PropertyReport r =
      evaluate_properties(make_sbox(4, std::vector<std::uint16_t>(16, 0)));
  EXPECT_FALSE(r.beta.has_value());
  EXPECT_EQ(r.bal, 15);
  EXPECT_EQ(r.degree, 0);
}
