#include "sboxevo/search.hpp"

#include <gtest/gtest.h>

#include "sboxevo/gf2.hpp"

using namespace sboxevo;

namespace {

SearchConfig small_config(Encoding encoding, Algorithm, int n) {
  SearchConfig cfg;
  cfg.encoding = encoding;
  cfg.n = n;
  cfg.pop_size = 20;
  cfg.budget = 2000;
  cfg.seed = 2024;
  return cfg;
}

bool series_is_nonincreasing(const std::vector<ConvergencePoint>& series) {
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].fitness > series[i - 1].fitness) return false;
    if (series[i].evaluation < series[i - 1].evaluation) return false;
  }
  return true;
}

bool records_equal(const RunRecord& a, const RunRecord& b) {
  return a.config == b.config && a.algorithm == b.algorithm &&
         a.best_fitness == b.best_fitness &&
         serialize(a.best_genotype) == serialize(b.best_genotype) &&
         a.best_bal == b.best_bal && a.series == b.series &&
         a.evaluations == b.evaluations;
}

}  // namespace

TEST(Fitness, PermutationEncodingIsBeta) {
  const SBox inv4 = inverse_map(4);
  const Genotype g = PermutationGenotype{4, inv4.table};
  EXPECT_EQ(fitness_single(g), 6);
}

TEST(Fitness, PenaltyBranchForUnbalancedInteger) {
  const Genotype g = IntegerGenotype{4, std::vector<std::uint16_t>(16, 0)};
  EXPECT_EQ(fitness_single(g), 16 + 15);
}

TEST(Fitness, BalancedCaRuleGetsBeta) {
  const Genotype g = rule_tree_from_string(4, "v0");  // identity, beta = 16
  EXPECT_EQ(fitness_single(g), 16);
}

TEST(Fitness, MultiObjectiveValues) {
  const SBox inv4 = inverse_map(4);
  EXPECT_EQ(fitness_multi(PermutationGenotype{4, inv4.table}), (Objectives{6, 4}));

  const SBox gold5 = gold_map(5, 1);
  EXPECT_EQ(fitness_multi(PermutationGenotype{5, gold5.table}), (Objectives{2, 2}));

  const Genotype zeros = IntegerGenotype{4, std::vector<std::uint16_t>(16, 0)};
  EXPECT_EQ(fitness_multi(zeros), (Objectives{31, 31}));
}

TEST(SearchConfigValidation, RejectsBadValues) {
  SearchConfig cfg;
  cfg.pop_size = 2;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.mutation_prob = 1.5;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = SearchConfig{};
  cfg.n = 11;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

TEST(SteadyStateEa, BestSeriesIsMonotone) {
  const RunRecord record =
      steady_state_ea(small_config(Encoding::Permutation, Algorithm::Ea, 4));
  EXPECT_TRUE(series_is_nonincreasing(record.series));
  EXPECT_EQ(record.evaluations, 2000);
  EXPECT_EQ(record.best_bal, 0);
  EXPECT_GE(record.best_fitness, 2);
}

TEST(SteadyStateEa, DeterministicGivenSeed) {
  const SearchConfig cfg = small_config(Encoding::Ca, Algorithm::Ea, 4);
  EXPECT_TRUE(records_equal(steady_state_ea(cfg), steady_state_ea(cfg)));
}

TEST(SteadyStateEa, RecordedGenotypeReproducesFitness) {
  for (const auto encoding :
       {Encoding::Integer, Encoding::Permutation, Encoding::Ca}) {
    const RunRecord record =
        steady_state_ea(small_config(encoding, Algorithm::Ea, 4));
    EXPECT_EQ(fitness_single(record.best_genotype), record.best_fitness);
  }
}

TEST(SteadyStateEa, RejectsBudgetBelowPopulation) {
  SearchConfig cfg = small_config(Encoding::Permutation, Algorithm::Ea, 4);
  cfg.budget = 10;
  EXPECT_THROW(steady_state_ea(cfg), std::invalid_argument);
}

TEST(SteadyStateEa, RejectsMultiObjectiveConfig) {
  SearchConfig cfg = small_config(Encoding::Permutation, Algorithm::Ea, 4);
  cfg.objective = Objective::Multi;
  EXPECT_THROW(steady_state_ea(cfg), std::invalid_argument);
}

TEST(SteadyStateEa, BetaFitnessValuesAreEvenAndAtLeastTwo) {
  const RunRecord record =
      steady_state_ea(small_config(Encoding::Permutation, Algorithm::Ea, 4));
  EXPECT_GE(record.best_fitness, 2);
  EXPECT_EQ(record.best_fitness % 2, 0);
}

TEST(RandomSearch, DeterministicAndMonotone) {
  const SearchConfig cfg = small_config(Encoding::Permutation, Algorithm::Rs, 4);
  const RunRecord a = random_search(cfg);
  const RunRecord b = random_search(cfg);
  EXPECT_TRUE(records_equal(a, b));
  EXPECT_TRUE(series_is_nonincreasing(a.series));
  EXPECT_EQ(a.evaluations, 2000);
}

TEST(RandomSearch, IntegerEncodingNeverBalancedAtN5) {
  SearchConfig cfg = small_config(Encoding::Integer, Algorithm::Rs, 5);
  cfg.budget = 3000;
  const RunRecord record = random_search(cfg);
  EXPECT_GT(record.best_fitness, 32);
  EXPECT_GT(record.best_bal, 0);
}

TEST(RandomSearch, RecordedGenotypeReproducesFitness) {
  const RunRecord record =
      random_search(small_config(Encoding::Ca, Algorithm::Rs, 5));
  EXPECT_EQ(fitness_single(record.best_genotype), record.best_fitness);
}
