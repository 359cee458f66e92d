#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sboxevo/genotype.hpp"
#include "sboxevo/properties.hpp"

namespace sboxevo {

enum class Objective { Single, Multi };
enum class Algorithm { Ea, Rs, Nsga2 };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Ea: return "ea";
    case Algorithm::Rs: return "rs";
    case Algorithm::Nsga2: return "nsga2";
  }
  return "?";
}

inline Algorithm algorithm_from_string(const std::string& name) {
  if (name == "ea") return Algorithm::Ea;
  if (name == "rs") return Algorithm::Rs;
  if (name == "nsga2") return Algorithm::Nsga2;
  throw std::invalid_argument("unknown algorithm \"" + name + "\"");
}

struct SearchConfig {
  Encoding encoding = Encoding::Permutation;
  int n = 4;
  int pop_size = 500;
  double mutation_prob = 0.7;
  long long budget = 500000;
  std::uint64_t seed = 0;
  Objective objective = Objective::Single;

  bool operator==(const SearchConfig&) const = default;
};

inline void validate(const SearchConfig& cfg) {
  if (cfg.n < kMinBits || cfg.n > kMaxBits) {
    throw std::invalid_argument("search config: n out of range");
  }
  if (cfg.pop_size < 3) {
    throw std::invalid_argument("search config: population must have at least 3 individuals");
  }
  if (cfg.mutation_prob < 0.0 || cfg.mutation_prob > 1.0) {
    throw std::invalid_argument("search config: mutation probability out of [0,1]");
  }
  if (cfg.budget < 1) {
    throw std::invalid_argument("search config: budget must be positive");
  }
}

struct Objectives {
  int beta = 0;
  int delta = 0;

  bool operator==(const Objectives&) const = default;
};

struct Individual {
  Genotype genotype;
  int fitness = 0;
  Objectives objectives;
  int bal = 0;
  long long eval_index = 0;
};

// fitness_1 = beta for permutation genotypes (always balanced);
// fitness_2 = 2^n + BAL when unbalanced, else beta, for the other encodings.
struct SingleEval {
  int fitness = 0;
  int bal = 0;
};

inline SingleEval evaluate_single(const Genotype& g) {
  const SBox f = decode(g);
  if (std::holds_alternative<PermutationGenotype>(g)) {
    return SingleEval{boomerang_uniformity(f), 0};
  }
  const int bal = missing_outputs(f);
  if (bal > 0) {
    return SingleEval{static_cast<int>(f.size()) + bal, bal};
  }
  return SingleEval{boomerang_uniformity(f), 0};
}

inline int fitness_single(const Genotype& g) { return evaluate_single(g).fitness; }

// balanced -> (beta, delta); unbalanced -> the 2^n + BAL penalty on both axes,
// so every balanced point dominates every unbalanced one.
struct MultiEval {
  Objectives objectives;
  int bal = 0;
};

inline MultiEval evaluate_multi(const Genotype& g) {
  const SBox f = decode(g);
  const int bal = std::holds_alternative<PermutationGenotype>(g) ? 0 : missing_outputs(f);
  if (bal > 0) {
    const int penalty = static_cast<int>(f.size()) + bal;
    return MultiEval{Objectives{penalty, penalty}, bal};
  }
  return MultiEval{Objectives{boomerang_uniformity(f), delta_uniformity(f)}, 0};
}

inline Objectives fitness_multi(const Genotype& g) { return evaluate_multi(g).objectives; }

struct ConvergencePoint {
  long long evaluation = 0;
  int fitness = 0;

  bool operator==(const ConvergencePoint&) const = default;
};

// best-so-far at every improvement plus every 1000th evaluation
class ConvergenceLog {
 public:
  void observe(long long eval_index, int fitness) {
    if (fitness < best_) {
      best_ = fitness;
      points_.push_back({eval_index, best_});
    } else if (eval_index % 1000 == 0) {
      points_.push_back({eval_index, best_});
    }
  }

  int best() const { return best_; }
  std::vector<ConvergencePoint> take() { return std::move(points_); }

 private:
  std::vector<ConvergencePoint> points_;
  int best_ = INT32_MAX;
};

struct ParetoPoint {
  Objectives objectives;
  Genotype genotype;
};

struct RunRecord {
  SearchConfig config;
  Algorithm algorithm = Algorithm::Ea;
  int best_fitness = 0;
  Genotype best_genotype;
  int best_bal = 0;
  std::vector<ConvergencePoint> series;
  std::vector<ParetoPoint> front;  // nsga2 only
  long long evaluations = 0;
  double wall_ms = 0.0;
};

namespace detail {

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// three distinct population indices, drawn uniformly.
// Draw order: index(P), index(P-1) shifted past the first, index(P-2)
// shifted past both.
inline void sample_three_distinct(std::size_t pop, RandomSource& rng,
                                  std::size_t out[3]) {
  out[0] = rng.index(pop);
  out[1] = rng.index(pop - 1);
  if (out[1] >= out[0]) ++out[1];
  out[2] = rng.index(pop - 2);
  const std::size_t lo = std::min(out[0], out[1]);
  const std::size_t hi = std::max(out[0], out[1]);
  if (out[2] >= lo) ++out[2];
  if (out[2] >= hi) ++out[2];
}

}  // namespace detail

// Steady state: each step draws a tournament of three, eliminates the worst
// (ties broken uniformly), and replaces it with a mutated crossover of the
// two survivors. Initialization counts against the evaluation budget.
inline RunRecord steady_state_ea(const SearchConfig& cfg) {
  validate(cfg);
  if (cfg.objective != Objective::Single) {
    throw std::invalid_argument("steady_state_ea needs a single-objective config");
  }
  if (cfg.budget < cfg.pop_size) {
    throw std::invalid_argument("steady_state_ea: budget cannot cover initialization");
  }
  const detail::WallTimer timer;
  RandomSource rng(cfg.seed);
  ConvergenceLog log;
  long long evals = 0;

  std::vector<Individual> pop;
  pop.reserve(cfg.pop_size);
  Individual best;
  best.fitness = INT32_MAX;
  for (int i = 0; i < cfg.pop_size; ++i) {
    Genotype g = random_genotype(cfg.encoding, cfg.n, rng);
    const SingleEval e = evaluate_single(g);
    ++evals;
    log.observe(evals, e.fitness);
    Individual ind{std::move(g), e.fitness, {}, e.bal, evals};
    if (ind.fitness < best.fitness) best = ind;
    pop.push_back(std::move(ind));
  }

  while (evals < cfg.budget) {
    std::size_t picks[3];
    detail::sample_three_distinct(pop.size(), rng, picks);
    int worst_fitness = pop[picks[0]].fitness;
    for (int k = 1; k < 3; ++k) worst_fitness = std::max(worst_fitness, pop[picks[k]].fitness);
    std::size_t tied[3];
    std::size_t tied_count = 0;
    for (int k = 0; k < 3; ++k) {
      if (pop[picks[k]].fitness == worst_fitness) tied[tied_count++] = static_cast<std::size_t>(k);
    }
    const std::size_t victim_slot = tied_count == 1 ? tied[0] : tied[rng.index(tied_count)];
    const std::size_t victim = picks[victim_slot];
    std::size_t parents[2];
    std::size_t parent_count = 0;
    for (int k = 0; k < 3; ++k) {
      if (static_cast<std::size_t>(k) != victim_slot) parents[parent_count++] = picks[k];
    }

    Genotype child = crossover(pop[parents[0]].genotype, pop[parents[1]].genotype, rng);
    if (rng.chance(cfg.mutation_prob)) child = mutate(child, rng);
    const SingleEval e = evaluate_single(child);
    ++evals;
    log.observe(evals, e.fitness);
    Individual ind{std::move(child), e.fitness, {}, e.bal, evals};
    if (ind.fitness < best.fitness) best = ind;
    pop[victim] = std::move(ind);
  }

  RunRecord record;
  record.config = cfg;
  record.algorithm = Algorithm::Ea;
  record.best_fitness = best.fitness;
  record.best_genotype = best.genotype;
  record.best_bal = best.bal;
  record.series = log.take();
  record.evaluations = evals;
  record.wall_ms = timer.elapsed_ms();
  return record;
}

// Baseline: budget independent draws, best kept.
inline RunRecord random_search(const SearchConfig& cfg) {
  validate(cfg);
  if (cfg.objective != Objective::Single) {
    throw std::invalid_argument("random_search needs a single-objective config");
  }
  const detail::WallTimer timer;
  RandomSource rng(cfg.seed);
  ConvergenceLog log;
  Individual best;
  best.fitness = INT32_MAX;
  for (long long evals = 1; evals <= cfg.budget; ++evals) {
    Genotype g = random_genotype(cfg.encoding, cfg.n, rng);
    const SingleEval e = evaluate_single(g);
    log.observe(evals, e.fitness);
    if (e.fitness < best.fitness) {
      best = Individual{std::move(g), e.fitness, {}, e.bal, evals};
    }
  }
  RunRecord record;
  record.config = cfg;
  record.algorithm = Algorithm::Rs;
  record.best_fitness = best.fitness;
  record.best_genotype = best.genotype;
  record.best_bal = best.bal;
  record.series = log.take();
  record.evaluations = cfg.budget;
  record.wall_ms = timer.elapsed_ms();
  return record;
}

}  // namespace sboxevo
