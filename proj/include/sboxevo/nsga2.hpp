#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "sboxevo/search.hpp"

namespace sboxevo {

// a dominates b: no worse on both objectives and better on at least one
// (minimization)
inline bool dominates(const Objectives& a, const Objectives& b) {
  return a.beta <= b.beta && a.delta <= b.delta &&
         (a.beta != b.beta || a.delta != b.delta);
}

// fast non-dominated sort; front k holds points dominated only by earlier fronts
inline std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<Objectives>& points) {
  const std::size_t count = points.size();
  std::vector<int> domination_count(count, 0);
  std::vector<std::vector<std::size_t>> dominated(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++domination_count[i];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < count; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (const std::size_t i : current) {
      for (const std::size_t j : dominated[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

// boundary points per objective get infinity; interior points sum the
// normalized neighbor gaps over the objectives
inline std::vector<double> crowding_distance(const std::vector<Objectives>& front) {
  const std::size_t count = front.size();
  std::vector<double> distance(count, 0.0);
  if (count == 0) return distance;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(count);
  for (int objective = 0; objective < 2; ++objective) {
    const auto value = [&](std::size_t i) {
      return objective == 0 ? front[i].beta : front[i].delta;
    };
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return value(a) < value(b);
    });
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    const double range = value(order.back()) - value(order.front());
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < count; ++k) {
      if (distance[order[k]] == kInf) continue;
      distance[order[k]] += (value(order[k + 1]) - value(order[k - 1])) / range;
    }
  }
  return distance;
}

// Generational NSGA-II. Parents are picked by binary tournament on
// (rank, crowding); environmental selection keeps the best pop_size of
// parents plus offspring by rank, boundary front resolved by crowding.
// The returned front is the final population's rank-0 set, deduplicated
// per (beta, delta) pair.
inline RunRecord nsga2(const SearchConfig& cfg) {
  validate(cfg);
  if (cfg.objective != Objective::Multi) {
    throw std::invalid_argument("nsga2 needs a multi-objective config");
  }
  if (cfg.budget < cfg.pop_size) {
    throw std::invalid_argument("nsga2: budget cannot cover initialization");
  }
  const detail::WallTimer timer;
  RandomSource rng(cfg.seed);
  ConvergenceLog log;  // best beta seen so far, informational
  long long evals = 0;

  std::vector<Individual> pop;
  pop.reserve(cfg.pop_size);
  for (int i = 0; i < cfg.pop_size; ++i) {
    Genotype g = random_genotype(cfg.encoding, cfg.n, rng);
    const MultiEval e = evaluate_multi(g);
    ++evals;
    log.observe(evals, e.objectives.beta);
    pop.push_back(Individual{std::move(g), e.objectives.beta, e.objectives, e.bal, evals});
  }

  std::vector<Objectives> points;
  std::vector<int> rank;
  std::vector<double> crowding;

  const auto rank_population = [&](const std::vector<Individual>& individuals) {
    points.clear();
    points.reserve(individuals.size());
    for (const auto& ind : individuals) points.push_back(ind.objectives);
    const auto fronts = nondominated_sort(points);
    rank.assign(individuals.size(), 0);
    crowding.assign(individuals.size(), 0.0);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      std::vector<Objectives> front_points;
      front_points.reserve(fronts[f].size());
      for (const std::size_t i : fronts[f]) front_points.push_back(points[i]);
      const auto dist = crowding_distance(front_points);
      for (std::size_t k = 0; k < fronts[f].size(); ++k) {
        rank[fronts[f][k]] = static_cast<int>(f);
        crowding[fronts[f][k]] = dist[k];
      }
    }
    return fronts;
  };

  // binary tournament on (rank asc, crowding desc), coin on a full tie.
  // Draw order: two distinct indices, then the tie coin when needed.
  const auto select_parent = [&]() -> std::size_t {
    const std::size_t a = rng.index(pop.size());
    std::size_t b = rng.index(pop.size() - 1);
    if (b >= a) ++b;
    if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
    if (crowding[a] != crowding[b]) return crowding[a] > crowding[b] ? a : b;
    return rng.coin() ? b : a;
  };

  rank_population(pop);
  while (evals < cfg.budget) {
    const long long batch = std::min<long long>(cfg.pop_size, cfg.budget - evals);
    std::vector<Individual> offspring;
    offspring.reserve(batch);
    for (long long k = 0; k < batch; ++k) {
      const std::size_t pa = select_parent();
      const std::size_t pb = select_parent();
      Genotype child = crossover(pop[pa].genotype, pop[pb].genotype, rng);
      if (rng.chance(cfg.mutation_prob)) child = mutate(child, rng);
      const MultiEval e = evaluate_multi(child);
      ++evals;
      log.observe(evals, e.objectives.beta);
      offspring.push_back(Individual{std::move(child), e.objectives.beta, e.objectives, e.bal, evals});
    }

    std::vector<Individual> combined;
    combined.reserve(pop.size() + offspring.size());
    for (auto& ind : pop) combined.push_back(std::move(ind));
    for (auto& ind : offspring) combined.push_back(std::move(ind));
    const auto fronts = rank_population(combined);

    std::vector<Individual> next;
    next.reserve(cfg.pop_size);
    for (const auto& front : fronts) {
      if (next.size() == static_cast<std::size_t>(cfg.pop_size)) break;
      if (next.size() + front.size() <= static_cast<std::size_t>(cfg.pop_size)) {
        for (const std::size_t i : front) next.push_back(std::move(combined[i]));
        continue;
      }
      std::vector<std::size_t> order(front.begin(), front.end());
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return crowding[a] > crowding[b];
      });
      for (const std::size_t i : order) {
        if (next.size() == static_cast<std::size_t>(cfg.pop_size)) break;
        next.push_back(std::move(combined[i]));
      }
    }
    pop = std::move(next);
    rank_population(pop);
  }

  const auto fronts = rank_population(pop);
  RunRecord record;
  record.config = cfg;
  record.algorithm = Algorithm::Nsga2;
  const Individual* best = nullptr;
  for (const std::size_t i : fronts.front()) {
    const Objectives objs = pop[i].objectives;
    if (best == nullptr || objs.beta < best->objectives.beta) best = &pop[i];
    bool duplicate = false;
    for (const auto& point : record.front) {
      if (point.objectives == objs) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) record.front.push_back(ParetoPoint{objs, pop[i].genotype});
  }
  std::stable_sort(record.front.begin(), record.front.end(),
                   [](const ParetoPoint& a, const ParetoPoint& b) {
                     return a.objectives.beta != b.objectives.beta
                                ? a.objectives.beta < b.objectives.beta
                                : a.objectives.delta < b.objectives.delta;
                   });
  record.best_fitness = best->objectives.beta;
  record.best_genotype = best->genotype;
  record.best_bal = best->bal;
  record.series = log.take();
  record.evaluations = evals;
  record.wall_ms = timer.elapsed_ms();
  return record;
}

}  // namespace sboxevo
