#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "sboxevo/nsga2.hpp"
#include "sboxevo/search.hpp"

namespace sboxevo {

struct ExperimentConfig {
  std::vector<int> sizes;
  std::vector<Encoding> encodings;
  std::vector<Algorithm> algorithms;
  int runs = 30;
  std::uint64_t base_seed = 1;
  std::optional<long long> budget;
  std::optional<int> pop_size;
  std::optional<double> mutation_prob;
  bool paper_budget = false;  // keep the full 500k budget for n >= 7
  std::string output_dir;
  int jobs = 0;  // 0 = hardware concurrency
};

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

inline std::string triple_key(int n, Encoding encoding, Algorithm algorithm) {
  return "n=" + std::to_string(n) + "/" + to_string(encoding) + "/" +
         to_string(algorithm);
}

// run k of a triple draws from a stream disjoint from every other triple
inline std::uint64_t run_seed(std::uint64_t base_seed, int n, Encoding encoding,
                              Algorithm algorithm, int run_index) {
  return (base_seed ^ fnv1a64(triple_key(n, encoding, algorithm))) +
         static_cast<std::uint64_t>(run_index);
}

// full evaluation budgets are a multi-hour job at n >= 7; default to the
// desk-scale budget there unless the paper budget is requested
inline long long default_budget(int n, bool paper_budget) {
  return (n >= 7 && !paper_budget) ? 100000 : 500000;
}

inline std::vector<SearchConfig> expand(const ExperimentConfig& cfg,
                                        std::vector<Algorithm>* algorithms_out = nullptr) {
  if (cfg.runs < 1) throw std::invalid_argument("experiment: runs must be >= 1");
  if (cfg.sizes.empty() || cfg.encodings.empty() || cfg.algorithms.empty()) {
    throw std::invalid_argument("experiment: sizes, encodings, and algorithms must be non-empty");
  }
  std::vector<SearchConfig> expanded;
  if (algorithms_out) algorithms_out->clear();
  for (const int n : cfg.sizes) {
    for (const Encoding encoding : cfg.encodings) {
      for (const Algorithm algorithm : cfg.algorithms) {
        for (int k = 0; k < cfg.runs; ++k) {
          SearchConfig run;
          run.encoding = encoding;
          run.n = n;
          run.pop_size = cfg.pop_size.value_or(run.pop_size);
          run.mutation_prob = cfg.mutation_prob.value_or(run.mutation_prob);
          run.budget = cfg.budget.value_or(default_budget(n, cfg.paper_budget));
          run.seed = run_seed(cfg.base_seed, n, encoding, algorithm, k);
          run.objective =
              algorithm == Algorithm::Nsga2 ? Objective::Multi : Objective::Single;
          validate(run);
          expanded.push_back(run);
          if (algorithms_out) algorithms_out->push_back(algorithm);
        }
      }
    }
  }
  return expanded;
}

inline RunRecord dispatch_run(const SearchConfig& cfg, Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Ea: return steady_state_ea(cfg);
    case Algorithm::Rs: return random_search(cfg);
    case Algorithm::Nsga2: return nsga2(cfg);
  }
  throw std::logic_error("unreachable");
}

// Executes every expanded run on a small worker pool. Runs are independent
// and seeded, so the records do not depend on scheduling.
inline std::vector<RunRecord> run_experiment_in_memory(const ExperimentConfig& cfg) {
  std::vector<Algorithm> algorithms;
  const std::vector<SearchConfig> expanded = expand(cfg, &algorithms);
  std::vector<RunRecord> records(expanded.size());

  unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                  : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, expanded.size()));

  if (workers == 1) {
    for (std::size_t i = 0; i < expanded.size(); ++i) {
      records[i] = dispatch_run(expanded[i], algorithms[i]);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < expanded.size();
           i = next.fetch_add(1)) {
        records[i] = dispatch_run(expanded[i], algorithms[i]);
      }
    });
  }
  for (auto& t : pool) t.join();
  return records;
}

// Tables 2-4 row: per-triple stats over the balanced-successful runs only.
struct SummaryRow {
  int n = 0;
  Encoding encoding = Encoding::Permutation;
  Algorithm algorithm = Algorithm::Ea;
  int runs = 0;
  int balanced_runs = 0;
  std::optional<int> min;
  std::optional<double> avg;
  std::optional<double> stddev;  // sample standard deviation (n-1)
};

inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  const auto row_for = [&](const RunRecord& record) -> SummaryRow& {
    for (auto& row : rows) {
      if (row.n == record.config.n && row.encoding == record.config.encoding &&
          row.algorithm == record.algorithm) {
        return row;
      }
    }
    rows.push_back(SummaryRow{record.config.n, record.config.encoding,
                              record.algorithm, 0, 0, {}, {}, {}});
    return rows.back();
  };

  for (const auto& record : records) {
    SummaryRow& row = row_for(record);
    ++row.runs;
  }
  std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.encoding != b.encoding) return static_cast<int>(a.encoding) < static_cast<int>(b.encoding);
    return static_cast<int>(a.algorithm) < static_cast<int>(b.algorithm);
  });

  for (auto& row : rows) {
    std::vector<int> bests;
    for (const auto& record : records) {
      if (record.config.n != row.n || record.config.encoding != row.encoding ||
          record.algorithm != row.algorithm || record.best_bal != 0) {
        continue;
      }
      bests.push_back(record.best_fitness);
    }
    row.balanced_runs = static_cast<int>(bests.size());
    if (bests.empty()) continue;  // dashes
    row.min = *std::min_element(bests.begin(), bests.end());
    double sum = 0;
    for (const int b : bests) sum += b;
    const double avg = sum / bests.size();
    row.avg = avg;
    double ss = 0;
    for (const int b : bests) ss += (b - avg) * (b - avg);
    row.stddev = bests.size() > 1 ? std::sqrt(ss / (bests.size() - 1)) : 0.0;
  }
  return rows;
}

struct UnionPoint {
  int n = 0;
  Encoding encoding = Encoding::Permutation;
  Objectives objectives;

  bool operator==(const UnionPoint&) const = default;
};

// union of all final fronts, deduplicated per (n, encoding, beta, delta);
// deliberately not re-filtered for dominance
inline std::vector<UnionPoint> pareto_union(const std::vector<RunRecord>& records) {
  std::vector<UnionPoint> points;
  for (const auto& record : records) {
    for (const auto& pareto : record.front) {
      const UnionPoint candidate{record.config.n, record.config.encoding,
                                 pareto.objectives};
      if (std::find(points.begin(), points.end(), candidate) == points.end()) {
        points.push_back(candidate);
      }
    }
  }
  std::sort(points.begin(), points.end(), [](const UnionPoint& a, const UnionPoint& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.encoding != b.encoding) return static_cast<int>(a.encoding) < static_cast<int>(b.encoding);
    if (a.objectives.beta != b.objectives.beta) return a.objectives.beta < b.objectives.beta;
    return a.objectives.delta < b.objectives.delta;
  });
  return points;
}

}  // namespace sboxevo
