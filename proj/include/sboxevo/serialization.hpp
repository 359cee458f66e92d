#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sboxevo/experiment.hpp"
#include "sboxevo/properties.hpp"

namespace sboxevo {

using json = nlohmann::json;

inline const char* to_string(Objective o) {
  return o == Objective::Single ? "single" : "multi";
}

inline Objective objective_from_string(const std::string& name) {
  if (name == "single") return Objective::Single;
  if (name == "multi") return Objective::Multi;
  throw std::invalid_argument("unknown objective \"" + name + "\"");
}

inline json to_json(const PropertyReport& report) {
  json j;
  j["n"] = report.n;
  j["delta"] = report.delta;
  j["beta"] = report.beta.has_value() ? json(*report.beta) : json(nullptr);
  j["bal"] = report.bal;
  j["degree"] = report.degree;
  return j;
}

inline json to_json(const SearchConfig& cfg) {
  return json{{"encoding", to_string(cfg.encoding)},
              {"n", cfg.n},
              {"pop_size", cfg.pop_size},
              {"mutation_prob", cfg.mutation_prob},
              {"budget", cfg.budget},
              {"seed", cfg.seed},
              {"objective", to_string(cfg.objective)}};
}

inline SearchConfig search_config_from_json(const json& j) {
  SearchConfig cfg;
  cfg.encoding = encoding_from_string(j.at("encoding").get<std::string>());
  cfg.n = j.at("n").get<int>();
  cfg.pop_size = j.at("pop_size").get<int>();
  cfg.mutation_prob = j.at("mutation_prob").get<double>();
  cfg.budget = j.at("budget").get<long long>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.objective = objective_from_string(j.at("objective").get<std::string>());
  return cfg;
}

inline json to_json(const RunRecord& record) {
  json j;
  j["config"] = to_json(record.config);
  j["algorithm"] = to_string(record.algorithm);
  j["best_fitness"] = record.best_fitness;
  j["best_genotype"] = serialize(record.best_genotype);
  j["best_bal"] = record.best_bal;
  json series = json::array();
  for (const auto& point : record.series) {
    series.push_back(json::array({point.evaluation, point.fitness}));
  }
  j["series"] = std::move(series);
  if (record.algorithm == Algorithm::Nsga2) {
    json front = json::array();
    for (const auto& point : record.front) {
      front.push_back(json{{"beta", point.objectives.beta},
                           {"delta", point.objectives.delta},
                           {"genotype", serialize(point.genotype)}});
    }
    j["front"] = std::move(front);
  }
  j["evaluations"] = record.evaluations;
  j["wall_ms"] = record.wall_ms;
  return j;
}

inline RunRecord record_from_json(const json& j) {
  RunRecord record;
  record.config = search_config_from_json(j.at("config"));
  record.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  record.best_fitness = j.at("best_fitness").get<int>();
  record.best_genotype = parse_genotype(record.config.encoding, record.config.n,
                                        j.at("best_genotype").get<std::string>());
  record.best_bal = j.at("best_bal").get<int>();
  for (const auto& point : j.at("series")) {
    record.series.push_back(
        ConvergencePoint{point.at(0).get<long long>(), point.at(1).get<int>()});
  }
  if (j.contains("front")) {
    for (const auto& point : j.at("front")) {
      record.front.push_back(ParetoPoint{
          Objectives{point.at("beta").get<int>(), point.at("delta").get<int>()},
          parse_genotype(record.config.encoding, record.config.n,
                         point.at("genotype").get<std::string>())});
    }
  }
  record.evaluations = j.at("evaluations").get<long long>();
  record.wall_ms = j.at("wall_ms").get<double>();
  return record;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void save_record(const RunRecord& record, const std::filesystem::path& path) {
  write_text_file(path, to_json(record).dump(2) + "\n");
}

inline RunRecord load_record(const std::filesystem::path& path) {
  return record_from_json(json::parse(read_text_file(path)));
}

inline std::string record_filename(const RunRecord& record, int run_index) {
  std::ostringstream name;
  name << "n" << record.config.n << '_' << to_string(record.config.encoding)
       << '_' << to_string(record.algorithm) << "_run" << std::setw(2)
       << std::setfill('0') << run_index << ".json";
  return name.str();
}

// --- CSV exports ------------------------------------------------------------

inline std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

// header: size,encoding,algorithm,min,avg,std,balanced_runs
// triples with no balanced run keep the dash convention
inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "size,encoding,algorithm,min,avg,std,balanced_runs\n";
  for (const auto& row : rows) {
    out << row.n << ',' << to_string(row.encoding) << ','
        << to_string(row.algorithm) << ',';
    if (row.min.has_value()) {
      out << *row.min << ',' << format_number(*row.avg) << ','
          << format_number(*row.stddev);
    } else {
      out << "-,-,-";
    }
    out << ',' << row.balanced_runs << '\n';
  }
  return out.str();
}

inline json summary_json(const std::vector<SummaryRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json j{{"size", row.n},
           {"encoding", to_string(row.encoding)},
           {"algorithm", to_string(row.algorithm)},
           {"runs", row.runs},
           {"balanced_runs", row.balanced_runs}};
    j["min"] = row.min.has_value() ? json(*row.min) : json(nullptr);
    j["avg"] = row.avg.has_value() ? json(*row.avg) : json(nullptr);
    j["std"] = row.stddev.has_value() ? json(*row.stddev) : json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

inline std::string union_csv(const std::vector<UnionPoint>& points) {
  std::ostringstream out;
  out << "size,encoding,beta,delta\n";
  for (const auto& point : points) {
    out << point.n << ',' << to_string(point.encoding) << ','
        << point.objectives.beta << ',' << point.objectives.delta << '\n';
  }
  return out.str();
}

inline std::string convergence_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "evaluation,fitness\n";
  for (const auto& point : record.series) {
    out << point.evaluation << ',' << point.fitness << '\n';
  }
  return out.str();
}

// best-so-far of each run resampled on a 1000-evaluation grid, then the
// median across runs per grid point
inline std::vector<ConvergencePoint> median_series(const std::vector<RunRecord>& records) {
  if (records.empty()) return {};
  long long horizon = 0;
  for (const auto& record : records) horizon = std::max(horizon, record.evaluations);
  std::vector<ConvergencePoint> out;
  for (long long grid = 1000; grid <= horizon; grid += 1000) {
    std::vector<int> values;
    for (const auto& record : records) {
      int best = INT32_MAX;
      for (const auto& point : record.series) {
        if (point.evaluation > grid) break;
        best = point.fitness;
      }
      if (best != INT32_MAX) values.push_back(best);
    }
    if (values.empty()) continue;
    std::sort(values.begin(), values.end());
    out.push_back(ConvergencePoint{grid, values[values.size() / 2]});
  }
  return out;
}

inline std::string matrix_csv(const CountTable& table) {
  std::ostringstream out;
  for (std::uint32_t a = 0; a < table.size(); ++a) {
    for (std::uint32_t b = 0; b < table.size(); ++b) {
      if (b) out << ',';
      out << table.at(a, b);
    }
    out << '\n';
  }
  return out.str();
}

// --- experiment config files -------------------------------------------------

// flat key=value format; '#' starts a comment. Keys mirror ExperimentConfig:
// sizes, encodings, algorithms (comma lists), runs, base_seed, budget,
// pop_size, mutation_prob, paper_budget, output_dir, jobs.
inline void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                              const std::string& value) {
  const auto split_list = [](const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
      if (!item.empty()) items.push_back(item);
    }
    return items;
  };
  if (key == "sizes") {
    cfg.sizes.clear();
    for (const auto& item : split_list(value)) cfg.sizes.push_back(std::stoi(item));
  } else if (key == "encodings") {
    cfg.encodings.clear();
    for (const auto& item : split_list(value)) cfg.encodings.push_back(encoding_from_string(item));
  } else if (key == "algorithms") {
    cfg.algorithms.clear();
    for (const auto& item : split_list(value)) cfg.algorithms.push_back(algorithm_from_string(item));
  } else if (key == "runs") {
    cfg.runs = std::stoi(value);
  } else if (key == "base_seed") {
    cfg.base_seed = std::stoull(value);
  } else if (key == "budget") {
    cfg.budget = std::stoll(value);
  } else if (key == "pop_size") {
    cfg.pop_size = std::stoi(value);
  } else if (key == "mutation_prob") {
    cfg.mutation_prob = std::stod(value);
  } else if (key == "paper_budget") {
    cfg.paper_budget = value == "true" || value == "1";
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else if (key == "jobs") {
    cfg.jobs = std::stoi(value);
  } else {
    throw std::invalid_argument("experiment config: unknown key \"" + key + "\"");
  }
}

inline ExperimentConfig parse_experiment_config(std::istream& in,
                                                ExperimentConfig cfg = {}) {
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("experiment config line " +
                                  std::to_string(line_number) + ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto trim = [](std::string& text) {
      const auto begin = text.find_first_not_of(" \t");
      const auto end = text.find_last_not_of(" \t");
      text = begin == std::string::npos ? "" : text.substr(begin, end - begin + 1);
    };
    trim(key);
    trim(value);
    apply_config_line(cfg, key, value);
  }
  return cfg;
}

// --- experiment driver with record files -------------------------------------

// Runs every expanded triple and writes one record JSON per run (plus a
// per-run convergence CSV and a per-triple median CSV) under output_dir.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  const std::vector<RunRecord> records = run_experiment_in_memory(cfg);
  if (!cfg.output_dir.empty()) {
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir " + dir.string());
    const int runs = cfg.runs;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const int run_index = static_cast<int>(i) % runs;
      const std::string base = record_filename(records[i], run_index);
      save_record(records[i], dir / base);
      const std::string stem = base.substr(0, base.size() - 5);
      write_text_file(dir / (stem + "_convergence.csv"), convergence_csv(records[i]));
    }
    for (std::size_t i = 0; i < records.size(); i += runs) {
      const std::vector<RunRecord> triple(records.begin() + i,
                                          records.begin() + i + runs);
      const auto median = median_series(triple);
      std::ostringstream csv;
      csv << "evaluation,fitness\n";
      for (const auto& point : median) csv << point.evaluation << ',' << point.fitness << '\n';
      const std::string key = "n" + std::to_string(triple[0].config.n) + "_" +
                              to_string(triple[0].config.encoding) + "_" +
                              to_string(triple[0].algorithm);
      write_text_file(dir / (key + "_median_convergence.csv"), csv.str());
    }
  }
  return records;
}

inline std::vector<RunRecord> load_records_from_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<RunRecord> records;
  records.reserve(paths.size());
  for (const auto& path : paths) records.push_back(load_record(path));
  return records;
}

}  // namespace sboxevo
