#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sboxevo/gf2.hpp"
#include "sboxevo/serialization.hpp"

namespace fs = std::filesystem;
using namespace sboxevo;

namespace {

SBox load_sbox(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sbox file " + path);
  return sbox_from_text(in);
}

int cmd_evaluate(const std::string& sbox_path, const std::string& ddt_path,
                 const std::string& bct_path) {
  const SBox f = load_sbox(sbox_path);
  const PropertyReport report = evaluate_properties(f);
  std::cout << to_json(report).dump() << '\n';
  if (!ddt_path.empty()) write_text_file(ddt_path, matrix_csv(ddt(f)));
  if (!bct_path.empty()) {
    if (!report.beta.has_value()) {
      std::cerr << "sboxevo: BCT undefined, the sbox is not a permutation\n";
      return 1;
    }
    write_text_file(bct_path, matrix_csv(bct_fast(f)));
  }
  return 0;
}

int cmd_reference(int n, const std::string& map_name, const std::string& out_path) {
  SBox f = identity_sbox(n);
  if (map_name == "inverse") {
    f = inverse_map(n);
  } else if (map_name.rfind("gold:", 0) == 0) {
    const int i = std::stoi(map_name.substr(5));
    if (i < 1 || i >= n) throw std::runtime_error("gold exponent index must be in [1, n)");
    f = gold_map(n, i);
  } else {
    throw std::runtime_error("unknown map \"" + map_name + "\" (use inverse or gold:<i>)");
  }
  const std::string text = to_text(f);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
  std::cout << to_json(evaluate_properties(f)).dump() << '\n';
  return 0;
}

ExperimentConfig load_base_config(const std::string& config_path) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config file " + config_path);
    cfg = parse_experiment_config(in);
  }
  return cfg;
}

void print_summary(const std::vector<RunRecord>& records) {
  std::cout << summary_csv(summarize(records));
}

int cmd_evolve(ExperimentConfig cfg) {
  const std::vector<RunRecord> records = run_experiment(cfg);
  print_summary(records);
  if (!cfg.output_dir.empty()) {
    write_text_file(fs::path(cfg.output_dir) / "summary.csv",
                    summary_csv(summarize(records)));
    write_text_file(fs::path(cfg.output_dir) / "summary.json",
                    summary_json(summarize(records)).dump(2) + "\n");
  }
  return 0;
}

int cmd_nsga2(ExperimentConfig cfg) {
  cfg.algorithms = {Algorithm::Nsga2};
  const std::vector<RunRecord> records = run_experiment(cfg);
  const auto points = pareto_union(records);
  std::cout << union_csv(points);
  if (!cfg.output_dir.empty()) {
    write_text_file(fs::path(cfg.output_dir) / "pareto_union.csv", union_csv(points));
  }
  return 0;
}

int cmd_summarize(const std::string& dir, const std::string& csv_out,
                  const std::string& json_out) {
  const std::vector<RunRecord> records = load_records_from_dir(dir);
  if (records.empty()) {
    std::cerr << "sboxevo: no record files in " << dir << '\n';
    return 1;
  }
  const auto rows = summarize(records);
  std::cout << summary_csv(rows);
  if (!csv_out.empty()) write_text_file(csv_out, summary_csv(rows));
  if (!json_out.empty()) write_text_file(json_out, summary_json(rows).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-box property evaluation and boomerang-uniformity evolution"};
  app.require_subcommand(1);

  // evaluate
  std::string sbox_path, ddt_path, bct_path;
  auto* evaluate = app.add_subcommand("evaluate", "property report for an sbox file");
  evaluate->add_option("--sbox", sbox_path, "sbox text file")->required();
  evaluate->add_option("--ddt", ddt_path, "write the DDT as CSV to this path");
  evaluate->add_option("--bct", bct_path, "write the BCT as CSV to this path");

  // reference
  int ref_n = 4;
  std::string map_name = "inverse", ref_out;
  auto* reference = app.add_subcommand("reference", "emit a power-map sbox and its report");
  reference->add_option("--n", ref_n, "bit-width")->required()->check(CLI::Range(3, 10));
  reference->add_option("--map", map_name, "inverse or gold:<i>")->required();
  reference->add_option("--out", ref_out, "write the sbox file here instead of stdout");

  // evolve / nsga2 share these
  std::string enc_name, algo_name = "ea", config_path, out_dir;
  int n = 4, runs = -1, pop = -1, jobs = -1;
  long long budget = -1;
  double pm = -1;
  std::uint64_t seed = 0;
  bool seed_set = false, paper = false;

  const auto add_common = [&](CLI::App* cmd, bool with_algo) {
    cmd->add_option("--encoding", enc_name, "int, perm, or ca");
    if (with_algo) cmd->add_option("--algo", algo_name, "ea or rs");
    cmd->add_option("--n", n, "bit-width")->check(CLI::Range(3, 10));
    cmd->add_option("--runs", runs, "independent runs per triple");
    cmd->add_option("--seed", seed, "base seed");
    cmd->add_option("--budget", budget, "evaluations per run");
    cmd->add_option("--pop", pop, "population size");
    cmd->add_option("--pm", pm, "individual mutation probability");
    cmd->add_option("--config", config_path, "experiment config file (flags override)");
    cmd->add_option("--out", out_dir, "output directory for records");
    cmd->add_option("--jobs", jobs, "worker threads");
    cmd->add_flag("--paper-budget", paper, "keep the 500k evaluation budget for n >= 7");
  };

  auto* evolve = app.add_subcommand("evolve", "single-objective runs with records and summary");
  add_common(evolve, true);
  auto* multi = app.add_subcommand("nsga2", "multi-objective runs with Pareto union");
  add_common(multi, false);

  // summarize
  std::string sum_dir, sum_csv, sum_json;
  auto* summarize_cmd = app.add_subcommand("summarize", "summary table from a record directory");
  summarize_cmd->add_option("--dir", sum_dir, "directory of record JSON files")->required();
  summarize_cmd->add_option("--csv", sum_csv, "also write the table as CSV here");
  summarize_cmd->add_option("--json", sum_json, "also write the table as JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed()) return cmd_evaluate(sbox_path, ddt_path, bct_path);
    if (reference->parsed()) return cmd_reference(ref_n, map_name, ref_out);
    if (summarize_cmd->parsed()) return cmd_summarize(sum_dir, sum_csv, sum_json);

    ExperimentConfig cfg = load_base_config(config_path);
    seed_set = evolve->count("--seed") || multi->count("--seed");
    if (evolve->count("--encoding") || multi->count("--encoding")) {
      cfg.encodings = {encoding_from_string(enc_name)};
    }
    if (evolve->count("--n") || multi->count("--n")) cfg.sizes = {n};
    if (evolve->parsed() && evolve->count("--algo")) {
      cfg.algorithms = {algorithm_from_string(algo_name)};
    }
    if (evolve->parsed() && cfg.algorithms.empty()) cfg.algorithms = {Algorithm::Ea};
    if (runs >= 1) cfg.runs = runs;
    if (seed_set) cfg.base_seed = seed;
    if (budget >= 1) cfg.budget = budget;
    if (pop >= 1) cfg.pop_size = pop;
    if (pm >= 0) cfg.mutation_prob = pm;
    if (jobs >= 1) cfg.jobs = jobs;
    if (paper) cfg.paper_budget = true;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (cfg.sizes.empty() || cfg.encodings.empty()) {
      std::cerr << "sboxevo: need --encoding and --n (or a config file providing them)\n";
      return 2;
    }
    if (evolve->parsed()) return cmd_evolve(cfg);
    return cmd_nsga2(cfg);
  } catch (const std::exception& e) {
    std::cerr << "sboxevo: " << e.what() << '\n';
    return 1;
  }
}
