// Command-line experiment harness: runs the (problem x algorithm x seed)
// matrix, dumps reference fronts, and compares result tables statistically.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rccmo/harness.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override,
            int threads) {
  rccmo::ExperimentConfig cfg;
  try {
    cfg = rccmo::load_experiment_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!out_override.empty()) cfg.outputs = out_override;
  if (const char* env = std::getenv("RCCMO_OUT_DIR")) cfg.outputs = env;

  std::filesystem::create_directories(cfg.outputs);
  const auto rows = rccmo::run_experiment(cfg, threads);
  const std::string csv = cfg.outputs + "/results.csv";
  rccmo::write_results_csv(csv, rows);
  std::cout << "wrote " << rows.size() << " rows to " << csv << "\n";
  return 0;
}

int cmd_ref_front(const std::string& problem, int resolution, const std::string& out) {
  rccmo::ProblemSpec ps;
  rccmo::TriVariant variant;
  try {
    ps = rccmo::problem_from_name(problem);
    variant = rccmo::tri_variant_from_name(problem);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const auto front = rccmo::reference_front(variant, resolution, ps.d);
  std::ofstream os(out);
  if (!os) {
    std::cerr << "cannot write to '" << out << "'\n";
    return 2;
  }
  os << "f1,f2\n";
  for (const auto& pt : front)
    os << rccmo::format_double(pt[0]) << ',' << rccmo::format_double(pt[1]) << "\n";
  std::cout << "wrote " << front.size() << " reference points to " << out << "\n";
  return 0;
}

int cmd_compare(const std::string& results_path, const std::string& metric,
                double alpha) {
  std::vector<rccmo::ResultRow> rows;
  try {
    rows = rccmo::read_results_csv(results_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const auto rep = rccmo::compare_results(rows, metric, alpha);
  for (const auto& e : rep.entries) {
    std::cout << e.problem << ": " << e.algo_a << " vs " << e.algo_b << " -> "
              << rccmo::verdict_symbol(e.verdict) << "\n";
  }
  for (const auto& [pair, tally] : rep.tallies) {
    std::cout << pair.first << " vs " << pair.second << " (+/-/≈): " << tally[0] << "/"
              << tally[1] << "/" << tally[2] << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained multi-objective optimization experiment harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, problem = "TRI1:d=15", front_out, results_path;
  std::string metric = "igd";
  int threads = 1, resolution = 1000;
  double alpha = 0.05;

  auto* run = app.add_subcommand("run", "Run the experiment matrix from a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory override");
  run->add_option("--threads", threads, "Worker threads");

  auto* ref = app.add_subcommand("ref-front", "Write a problem's reference front as CSV");
  ref->add_option("--problem", problem, "Problem name, e.g. TRI1:d=15")->required();
  ref->add_option("--resolution", resolution, "Grid resolution");
  ref->add_option("--out", front_out, "Output CSV path")->required();

  auto* cmp = app.add_subcommand("compare", "Pairwise rank-sum comparison of results");
  cmp->add_option("--results", results_path, "Results CSV from 'run'")->required();
  cmp->add_option("--metric", metric, "igd or hv");
  cmp->add_option("--alpha", alpha, "Significance level");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, out_dir, threads);
  if (ref->parsed()) return cmd_ref_front(problem, resolution, front_out);
  if (cmp->parsed()) return cmd_compare(results_path, metric, alpha);
  return 2;
}
