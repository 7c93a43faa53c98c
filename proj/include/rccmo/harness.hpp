#ifndef RCCMO_HARNESS_HPP
#define RCCMO_HARNESS_HPP

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rccmo/baseline.hpp"
#include "rccmo/engine.hpp"
#include "rccmo/metrics.hpp"
#include "rccmo/problems.hpp"

namespace rccmo {

enum class Algorithm { Rccmo, RccmoNoAus, CdpBaseline };

inline std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Rccmo: return "RCCMO";
    case Algorithm::RccmoNoAus: return "RCCMO_NO_AUS";
    case Algorithm::CdpBaseline: return "CDP_BASELINE";
  }
  return "?";
}

inline Algorithm algorithm_from_name(const std::string& s) {
  if (s == "RCCMO") return Algorithm::Rccmo;
  if (s == "RCCMO_NO_AUS") return Algorithm::RccmoNoAus;
  if (s == "CDP_BASELINE") return Algorithm::CdpBaseline;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<Algorithm> algorithms;
  int runs = 1;
  std::uint64_t base_seed = 0;
  RunConfig run_config;
  std::string outputs = "out";
  bool emit_trace = false;
};

struct ResultRow {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::int64_t fe_used = 0;
  double runtime_ms = 0.0;
  int feasible_count = 0;
  MetricResult igd_result;
  MetricResult hv_result;
};

inline RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {}) {
  RunConfig c = base;
  if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
  if (j.contains("max_fe")) c.max_fe = j.at("max_fe").get<std::int64_t>();
  if (j.contains("v")) c.v = j.at("v").get<int>();
  if (j.contains("beta")) c.beta = j.at("beta").get<double>();
  if (j.contains("stability_window")) c.stability_window = j.at("stability_window").get<int>();
  if (j.contains("stability_tol")) c.stability_tol = j.at("stability_tol").get<double>();
  if (j.contains("per_target_fe_cap"))
    c.per_target_fe_cap = j.at("per_target_fe_cap").get<std::int64_t>();
  if (j.contains("eq_tol")) c.eq_tol = j.at("eq_tol").get<double>();
  if (j.contains("de_f")) c.variation.de_f = j.at("de_f").get<double>();
  if (j.contains("de_cr")) c.variation.de_cr = j.at("de_cr").get<double>();
  if (j.contains("pm")) c.variation.pm = j.at("pm").get<double>();
  if (j.contains("eta_m")) c.variation.eta_m = j.at("eta_m").get<double>();
  return c;
}

/// Parses and validates the experiment JSON; throws std::invalid_argument on
/// any unknown problem or algorithm before anything runs.
inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  for (const auto& p : j.at("problems")) {
    const std::string name = p.get<std::string>();
    problem_from_name(name);  // validate
    cfg.problems.push_back(name);
  }
  for (const auto& a : j.at("algorithms"))
    cfg.algorithms.push_back(algorithm_from_name(a.get<std::string>()));
  cfg.runs = j.at("runs").get<int>();
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  cfg.base_seed = j.value("base_seed", std::uint64_t{0});
  if (j.contains("run_config")) cfg.run_config = run_config_from_json(j.at("run_config"));
  cfg.run_config.validate();
  cfg.outputs = j.value("outputs", std::string{"out"});
  cfg.emit_trace = j.value("emit_trace", false);
  if (cfg.problems.empty()) throw std::invalid_argument("no problems given");
  if (cfg.algorithms.empty()) throw std::invalid_argument("no algorithms given");
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return experiment_config_from_json(j);
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_value(const MetricResult& m) {
  return m.defined ? format_double(m.value) : std::string{"NaN"};
}

inline RunResult run_algorithm(Algorithm alg, const ProblemSpec& problem, RunConfig rc) {
  switch (alg) {
    case Algorithm::Rccmo:
      return run_rccmo(problem, rc);
    case Algorithm::RccmoNoAus:
      rc.v = 1;  // every-generation updates: the ablated schedule
      return run_rccmo(problem, rc);
    case Algorithm::CdpBaseline:
      return run_cdp_baseline(problem, rc);
  }
  throw std::logic_error("unreachable");
}

inline void write_trace_jsonl(const std::string& path, const RunResult& rr) {
  std::ofstream out(path);
  for (const auto& t : rr.trace) {
    nlohmann::json j;
    j["gen"] = t.gen;
    j["fe"] = t.fe;
    j["pc"] = t.pc;
    j["dirs"] = t.dirs;
    j["R"] = t.priority;
    j["feas_main"] = t.feas_main;
    j["min_cv_main"] = t.min_cv_main;
    out << j.dump() << "\n";
  }
}

/// Runs the full (problem x algorithm x seed) matrix. Cells are independent
/// and execute on up to `threads` workers; row order and content are a pure
/// function of the config (runtime_ms aside).
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                             int threads = 1) {
  struct Cell {
    std::size_t pi, ai;
    int run;
  };
  std::vector<Cell> cells;
  for (std::size_t pi = 0; pi < cfg.problems.size(); ++pi)
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai)
      for (int r = 0; r < cfg.runs; ++r) cells.push_back({pi, ai, r});

  // Reference fronts are shared per problem; compute them up front.
  std::map<std::string, std::vector<std::vector<double>>> fronts;
  for (const auto& name : cfg.problems) {
    if (fronts.count(name)) continue;
    const ProblemSpec ps = problem_from_name(name);
    std::vector<std::vector<double>> ref;
    for (const auto& pt : reference_front(tri_variant_from_name(name), 1000, ps.d))
      ref.push_back({pt[0], pt[1]});
    fronts.emplace(name, std::move(ref));
  }

  const bool emit = cfg.emit_trace;
  if (emit) std::filesystem::create_directories(cfg.outputs);

  std::vector<ResultRow> rows(cells.size());
  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      std::size_t k;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= cells.size()) return;
        k = next++;
      }
      const Cell& cell = cells[k];
      const std::string& pname = cfg.problems[cell.pi];
      const Algorithm alg = cfg.algorithms[cell.ai];
      const ProblemSpec problem = problem_from_name(pname);
      RunConfig rc = cfg.run_config;
      rc.seed = cfg.base_seed + static_cast<std::uint64_t>(cell.run);

      const auto t0 = std::chrono::steady_clock::now();
      const RunResult rr = run_algorithm(alg, problem, rc);
      const auto t1 = std::chrono::steady_clock::now();

      std::vector<std::vector<double>> feasible_objs;
      for (const auto& s : rr.final_pop)
        if (s.feasible()) feasible_objs.push_back(s.objectives);

      ResultRow row;
      row.problem = pname;
      row.algorithm = algorithm_name(alg);
      row.seed = rc.seed;
      row.fe_used = rr.fe_used;
      row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      row.feasible_count = static_cast<int>(feasible_objs.size());
      row.igd_result = igd(fronts.at(pname), feasible_objs);
      row.hv_result = hypervolume(feasible_objs,
                                  std::vector<double>(static_cast<std::size_t>(problem.m), 1.0),
                                  rc.seed);
      if (emit) {
        write_trace_jsonl(cfg.outputs + "/trace_" + pname.substr(0, pname.find(':')) +
                              "_" + row.algorithm + "_" + std::to_string(row.seed) +
                              ".jsonl",
                          rr);
      }
      rows[k] = std::move(row);
    }
  };

  const int nt = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return rows;
}

inline void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write results to '" + path + "'");
  out << "problem,algorithm,seed,fe_used,runtime_ms,feasible_count,igd,hv\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.algorithm << ',' << r.seed << ',' << r.fe_used << ','
        << format_double(r.runtime_ms) << ',' << r.feasible_count << ','
        << csv_value(r.igd_result) << ',' << csv_value(r.hv_result) << "\n";
  }
}

inline std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open results file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty results file");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 8) throw std::invalid_argument("bad results row: " + line);
    ResultRow r;
    r.problem = f[0];
    r.algorithm = f[1];
    r.seed = std::stoull(f[2]);
    r.fe_used = std::stoll(f[3]);
    r.runtime_ms = std::stod(f[4]);
    r.feasible_count = std::stoi(f[5]);
    auto parse_metric = [](const std::string& s, const char* name) {
      MetricResult m;
      m.name = name;
      if (s == "NaN") {
        m.defined = false;
      } else {
        m.value = std::stod(s);
      }
      return m;
    };
    r.igd_result = parse_metric(f[6], "igd");
    r.hv_result = parse_metric(f[7], "hv");
    rows.push_back(std::move(r));
  }
  return rows;
}

struct ComparisonEntry {
  std::string problem;
  std::string algo_a;
  std::string algo_b;
  RankSumVerdict verdict = RankSumVerdict::NoDifference;
};

struct ComparisonReport {
  std::vector<ComparisonEntry> entries;
  // per (algo_a, algo_b): counts of A_BETTER / B_BETTER / NO_DIFFERENCE
  std::map<std::pair<std::string, std::string>, std::array<int, 3>> tallies;
};

/// Pairwise rank-sum comparison per problem. Values are oriented so that
/// smaller is better for both metrics (HV is negated); undefined metrics
/// rank worse than any defined value.
inline ComparisonReport compare_results(const std::vector<ResultRow>& rows,
                                        const std::string& metric, double alpha) {
  if (metric != "igd" && metric != "hv")
    throw std::invalid_argument("compare: metric must be 'igd' or 'hv'");
  std::map<std::string, std::map<std::string, std::vector<double>>> by_problem;
  for (const auto& r : rows) {
    const MetricResult& m = metric == "igd" ? r.igd_result : r.hv_result;
    double v;
    if (!m.defined) {
      v = kInf;
    } else {
      v = metric == "hv" ? -m.value : m.value;
    }
    by_problem[r.problem][r.algorithm].push_back(v);
  }
  ComparisonReport rep;
  for (const auto& [problem, algos] : by_problem) {
    for (auto ia = algos.begin(); ia != algos.end(); ++ia) {
      for (auto ib = std::next(ia); ib != algos.end(); ++ib) {
        const RankSumVerdict verdict =
            wilcoxon_rank_sum(ia->second, ib->second, alpha);
        rep.entries.push_back({problem, ia->first, ib->first, verdict});
        auto& tally = rep.tallies[{ia->first, ib->first}];
        tally[static_cast<std::size_t>(verdict)] += 1;
      }
    }
  }
  return rep;
}

inline std::string verdict_symbol(RankSumVerdict v) {
  switch (v) {
    case RankSumVerdict::ABetter: return "+";
    case RankSumVerdict::BBetter: return "-";
    case RankSumVerdict::NoDifference: return "≈";
  }
  return "?";
}

}  // namespace rccmo

#endif  // RCCMO_HARNESS_HPP
