// Command-line front end: experiment runs, one-shot projections, solver
// benchmarks, regularity/rate estimation, and restart-schedule checks.

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "dualcd/errors.hpp"
#include "dualcd/harness.hpp"
#include "dualcd/instances.hpp"
#include "dualcd/json_io.hpp"

namespace {

using namespace dualcd;

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) return {std::stoull(spec)};
  const std::uint64_t a = std::stoull(spec.substr(0, dots));
  const std::uint64_t b = std::stoull(spec.substr(dots + 2));
  if (b < a) throw InvalidArgument("--seeds: range end before start");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
  return seeds;
}

std::string format_vec(const Vector& x) {
  std::string out = "(";
  char buf[64];
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", x[i]);
    out += buf;
    if (i + 1 < x.size()) out += ",";
  }
  return out + ")";
}

int cmd_solve(const std::string& config_path, const CLI::App& cmd, const std::string& seeds,
              const std::string& out, long budget, double tol, long k0, double sigma_bar) {
  ExperimentConfig cfg = experiment_config_from_json(read_json_file(config_path));
  if (cmd.count("--seeds")) cfg.seeds = parse_seeds(seeds);
  if (cmd.count("--out")) cfg.out_dir = out;
  if (cmd.count("--budget")) cfg.budget = budget;
  if (cmd.count("--tol")) cfg.tol = tol;
  if (cmd.count("--k0")) cfg.k0 = k0;
  if (cmd.count("--sigma-bar")) cfg.sigma_bar = sigma_bar;
  const ExperimentSummary sum = run_experiment(cfg);
  std::cout << summary_to_json(sum).dump(2) << "\n";
  return 0;
}

int cmd_project(const std::string& instance, long budget, double tol, std::uint64_t seed) {
  const CertifiedInstance inst = load_instance(instance);
  const ProblemInstance& p = inst.problem;
  if (!p.is_best_approximation())
    throw InvalidArgument("project: instance must carry a best-approximation objective");
  const Reference ref = resolve_reference(p);
  TraceRefs refs;
  refs.d_star = ref.d_star;
  refs.x_star = ref.x_star;
  refs.record = false;
  const EpochSchedule sched(EpochSchedule::k0_formula(1.0, p.m()), 1.0);
  const auto res =
      dykstra_accel_restarted(p.v(), p.sets(), sched, 64, RngSpec{seed}, refs, budget, tol);
  std::printf("x = %s\n", format_vec(res.x).c_str());
  std::printf("d = %.12g\n", res.final_d);
  const double gap = res.final_d - ref.d_star;
  std::printf("gap = %.12g  (d* from %s)\n", gap, ref.source.c_str());
  std::printf("||x - x*|| <= %.12g  (primal-dual bound)\n", std::sqrt(2.0 * std::max(0.0, gap)));
  return 0;
}

int cmd_bench(const std::string& instance, const std::string& seeds, long budget,
              const std::string& out) {
  ExperimentConfig cfg;
  cfg.instance = instance;
  cfg.seeds = parse_seeds(seeds);
  cfg.budget = budget;

  const CertifiedInstance inst = load_instance(instance);
  std::vector<std::string> solvers = {"rcd", "racd", "restarted_racd"};
  if (inst.problem.is_best_approximation()) solvers.push_back("dykstra_cyclic");

  std::vector<ExperimentSummary> rows;
  std::printf("%-24s %-12s %-12s %-8s %s\n", "solver", "rho_hat", "sigma_hat", "thpd",
              "final mean gap");
  for (const auto& s : solvers) {
    ExperimentConfig c = cfg;
    c.solver = s;
    if (!out.empty()) c.out_dir = out + "/" + s;
    rows.push_back(run_experiment(c));
    const auto& r = rows.back();
    std::printf("%-24s %-12.6g %-12.6g %-8s %.6g\n", s.c_str(), r.mean_fit.rho_hat, r.sigma_hat,
                r.thpd_pass ? "pass" : "FAIL", r.mean_gap.empty() ? 0.0 : r.mean_gap.back());
  }

  // Per-seed contraction-factor comparison: restarted accelerated vs plain.
  const auto& rcd = rows[0];
  const auto& rra = rows[2];
  size_t wins = 0;
  for (size_t i = 0; i < cfg.seeds.size(); ++i)
    if (rra.rho_hat[i] <= rcd.rho_hat[i]) ++wins;
  std::printf("restarted_racd rho_hat <= rcd rho_hat on %zu/%zu seeds\n", wins,
              cfg.seeds.size());
  return 0;
}

int cmd_estimate(const std::string& instance, long samples, double radius, std::uint64_t seed,
                 const std::string& seeds, long budget) {
  const CertifiedInstance inst = load_instance(instance);
  const ProblemInstance& p = inst.problem;
  const auto reg = estimate_linear_regularity(p.sets(), reference_projector(p.sets()), samples,
                                              radius, RngSpec{seed});
  std::printf("mu_hat = %.6g  (probes used %ld, skipped %ld)\n", reg.mu_hat, reg.used,
              reg.skipped);
  ExperimentConfig cfg;
  cfg.instance = instance;
  cfg.solver = "rcd";
  cfg.seeds = parse_seeds(seeds);
  cfg.budget = budget;
  const ExperimentSummary sum = run_experiment(cfg);
  std::printf("rho_hat = %.6g  sigma_hat = %.6g  (rcd tail fit, %zu seeds, budget %ld, r2 %.3g)\n",
              sum.mean_fit.rho_hat, sum.sigma_hat, cfg.seeds.size(), cfg.budget,
              sum.mean_fit.r_squared);
  return 0;
}

int cmd_check_schedule(long k0, int p, double sigma_bar, int m, bool from_sigma) {
  const EpochSchedule sched = from_sigma ? EpochSchedule::from_sigma_bar(sigma_bar, m)
                                         : EpochSchedule(k0, sigma_bar);
  const auto prefix = sched.prefix(p);
  std::string line;
  for (size_t i = 0; i < prefix.size(); ++i) {
    line += std::to_string(prefix[i]);
    if (i + 1 < prefix.size()) line += ",";
  }
  std::printf("%s\n", line.c_str());
  if (!sched.check_conditions(p)) {
    std::printf("conditions fail: p = %d\n", p);
    return 1;
  }
  std::printf("conditions hold: p ≤ %d\n", p);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual random coordinate descent over set intersections"};
  app.require_subcommand(1);

  std::string config_path, seeds = "1..10", out, instance;
  long budget = 5000, k0 = 6, samples = 200;
  double tol = 0.0, sigma_bar = 1.0, radius = 3.0;
  std::uint64_t seed = 1;
  int p = 3, m = 2;

  auto* solve = app.add_subcommand("solve", "Run an experiment from a config file");
  solve->add_option("--config", config_path, "Experiment config JSON")->required();
  solve->add_option("--seeds", seeds, "Seed range a..b or a single seed");
  solve->add_option("--out", out, "Output directory for traces and summary");
  solve->add_option("--budget", budget, "Iteration budget");
  solve->add_option("--tol", tol, "Gap tolerance");
  solve->add_option("--k0", k0, "Base epoch length (0: derive from sigma-bar)");
  solve->add_option("--sigma-bar", sigma_bar, "Lower estimate of the growth constant");

  auto* project = app.add_subcommand("project", "One-shot best approximation");
  project->add_option("--instance", instance, "Builtin name or instance JSON path")->required();
  project->add_option("--budget", budget, "Projection budget");
  project->add_option("--tol", tol, "Gap tolerance");
  project->add_option("--seed", seed, "RNG seed");

  auto* bench = app.add_subcommand("bench", "Head-to-head solver comparison on one instance");
  bench->add_option("--instance", instance, "Builtin name or instance JSON path")->required();
  bench->add_option("--seeds", seeds, "Seed range a..b or a single seed");
  bench->add_option("--budget", budget, "Iteration budget");
  bench->add_option("--out", out, "Output directory (per-solver subdirectories)");

  auto* estimate = app.add_subcommand("estimate", "Regularity and empirical rate estimates");
  estimate->add_option("--instance", instance, "Builtin name or instance JSON path")->required();
  estimate->add_option("--samples", samples, "Regularity probe count");
  estimate->add_option("--radius", radius, "Probe sampling radius");
  estimate->add_option("--seed", seed, "Probe RNG seed");
  estimate->add_option("--seeds", seeds, "Seed range for the rate fit");
  estimate->add_option("--budget", budget, "Iteration budget for the rate fit");

  auto* sched = app.add_subcommand("check-schedule", "Print and verify the restart schedule");
  sched->add_option("--k0", k0, "Base epoch length");
  sched->add_option("--p", p, "Check conditions for exponents up to p");
  sched->add_option("--sigma-bar", sigma_bar, "Derive k0 from this growth estimate");
  sched->add_option("--m", m, "Block count used when deriving k0");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(config_path, *solve, seeds, out, budget, tol, k0, sigma_bar);
    if (project->parsed()) return cmd_project(instance, budget, tol, seed);
    if (bench->parsed()) return cmd_bench(instance, seeds, budget, out);
    if (estimate->parsed()) return cmd_estimate(instance, samples, radius, seed, seeds, budget);
    if (sched->parsed())
      return cmd_check_schedule(k0, p, sigma_bar, m, sched->count("--sigma-bar") > 0);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
