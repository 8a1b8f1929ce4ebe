#include "dualcd/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>

#include "dualcd/errors.hpp"
#include "dualcd/json_io.hpp"

namespace dualcd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

RateFit fit_rate(const std::vector<std::pair<long, double>>& gap_series, double tail_fraction,
                 double gap_floor) {
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
    throw InvalidArgument("fit_rate: tail_fraction must be in (0, 1]");
  // Keep only usable gaps; gaps at or below the floor sit in reference noise.
  std::vector<std::pair<long, double>> pts;  // (k, log gap)
  for (const auto& [k, g] : gap_series)
    if (std::isfinite(g) && g > 0.0 && g > gap_floor) pts.emplace_back(k, std::log(g));
  if (pts.size() < 2) throw InvalidArgument("fit_rate: need at least 2 positive gaps");

  size_t cnt = static_cast<size_t>(std::ceil(tail_fraction * static_cast<double>(pts.size())));
  cnt = std::clamp<size_t>(cnt, 2, pts.size());
  const size_t begin = pts.size() - cnt;

  double kbar = 0.0, ybar = 0.0;
  for (size_t i = begin; i < pts.size(); ++i) {
    kbar += static_cast<double>(pts[i].first);
    ybar += pts[i].second;
  }
  kbar /= static_cast<double>(cnt);
  ybar /= static_cast<double>(cnt);

  double skk = 0.0, sky = 0.0;
  for (size_t i = begin; i < pts.size(); ++i) {
    const double dk = static_cast<double>(pts[i].first) - kbar;
    skk += dk * dk;
    sky += dk * (pts[i].second - ybar);
  }

  RateFit fit;
  fit.slope = skk > 0.0 ? sky / skk : 0.0;
  fit.intercept = ybar - fit.slope * kbar;
  double ss_res = 0.0, ss_tot = 0.0;
  for (size_t i = begin; i < pts.size(); ++i) {
    const double k = static_cast<double>(pts[i].first);
    const double r = pts[i].second - (fit.intercept + fit.slope * k);
    const double t = pts[i].second - ybar;
    ss_res += r * r;
    ss_tot += t * t;
  }
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0)
                               : (ss_res <= 1e-24 ? 1.0 : 0.0);
  const double rho = std::exp(fit.slope);
  fit.rho_hat = std::clamp(rho, std::numeric_limits<double>::min(), 1.0);
  fit.window_begin = pts[begin].first;
  fit.window_end = pts.back().first;
  fit.points = static_cast<long>(cnt);
  return fit;
}

RateFit fit_rate(const Trace& trace, double tail_fraction, double gap_floor) {
  std::vector<std::pair<long, double>> series;
  series.reserve(trace.records.size());
  for (const auto& r : trace.records) series.emplace_back(r.k, r.gap);
  return fit_rate(series, tail_fraction, gap_floor);
}

double sigma_from_rate(double rho, int m) {
  if (m < 1) throw InvalidArgument("sigma_from_rate: m must be >= 1");
  if (!(rho > 0.0) || rho > 1.0) throw InvalidArgument("sigma_from_rate: rho must be in (0, 1]");
  const double t = static_cast<double>(m) * (1.0 - rho);
  if (t >= 1.0) return kInf;
  return t / (1.0 - t);
}

ComplexityReport complexity_estimates(double sigma, double sigma_bar, int m, double eps,
                                      double gap0) {
  if (!(sigma > 0.0) || !(sigma_bar > 0.0) || m < 1 || !(eps > 0.0) || !(gap0 > 0.0))
    throw InvalidArgument("complexity_estimates: all arguments must be positive");
  if (eps >= 1.0) throw InvalidArgument("complexity_estimates: eps must be < 1");

  ComplexityReport rep;
  const double log_inv_eps = std::log(1.0 / eps);
  rep.rcd_iterations = m * (1.0 + sigma) / sigma * log_inv_eps;
  rep.racd_iterations = m / std::sqrt(sigma) * log_inv_eps *
                        std::log2(std::log(gap0 / eps) * std::sqrt(sigma_bar / sigma));
  // The two bounds cross where log2(log(1/eps)) = sqrt(sigma) + 1/sqrt(sigma):
  // the restarted scheme wins above the crossover accuracy, the plain scheme
  // below it.
  const double threshold = std::sqrt(sigma) + 1.0 / std::sqrt(sigma);
  rep.racd_favored = std::log2(log_inv_eps) <= threshold;
  rep.crossover_eps_log10 = -std::exp2(threshold) / std::log(10.0);
  return rep;
}

Reference resolve_reference(const ProblemInstance& p) {
  Reference ref;
  if (p.certificate()) {
    const auto& c = *p.certificate();
    ref.d_star = c.d_star;
    ref.x_star = c.x_star;
    for (const auto& b : c.y_star) ref.y_star_sqnorm += b.squaredNorm();
    ref.source = "certificate";
    return ref;
  }
  // No certificate: restarted accelerated epochs under a projection cap, then
  // a monotone coordinate-descent polish run to stagnation.
  const int m = p.m();
  EpochSchedule sched(std::max<long>(8, EpochSchedule::k0_formula(1.0, m)), 1.0);
  RestartOptions ro;
  ro.base.record_trace = false;
  ro.epochs = 4096;
  ro.projection_cap = 300000;
  SolveResult acc = restarted_racd(p, DualState(p), sched, ro, RngSpec{12345});
  SolveOptions po;
  po.record_trace = false;
  po.budget = 200000;
  po.stagnation_rel = 1e-14;
  SolveResult pol = rcd_solve(p, std::move(acc.y), po, RngSpec{54321});
  ref.d_star = pol.final_d;
  ref.x_star = primal_from_dual(p, pol.y);
  for (int i = 0; i < pol.y.m(); ++i) ref.y_star_sqnorm += pol.y.block(i).squaredNorm();
  ref.source = "reference_solve";
  return ref;
}

void ExperimentConfig::validate() const {
  static const char* kSolvers[] = {"rcd",           "racd",          "restarted_racd",
                                   "dykstra_cyclic", "dykstra_random", "dykstra_accel",
                                   "dykstra_accel_restarted"};
  if (instance.empty()) throw InvalidArgument("config: instance is required");
  if (std::find_if(std::begin(kSolvers), std::end(kSolvers),
                   [&](const char* s) { return solver == s; }) == std::end(kSolvers))
    throw InvalidArgument("config: unknown solver '" + solver + "'");
  if (budget < 1) throw InvalidArgument("config: budget must be >= 1");
  if (tol < 0.0) throw InvalidArgument("config: tol must be >= 0");
  if (seeds.empty()) throw InvalidArgument("config: seeds must be non-empty");
  if (k0 < 0) throw InvalidArgument("config: k0 must be >= 0");
  if (!(sigma_bar > 0.0)) throw InvalidArgument("config: sigma_bar must be positive");
  if (epochs < 1) throw InvalidArgument("config: epochs must be >= 1");
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
    throw InvalidArgument("config: tail_fraction must be in (0, 1]");
}

namespace {

std::string sanitize_name(const std::string& ref) {
  std::string base = std::filesystem::path(ref).stem().string();
  if (base.empty()) base = "instance";
  for (char& c : base)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return base;
}

EpochSchedule schedule_for(const ExperimentConfig& cfg, int m) {
  if (cfg.k0 > 0) return EpochSchedule(cfg.k0, cfg.sigma_bar);
  return EpochSchedule::from_sigma_bar(cfg.sigma_bar, m);
}

Trace run_one(const ProblemInstance& p, const ExperimentConfig& cfg, const Reference& ref,
              const std::string& inst_name, std::uint64_t seed) {
  SolveOptions opts;
  opts.budget = cfg.budget;
  opts.tol = cfg.tol;
  opts.d_ref = ref.d_star;
  opts.x_ref = ref.x_star;
  opts.instance_id = inst_name;

  Trace tr;
  if (cfg.solver == "rcd") {
    tr = rcd_solve(p, DualState(p), opts, RngSpec{seed}).trace;
  } else if (cfg.solver == "racd") {
    tr = racd_solve(p, DualState(p), cfg.budget, opts, RngSpec{seed}).trace;
  } else if (cfg.solver == "restarted_racd") {
    RestartOptions ro;
    ro.base = opts;
    ro.epochs = cfg.epochs;
    ro.projection_cap = cfg.budget;
    tr = restarted_racd(p, DualState(p), schedule_for(cfg, p.m()), ro, RngSpec{seed}).trace;
  } else {
    if (!p.is_best_approximation())
      throw InvalidArgument("config: solver '" + cfg.solver +
                            "' needs a best-approximation objective");
    TraceRefs refs;
    refs.d_star = ref.d_star;
    refs.x_star = ref.x_star;
    if (cfg.solver == "dykstra_cyclic") {
      const long sweeps = std::max<long>(1, cfg.budget / p.m());
      tr = dykstra_cyclic(p.v(), p.sets(), sweeps, refs).trace;
    } else if (cfg.solver == "dykstra_random") {
      RandomDykstraOptions dopts;
      dopts.budget = cfg.budget;
      dopts.tol = cfg.tol;
      tr = dykstra_random(p.v(), p.sets(), dopts, RngSpec{seed}, refs).trace;
    } else if (cfg.solver == "dykstra_accel") {
      tr = dykstra_accel_random(p.v(), p.sets(), cfg.budget, RngSpec{seed}, refs).trace;
    } else {  // dykstra_accel_restarted
      tr = dykstra_accel_restarted(p.v(), p.sets(), schedule_for(cfg, p.m()), cfg.epochs,
                                   RngSpec{seed}, refs, cfg.budget, cfg.tol)
               .trace;
    }
  }
  tr.instance_id = inst_name;
  tr.seed = seed;
  return tr;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const CertifiedInstance inst = load_instance(cfg.instance);
  const ProblemInstance& p = inst.problem;
  const std::string name = sanitize_name(inst.name);
  const Reference ref = resolve_reference(p);

  // Seeds are independent cells; run them concurrently and collect in seed
  // order so every aggregate below is reduction-order deterministic.
  std::vector<Trace> traces(cfg.seeds.size());
  if (cfg.seeds.size() == 1) {
    traces[0] = run_one(p, cfg, ref, name, cfg.seeds[0]);
  } else {
    std::vector<std::future<Trace>> cells;
    cells.reserve(cfg.seeds.size());
    for (std::uint64_t seed : cfg.seeds)
      cells.push_back(std::async(std::launch::async,
                                 [&, seed] { return run_one(p, cfg, ref, name, seed); }));
    for (size_t i = 0; i < cells.size(); ++i) traces[i] = cells[i].get();
  }

  ExperimentSummary sum;
  sum.solver = cfg.solver;
  sum.instance = inst.name;
  sum.seeds = cfg.seeds;
  sum.d_star = ref.d_star;
  sum.d_star_source = ref.source;

  const double gap0 = traces[0].records.empty() ? 1.0 : traces[0].records[0].gap;
  const double gap_floor = 1e-13 * std::max(1.0, std::abs(gap0));

  for (const auto& tr : traces)
    sum.rho_hat.push_back(fit_rate(tr, cfg.tail_fraction, gap_floor).rho_hat);

  // Mean gap over seeds at each shared iteration index.
  size_t shared = traces[0].records.size();
  for (const auto& tr : traces) shared = std::min(shared, tr.records.size());
  sum.mean_gap.assign(shared, 0.0);
  for (const auto& tr : traces)
    for (size_t j = 0; j < shared; ++j) sum.mean_gap[j] += tr.records[j].gap;
  for (double& g : sum.mean_gap) g /= static_cast<double>(traces.size());

  std::vector<std::pair<long, double>> mean_series;
  mean_series.reserve(shared);
  for (size_t j = 0; j < shared; ++j)
    mean_series.emplace_back(traces[0].records[j].k, sum.mean_gap[j]);
  sum.mean_fit = fit_rate(mean_series, cfg.tail_fraction, gap_floor);
  sum.sigma_hat = sigma_from_rate(sum.mean_fit.rho_hat, p.m());

  // Per-iterate primal bound: 0.5 * sigma_g * ||x^k - x*||^2 <= gap + 1e-9.
  const double sigma_g = p.objective().sigma();
  for (const auto& tr : traces)
    for (const auto& r : tr.records) {
      if (!std::isfinite(r.gap) || !std::isfinite(r.primal_err)) continue;
      if (0.5 * sigma_g * r.primal_err * r.primal_err > r.gap + 1e-9) sum.thpd_pass = false;
    }

  // Expectation-rate envelope, evaluated on the mean gap curve over the
  // fitted tail window: mean_gap[k] <= (1 - s/(m(s+1)))^k (gap0 + 0.5||y*||^2) * 1.1
  // with s the fitted sigma_hat.
  if (cfg.solver == "rcd") {
    sum.envelope.checked = true;
    const int m = p.m();
    sum.envelope.rho_env = std::isinf(sum.sigma_hat)
                               ? 1.0 - 1.0 / m
                               : 1.0 - sum.sigma_hat / (m * (sum.sigma_hat + 1.0));
    sum.envelope.constant = (gap0 + 0.5 * ref.y_star_sqnorm) * 1.1;
    for (size_t j = 0; j < shared; ++j) {
      const long k = traces[0].records[j].k;
      if (k < sum.mean_fit.window_begin || k > sum.mean_fit.window_end) continue;
      const double bound = sum.envelope.constant * std::pow(sum.envelope.rho_env, k);
      if (sum.mean_gap[j] > bound) sum.envelope.pass = false;
    }
  }

  if (!cfg.out_dir.empty()) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& tr : traces) {
      const std::string fname =
          "trace_" + cfg.solver + "_" + name + "_" + std::to_string(tr.seed) + ".csv";
      std::ofstream os(dir / fname);
      if (!os) throw InvalidArgument("cannot write file: " + (dir / fname).string());
      tr.to_csv(os);
      sum.trace_files.push_back(fname);
    }
    write_json_file((dir / "summary.json").string(), summary_to_json(sum));
  }
  return sum;
}

}  // namespace dualcd
