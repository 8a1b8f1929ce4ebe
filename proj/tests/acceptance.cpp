// Acceptance gate: ten numbered criteria, one PASS/FAIL line each, nonzero
// exit status when any criterion fails. Tolerances are pinned in the code
// next to each check.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "dualcd/harness.hpp"
#include "dualcd/instances.hpp"
#include "dualcd/json_io.hpp"
#include "dualcd/solvers.hpp"

using namespace dualcd;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s  %2d  %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector random_vec(SplitMix64& gen, int n, double scale) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = scale * gen.normal();
  return x;
}

std::vector<CertifiedInstance> certified_suites() {
  std::vector<CertifiedInstance> out;
  for (auto& inst : builtin_suites())
    if (!inst.diagnostic_only) out.push_back(std::move(inst));
  return out;
}

ConvexSet random_set(SplitMix64& gen, int kind_idx, int n) {
  switch (kind_idx) {
    case 0:
      return ConvexSet::hyperplane(random_vec(gen, n, 1.0) + Vector::Ones(n) * 0.1,
                                   2.0 * gen.normal());
    case 1:
      return ConvexSet::halfspace(random_vec(gen, n, 1.0) + Vector::Ones(n) * 0.1,
                                  2.0 * gen.normal());
    case 2:
      return ConvexSet::ball(random_vec(gen, n, 1.0), 0.1 + 2.9 * gen.uniform01());
    case 3: {
      const Vector a = random_vec(gen, n, 1.5);
      const Vector b = random_vec(gen, n, 1.5);
      return ConvexSet::box(a.cwiseMin(b), a.cwiseMax(b));
    }
    case 4:
      return ConvexSet::second_order_cone(n);
    default: {
      Matrix A(1, n);
      Vector a = random_vec(gen, n, 1.0);
      a[0] += 0.5;  // keep away from zero
      A.row(0) = a.normalized();
      return ConvexSet::affine_subspace(A, Vector::Constant(1, gen.normal()));
    }
  }
}

// First-order optimality of z = prox_{alpha*supp}(y): w = (y - z)/alpha must
// lie in the set and maximize <z, .> over it.
double prox_residual(const ConvexSet& s, double alpha, const Vector& y, SplitMix64& gen) {
  const Vector z = s.prox_support(alpha, y);
  const Vector w = (y - z) / alpha;
  double res = s.distance(w) / (1.0 + w.norm());
  const double best = z.dot(w);
  for (int q = 0; q < 16; ++q) {
    const Vector member = s.project(random_vec(gen, s.dim(), 4.0));
    res = std::max(res, (z.dot(member) - best) / (1.0 + std::abs(best)));
  }
  return res;
}

void criterion_1() {
  const double t0 = now_seconds();
  SplitMix64 gen(1001);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int kind = t % 6;
    const int n = 2 + static_cast<int>(gen.bounded(5));
    const ConvexSet s = random_set(gen, kind, n);
    const double alpha = std::pow(10.0, -1.0 + 2.0 * gen.uniform01());  // [0.1, 10]
    const Vector y = random_vec(gen, n, 3.0);
    worst = std::max(worst, prox_residual(s, alpha, y, gen));
  }
  const double dt = now_seconds() - t0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "prox first-order optimality: 1000 cases, max residual %.2e (tol 1e-6), %.2f s "
                "(limit 5 s)",
                worst, dt);
  report(1, worst <= 1e-6 && dt < 5.0, buf);
}

void criterion_2() {
  long checked = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& inst : certified_suites()) {
    const auto& p = inst.problem;
    for (unsigned long seed = 1; seed <= 10; ++seed) {
      SolveOptions opts;
      opts.budget = 10000;
      const auto res = rcd_solve(p, DualState(p), opts, RngSpec{seed});
      for (size_t k = 1; k < res.trace.records.size(); ++k) {
        worst = std::max(worst, res.trace.records[k].d - res.trace.records[k - 1].d);
        ++checked;
      }
      RandomDykstraOptions dopts;
      dopts.budget = 10000;
      const auto dyk = dykstra_random(p.v(), p.sets(), dopts, RngSpec{seed});
      for (size_t k = 1; k < dyk.trace.records.size(); ++k) {
        worst = std::max(worst, dyk.trace.records[k].d - dyk.trace.records[k - 1].d);
        ++checked;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "deterministic dual descent: %ld steps on 7 instances x 10 seeds, max increase "
                "%.2e (tol 1e-12)",
                checked, worst);
  report(2, worst <= 1e-12, buf);
}

void criterion_3() {
  // The coordinate-descent and Dykstra routes follow identical arithmetic;
  // only their stagnation detectors read the dual value through different
  // caches, so each run may stop a window or two apart. Compare the common
  // prefix and insist it is long enough to be meaningful.
  double worst_plain = 0.0, worst_accel = 0.0;
  long compared = 0;
  long worst_stop_gap = 0;  // in units of the 10*m stagnation window
  for (const auto& inst : certified_suites()) {
    if (inst.name == "soc_box") continue;  // suites (a)-(d)
    const auto& p = inst.problem;
    const long window = 10L * p.m();
    for (unsigned long seed = 1; seed <= 3; ++seed) {
      SolveOptions so;
      so.budget = 2000;
      so.keep_primal = true;
      so.record_trace = false;
      const auto a = rcd_solve(p, DualState(p), so, RngSpec{seed});
      RandomDykstraOptions dopts;
      dopts.budget = 2000;
      TraceRefs refs;
      refs.record = false;
      refs.keep_primal = true;
      const auto b = dykstra_random(p.v(), p.sets(), dopts, RngSpec{seed}, refs);
      const long na = static_cast<long>(a.primal_history.size());
      const long nb = static_cast<long>(b.primal_history.size());
      worst_stop_gap = std::max(worst_stop_gap, std::abs(na - nb) / window);
      for (long k = 0; k < std::min(na, nb); ++k, ++compared)
        worst_plain =
            std::max(worst_plain, (a.primal_history[k] - b.primal_history[k]).norm());

      const auto ra = racd_solve(p, DualState(p), 1000, so, RngSpec{seed});
      const auto rb = dykstra_accel_random(p.v(), p.sets(), 1000, RngSpec{seed}, refs);
      const long nacc = static_cast<long>(
          std::min(ra.primal_history.size(), rb.primal_history.size()));
      worst_stop_gap = std::max(
          worst_stop_gap, std::abs(static_cast<long>(ra.primal_history.size()) -
                                   static_cast<long>(rb.primal_history.size())) /
                              window);
      for (long k = 0; k < nacc; ++k, ++compared)
        worst_accel =
            std::max(worst_accel, (ra.primal_history[k] - rb.primal_history[k]).norm());
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "route equivalence over %ld same-seed iterates: plain max diff %.2e (tol "
                "1e-10), accelerated %.2e (tol 1e-8), stop steps within %ld windows (<= 3)",
                compared, worst_plain, worst_accel, worst_stop_gap);
  report(3, worst_plain <= 1e-10 && worst_accel <= 1e-8 && worst_stop_gap <= 3, buf);
}

void criterion_4() {
  const double t0 = now_seconds();
  long worst_hit = 0;
  bool all_hit = true;
  std::vector<long> tangent_hits(11, 0);  // per-seed first hit on suite (d)
  for (const auto& inst : certified_suites()) {
    const auto& p = inst.problem;
    TraceRefs refs;
    refs.x_star = p.certificate()->x_star;
    for (unsigned long seed = 1; seed <= 10; ++seed) {
      RandomDykstraOptions dopts;
      dopts.budget = 100000;
      const auto res = dykstra_random(p.v(), p.sets(), dopts, RngSpec{seed}, refs);
      long hit = -1;
      for (const auto& r : res.trace.records)
        if (r.primal_err <= 1e-6) {
          hit = r.k;
          break;
        }
      if (hit < 0) {
        all_hit = false;
        hit = dopts.budget + 1;
      }
      worst_hit = std::max(worst_hit, hit);
      if (inst.name == "tangent_balls") tangent_hits[seed] = hit;
    }
  }

  // Restarted accelerated route beats the plain one in projections on the
  // ill-conditioned pair for most seeds.
  const auto tangent = builtin_instance("tangent_balls");
  const EpochSchedule sched = EpochSchedule::from_sigma_bar(1.0, tangent.problem.m());
  int accel_wins = 0;
  for (unsigned long seed = 1; seed <= 10; ++seed) {
    TraceRefs refs;
    refs.x_star = tangent.problem.certificate()->x_star;
    const auto acc = dykstra_accel_restarted(tangent.problem.v(), tangent.problem.sets(),
                                             sched, 1 << 20, RngSpec{seed}, refs, 100000);
    long proj = -1;
    for (const auto& r : acc.trace.records)
      if (r.primal_err <= 1e-6) {
        proj = r.projections;
        break;
      }
    if (proj >= 0 && proj < tangent_hits[seed]) ++accel_wins;
  }
  const double dt = now_seconds() - t0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "certified convergence: 1e-6 within %ld <= 1e5 iterations (7 instances x 10 "
                "seeds); accelerated wins %d/10 (need 8); %.1f s (limit 60 s)",
                worst_hit, accel_wins, dt);
  report(4, all_hit && accel_wins >= 8 && dt < 60.0, buf);
}

void criterion_5() {
  long checked = 0, violations = 0;
  for (const auto& inst : certified_suites()) {
    const auto& p = inst.problem;
    const double d_star = p.certificate()->d_star;
    const Vector& x_star = p.certificate()->x_star;
    std::vector<Trace> traces;

    for (unsigned long seed = 1; seed <= 2; ++seed) {
      SolveOptions so;
      so.budget = 2000;
      so.d_ref = d_star;
      so.x_ref = x_star;
      traces.push_back(rcd_solve(p, DualState(p), so, RngSpec{seed}).trace);
      traces.push_back(racd_solve(p, DualState(p), 2000, so, RngSpec{seed}).trace);
      RestartOptions ro;
      ro.base = so;
      ro.epochs = 1 << 20;
      ro.projection_cap = 2000;
      const EpochSchedule sched = EpochSchedule::from_sigma_bar(1.0, p.m());
      traces.push_back(restarted_racd(p, DualState(p), sched, ro, RngSpec{seed}).trace);

      TraceRefs refs;
      refs.d_star = d_star;
      refs.x_star = x_star;
      traces.push_back(
          dykstra_cyclic(p.v(), p.sets(), std::max(1L, 2000L / p.m()), refs).trace);
      RandomDykstraOptions dopts;
      dopts.budget = 2000;
      traces.push_back(dykstra_random(p.v(), p.sets(), dopts, RngSpec{seed}, refs).trace);
      traces.push_back(dykstra_accel_random(p.v(), p.sets(), 2000, RngSpec{seed}, refs).trace);
      traces.push_back(dykstra_accel_restarted(p.v(), p.sets(), sched, 1 << 20, RngSpec{seed},
                                               refs, 2000)
                           .trace);
    }
    for (const auto& tr : traces)
      for (const auto& r : tr.records) {
        ++checked;
        if (0.5 * r.primal_err * r.primal_err > r.gap + 1e-9) ++violations;
      }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "primal-dual certificate 0.5||x-x*||^2 <= gap + 1e-9: %ld violations over %ld "
                "iterates (7 solvers x 7 instances x 2 seeds)",
                violations, checked);
  report(5, violations == 0, buf);
}

void criterion_6() {
  struct Run {
    const char* name;
    long budget;
  };
  const Run runs[4] = {{"ball_halfspace", 6000},
                       {"balls_m2_n2", 6000},
                       {"balls_m5_n10", 6000},
                       {"balls_m20_n50", 20000}};
  bool ok = true;
  std::string detail = "linear-rate evidence (50 seeds):";
  for (const auto& run : runs) {
    ExperimentConfig cfg;
    cfg.instance = run.name;
    cfg.solver = "rcd";
    cfg.budget = run.budget;
    cfg.seeds.clear();
    for (std::uint64_t s = 1; s <= 50; ++s) cfg.seeds.push_back(s);
    const auto sum = run_experiment(cfg);
    const bool this_ok = sum.mean_fit.r_squared >= 0.9 &&
                         sum.mean_fit.rho_hat < 1.0 - 1e-6 && sum.envelope.checked &&
                         sum.envelope.pass && sum.thpd_pass;
    ok = ok && this_ok;
    char buf[120];
    std::snprintf(buf, sizeof buf, " %s r2=%.4f rho=%.6f env=%s;", run.name,
                  sum.mean_fit.r_squared, sum.mean_fit.rho_hat,
                  sum.envelope.pass ? "ok" : "VIOLATED");
    detail += buf;
  }
  report(6, ok, detail + " (need r2 >= 0.9, rho < 1 - 1e-6, envelope + primal-dual clean)");
}

void criterion_7() {
  bool theta_ok = true;
  for (int m = 1; m <= 100; ++m) {
    double t = 1.0 / m;
    for (int k = 0; k < 10000; ++k) {
      const double t1 = theta_next(t);
      if (!(t1 > 0.0) || t1 > 1.0 / m) theta_ok = false;
      if (std::abs(2.0 * t1 * t1 + 2.0 * t1 * t * t - t * t) > 1e-12) theta_ok = false;
      t = t1;
    }
  }
  bool sched_ok = EpochSchedule::k0_formula(1.0, 2) == 6;
  for (long k0 : {1L, 2L, 3L, 6L, 10L}) {
    const EpochSchedule s(k0, 1.0);
    for (int pw = 1; pw <= 10; ++pw) sched_ok = sched_ok && s.check_conditions(pw);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "momentum identity (1e4 steps, m=1..100, tol 1e-12): %s; schedule conditions "
                "p<=10 and K0(1,2)=6: %s",
                theta_ok ? "ok" : "VIOLATED", sched_ok ? "ok" : "VIOLATED");
  report(7, theta_ok && sched_ok, buf);
}

void criterion_8() {
  const auto rep = complexity_estimates(1e-2, 1e-2, 2, 1e-6, 1.0);
  const double want = -476.63646784497007;
  const bool ok = std::lround(rep.crossover_eps_log10) == -477 &&
                  std::abs(rep.crossover_eps_log10 - want) <= 1e-9 * std::abs(want);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "complexity crossover at sigma=1e-2: log10(eps) = %.6f, rounds to %ld (want "
                "-477)",
                rep.crossover_eps_log10, std::lround(rep.crossover_eps_log10));
  report(8, ok, buf);
}

void criterion_9() {
  // Exact value on the orthogonal-halfspace pair probed at (1, 1).
  const auto hx = ConvexSet::halfspace(vec2(1, 0), 0.0);
  const auto hy = ConvexSet::halfspace(vec2(0, 1), 0.0);
  const Projector corner = [](const Vector& x) {
    return Vector(x.cwiseMin(Vector::Zero(x.size())));
  };
  const auto exact =
      estimate_linear_regularity({hx, hy}, corner, std::vector<Vector>{vec2(1, 1)});
  const bool exact_ok = std::abs(exact.mu_hat - 0.5) <= 1e-9;

  // Never above one on sampled configurations.
  bool bound_ok = true;
  for (const char* name : {"ball_halfspace", "balls_m2_n2", "soc_box"}) {
    const auto inst = builtin_instance(name);
    const auto proj = reference_projector(inst.problem.sets());
    const auto est =
        estimate_linear_regularity(inst.problem.sets(), proj, 40, 2.5, RngSpec{99});
    bound_ok = bound_ok && est.mu_hat <= 1.0 + 1e-9;
  }

  // The nearly tangent pair is measurably ill-conditioned.
  const auto tangent = builtin_instance("tangent_balls");
  const auto tproj = reference_projector(tangent.problem.sets());
  const auto test =
      estimate_linear_regularity(tangent.problem.sets(), tproj, 200, 2.0, RngSpec{7});
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "regularity estimator: corner probe mu=%.12f (want 0.5 +- 1e-9); mu <= 1 on "
                "samples: %s; tangent pair mu=%.4f (< 0.1)",
                exact.mu_hat, bound_ok ? "ok" : "VIOLATED", test.mu_hat);
  report(9, exact_ok && bound_ok && test.mu_hat < 0.1, buf);
}

void criterion_10() {
  const auto inst = builtin_instance("single_ball");
  const auto& p = inst.problem;
  const Vector target = p.set(0).project(p.v());  // (1, 0)
  double worst = 0.0;

  SolveOptions so;
  so.budget = 1;
  so.record_trace = false;
  worst = std::max(worst,
                   (primal_from_dual(p, rcd_solve(p, DualState(p), so, RngSpec{1}).y) - target)
                       .norm());
  worst = std::max(
      worst,
      (primal_from_dual(p, racd_solve(p, DualState(p), 1, so, RngSpec{1}).y) - target).norm());
  RestartOptions ro;
  ro.base = so;
  ro.epochs = 1;
  worst = std::max(
      worst, (primal_from_dual(
                  p, restarted_racd(p, DualState(p), EpochSchedule(1, 1.0), ro, RngSpec{1}).y) -
              target)
                 .norm());
  TraceRefs refs;
  refs.record = false;
  worst = std::max(worst, (dykstra_cyclic(p.v(), p.sets(), 1, refs).x - target).norm());
  RandomDykstraOptions dopts;
  dopts.budget = 1;
  worst = std::max(
      worst, (dykstra_random(p.v(), p.sets(), dopts, RngSpec{1}, refs).x - target).norm());
  worst = std::max(worst,
                   (dykstra_accel_random(p.v(), p.sets(), 1, RngSpec{1}, refs).x - target).norm());
  worst = std::max(worst, (dykstra_accel_restarted(p.v(), p.sets(), EpochSchedule(1, 1.0), 1,
                                                   RngSpec{1}, refs)
                               .x -
                           target)
                              .norm());
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "single-set reduction: all 7 solvers hit the projection in one iteration, max "
                "error %.2e (tol 1e-12)",
                worst);
  report(10, worst <= 1e-12, buf);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
