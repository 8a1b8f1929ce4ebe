#pragma once

#include <optional>
#include <vector>

#include "dualcd/dual_core.hpp"
#include "dualcd/rng.hpp"
#include "dualcd/trace.hpp"

namespace dualcd {

// theta' solving 2 theta'^2 = theta^2 (1 - 2 theta'), the positive root
// (sqrt(theta^4 + 2 theta^2) - theta^2) / 2. Strictly decreasing.
double theta_next(double theta);

enum class StopReason { Budget, GapTolerance, Stagnation, EpochsDone };

struct SolveOptions {
  long budget = 10000;
  double tol = 0.0;                 // stop when d - d_ref <= tol (needs d_ref)
  std::optional<double> d_ref;      // reference dual optimum
  std::optional<Vector> x_ref;      // reference primal optimum (trace column)
  bool record_trace = true;
  bool keep_primal = false;         // retain x^k history in the result
  double stagnation_rel = 1e-15;    // relative decrease over a 10*m window
  std::string instance_id;
};

struct SolveResult {
  DualState y;
  Trace trace;
  StopReason stop = StopReason::Budget;
  long iterations = 0;
  long projections = 0;
  double final_d = 0.0;
  std::vector<Vector> primal_history;
};

// Random coordinate descent on the dual: draw a block uniformly, apply one
// exact coordinate prox step (step = objective sigma). Dual value decreases
// deterministically at every iteration.
SolveResult rcd_solve(const ProblemInstance& p, DualState y0, const SolveOptions& opts,
                      RngSpec rng);

// Accelerated variant; runs exactly K iterations (no stopping rule).
SolveResult racd_solve(const ProblemInstance& p, const DualState& y0, long K,
                       const SolveOptions& opts, RngSpec rng);
SolveResult racd_solve(const ProblemInstance& p, const DualState& y0, long K,
                       const SolveOptions& opts, SplitMix64& gen, int epoch_tag,
                       long k_offset, long proj_offset, Trace* append_to);

// Epoch lengths for the restarted scheme: K_r = K0 * 2^{nu2(r+1)} (ruler
// sequence), which realizes both restart-schedule conditions exactly.
class EpochSchedule {
 public:
  EpochSchedule(long k0, double sigma_bar);
  static EpochSchedule from_sigma_bar(double sigma_bar, int m);
  // ceil((2 e / theta0) (sqrt((1 + s) / s) - 1) + 1) with theta0 = 1/m.
  static long k0_formula(double s, int m);

  long k0() const { return k0_; }
  double sigma_bar() const { return sigma_bar_; }
  long epoch_length(long r) const;
  // Lengths for r = 0 .. 2^p - 2.
  std::vector<long> prefix(int p) const;
  // Verifies for all j in [0, p-1]: K_{2^j - 1} = 2^j K0 and the number of
  // epochs of length 2^j K0 among the first 2^p - 1 equals 2^{p-1-j}.
  bool check_conditions(int p) const;

  // Diagnostics for a known or estimated sigma.
  long k_star_for(double sigma, int m) const;
  long beta_for(double sigma, int m) const;

 private:
  long k0_;
  double sigma_bar_;
};

// Restarted accelerated solver: epochs of racd_solve with lengths from the
// schedule; an epoch endpoint is kept only if its (strictly re-evaluated)
// dual value does not exceed the incumbent's; +inf support means rejection.
struct RestartOptions {
  SolveOptions base;
  int epochs = 15;               // number of epochs to run
  long projection_cap = -1;      // stop after this many projections (< 0: off)
};
SolveResult restarted_racd(const ProblemInstance& p, DualState y0, const EpochSchedule& sched,
                           const RestartOptions& opts, RngSpec rng);

// ---- Best-approximation (Dykstra) specializations ----------------------

struct ProjectionResult {
  Vector x;
  std::vector<Vector> y;  // dual correction blocks
  Trace trace;
  long projections = 0;
  StopReason stop = StopReason::Budget;
  std::vector<Vector> primal_history;
};

// Classic cyclic Dykstra: sweeps full passes, sets visited in order.
ProjectionResult dykstra_cyclic(const Vector& v, const std::vector<ConvexSet>& sets, long sweeps,
                                const TraceRefs& refs = {});

// Random Dykstra; identical arithmetic to rcd_solve on the best-approximation
// dual under x^k = v - sum_j y_j^k, so same-seed runs coincide.
struct RandomDykstraOptions {
  long budget = 10000;
  double tol = 0.0;
  double stagnation_rel = 1e-15;
};
ProjectionResult dykstra_random(const Vector& v, const std::vector<ConvexSet>& sets,
                                const RandomDykstraOptions& opts, RngSpec rng,
                                const TraceRefs& refs = {},
                                const std::vector<Vector>* y0 = nullptr);

struct AccelProjectionResult {
  Vector x;
  std::vector<Vector> z;
  std::vector<Vector> y;  // dual iterate reconstructed alongside the recursion
  Trace trace;
  long projections = 0;
  double final_d = 0.0;
  std::vector<Vector> primal_history;
};

// Random accelerated Dykstra. The update path touches only the ambient-space
// sequences x, x_hat, x_tilde and one z block per iteration; the dual shadow
// y (needed for dual-value traces and restart acceptance) is bookkeeping on
// the side and never feeds back into the recursion.
AccelProjectionResult dykstra_accel_random(const Vector& v, const std::vector<ConvexSet>& sets,
                                           long K, RngSpec rng, const TraceRefs& refs = {},
                                           const std::vector<Vector>* z0 = nullptr);

AccelProjectionResult dykstra_accel_restarted(const Vector& v, const std::vector<ConvexSet>& sets,
                                              const EpochSchedule& sched, int epochs, RngSpec rng,
                                              const TraceRefs& refs = {},
                                              long projection_cap = -1, double tol = 0.0);

}  // namespace dualcd
