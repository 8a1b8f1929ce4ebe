#pragma once

#include <string>
#include <vector>

#include "dualcd/instances.hpp"
#include "dualcd/solvers.hpp"

namespace dualcd {

// Least-squares fit of log(gap) against k over the tail of the positive-gap
// portion of a trace. rho_hat = exp(slope) clamped to (0, 1].
struct RateFit {
  double rho_hat = 1.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  long window_begin = 0;  // first k used
  long window_end = 0;    // last k used
  long points = 0;
};
RateFit fit_rate(const std::vector<std::pair<long, double>>& gap_series, double tail_fraction,
                 double gap_floor = 0.0);
RateFit fit_rate(const Trace& trace, double tail_fraction, double gap_floor = 0.0);

// Inverts the linear rate (1 - sigma/(m(sigma+1)))^k: sigma = t/(1-t) with
// t = m(1-rho); +inf when m(1-rho) >= 1 (observed decay faster than any
// finite strong-convexity bound), 0 when rho = 1.
double sigma_from_rate(double rho, int m);

// Worst-case iteration counts and the crossover accuracy between the plain
// and restarted-accelerated schemes.
struct ComplexityReport {
  double rcd_iterations = 0.0;
  double racd_iterations = 0.0;
  bool racd_favored = false;
  // log10 of the accuracy below which the plain scheme wins.
  double crossover_eps_log10 = 0.0;
};
ComplexityReport complexity_estimates(double sigma, double sigma_bar, int m, double eps,
                                      double gap0);

// Reference optimum used for gaps: the instance certificate when present,
// otherwise a high-accuracy restarted solve run to stagnation.
struct Reference {
  double d_star = 0.0;
  std::optional<Vector> x_star;
  double y_star_sqnorm = 0.0;  // sum_i ||y_star_i||^2 of the reference dual point
  std::string source;          // "certificate" or "reference_solve"
};
Reference resolve_reference(const ProblemInstance& p);

struct ExperimentConfig {
  std::string instance;       // builtin name or path to an instance JSON
  std::string solver = "rcd"; // rcd | racd | restarted_racd | dykstra_random |
                              // dykstra_cyclic | dykstra_accel | dykstra_accel_restarted
  long budget = 5000;
  double tol = 0.0;
  std::vector<std::uint64_t> seeds = {1};
  long k0 = 0;                // 0: derive from sigma_bar
  double sigma_bar = 1.0;
  // Epoch cap for the restarted schemes; the projection budget binds first
  // under the default.
  int epochs = 1000000;
  std::string out_dir;        // empty: do not write files
  double tail_fraction = 0.5;
  void validate() const;
};

struct EnvelopeCheck {
  bool checked = false;
  bool pass = true;
  double rho_env = 1.0;
  double constant = 0.0;  // (gap0 + 0.5 ||y0 - y_star_ref||^2) * 1.1
};

struct ExperimentSummary {
  std::string solver;
  std::string instance;
  std::vector<std::uint64_t> seeds;
  std::vector<double> rho_hat;     // per seed
  double sigma_hat = 0.0;          // from the mean-gap tail fit
  bool thpd_pass = true;
  EnvelopeCheck envelope;
  RateFit mean_fit;
  std::string d_star_source;
  double d_star = 0.0;
  std::vector<double> mean_gap;    // per k, meaningful up to the common length
  std::vector<std::string> trace_files;
};

// Runs the configured solver for every seed, writes one trace CSV per seed
// plus summary.json when out_dir is set, and evaluates the per-iterate
// primal-dual check and (for rcd) the rate envelope on the mean gap curve.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

}  // namespace dualcd
