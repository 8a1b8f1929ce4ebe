#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dualcd/dual_core.hpp"
#include "dualcd/rng.hpp"

namespace dualcd {

// A named problem with (usually) a constructed optimum certificate attached.
struct CertifiedInstance {
  std::string name;
  ProblemInstance problem;
  bool diagnostic_only = false;  // geometry shipped for estimator diagnostics only
};

// Builds a best-approximation instance with a known optimum: picks
// y_star_i = normal_cone_dir(X_i, x_star, scales[i]) and sets
// v = x_star + sum_i y_star_i, so x_star is the projection of v onto the
// intersection and d_star = -0.5 ||v - x_star||^2 exactly.
// scales[i] must be 0 when x_star is interior to X_i.
CertifiedInstance kkt_instance(std::string name, const Vector& x_star,
                               std::vector<ConvexSet> sets, const std::vector<double>& scales,
                               std::optional<Vector> slater_witness = std::nullopt);

// Per-set signed margins of x_bar plus the constraint-qualification verdict:
// non-polyhedral sets need margin > delta, polyhedral sets need margin >= 0.
struct SlaterReport {
  std::vector<double> margins;
  bool ok = false;
};
SlaterReport slater_check(const std::vector<ConvexSet>& sets, const Vector& x_bar,
                          double delta = 1e-6);

using Projector = std::function<Vector(const Vector&)>;

// Sampled lower bound estimate of the linear-regularity constant:
// mu_hat = min over probes of mean_i dist^2(x, X_i) / dist^2(x, X), skipping
// probes with dist(x, X) <= 1e-8. Intersection distances come from the
// supplied reference projector.
struct RegularityEstimate {
  double mu_hat = 0.0;
  long used = 0;
  long skipped = 0;
};
RegularityEstimate estimate_linear_regularity(const std::vector<ConvexSet>& sets,
                                              const Projector& intersection_projector,
                                              const std::vector<Vector>& probes);
// Probes drawn uniformly from the origin-centered ball of the given radius.
RegularityEstimate estimate_linear_regularity(const std::vector<ConvexSet>& sets,
                                              const Projector& intersection_projector,
                                              long samples, double radius, RngSpec rng);

// High-accuracy projector onto the intersection: restarted accelerated
// Dykstra run to stagnation. Used as the estimator's reference.
Projector reference_projector(const std::vector<ConvexSet>& sets);

// Built-in suites: (a) single ball, (b) ball + halfspace, (c) ball bundles of
// increasing size, (d) two nearly tangent balls (ill-conditioned), (e) cone +
// box, (f) epigraph/hypograph covering pair (diagnostic only, no certificate).
std::vector<CertifiedInstance> builtin_suites();
CertifiedInstance builtin_instance(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace dualcd
