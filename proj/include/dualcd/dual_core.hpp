#pragma once

#include <optional>
#include <vector>

#include "dualcd/objective.hpp"
#include "dualcd/sets.hpp"

namespace dualcd {

// Certified optimum attached to an instance: x_star solves the primal,
// y_star the dual, d_star is the shared optimal dual value.
struct Certificate {
  Vector x_star;
  std::vector<Vector> y_star;
  double d_star = 0.0;
  std::optional<Vector> slater_witness;
};

// Minimize g over the intersection of m simple sets. The solvers work on the
// dual d(y) = g*(-sum_i y_i) + sum_i supp_{X_i}(y_i).
class ProblemInstance {
 public:
  ProblemInstance(Objective objective, std::vector<ConvexSet> sets,
                  std::optional<Certificate> certificate = std::nullopt);

  const Objective& objective() const { return objective_; }
  const std::vector<ConvexSet>& sets() const { return sets_; }
  const ConvexSet& set(int i) const { return sets_[static_cast<size_t>(i)]; }
  int n() const { return n_; }
  int m() const { return static_cast<int>(sets_.size()); }
  const std::optional<Certificate>& certificate() const { return certificate_; }

  bool is_best_approximation() const {
    return objective_.kind() == ObjectiveKind::HalfSqDist;
  }
  // Anchor of the best-approximation objective.
  const Vector& v() const { return objective_.anchor(); }

  std::optional<double> d_star() const {
    if (certificate_) return certificate_->d_star;
    return std::nullopt;
  }

 private:
  Objective objective_;
  std::vector<ConvexSet> sets_;
  int n_;
  std::optional<Certificate> certificate_;
};

// One dual point: m blocks y_i in R^n, the running sum over blocks, and the
// cached support values supp_{X_i}(y_i). Mutators keep sum and caches in step
// with the blocks so dual evaluations stay O(n + m).
class DualState {
 public:
  // Zero blocks (supports all 0; d(0) = -g(conj_grad(0)) for smooth g).
  explicit DualState(const ProblemInstance& p);
  DualState(const ProblemInstance& p, std::vector<Vector> blocks);

  int m() const { return static_cast<int>(blocks_.size()); }
  int n() const { return static_cast<int>(sum_.size()); }
  const Vector& block(int i) const { return blocks_[static_cast<size_t>(i)]; }
  const std::vector<Vector>& blocks() const { return blocks_; }
  const Vector& sum() const { return sum_; }
  double support_term(int i) const { return supp_[static_cast<size_t>(i)]; }
  // +inf if any cached term is +inf.
  double support_sum() const;

  // Replace block i with a prox output; the support cache is set from the
  // projection witness p_i = project(...) via supp(z - P(z)) = <z - P(z), P(z)>.
  void set_block_from_prox(int i, const Vector& new_block, const Vector& witness);
  // Replace block i with a point known to lie in the support's domain
  // (convex combinations of in-domain blocks); cache via support_on_domain.
  void set_block_in_domain(const ProblemInstance& p, int i, const Vector& new_block);
  // this <- wa * a + wb * b blockwise, support caches re-derived on-domain.
  void assign_combination(const ProblemInstance& p, double wa, const DualState& a, double wb,
                          const DualState& b);
  // Strict re-evaluation of every support term (ray/span membership enforced);
  // returns false if any term is +inf.
  bool revalidate_supports(const ProblemInstance& p);
  // Consistency audit: recomputes the running sum from the blocks and checks
  // it against the cache within 1e-9 * (1 + sum ||y_i||).
  bool verify_consistency() const;

 private:
  std::vector<Vector> blocks_;
  Vector sum_;
  std::vector<double> supp_;
};

// d(y) = g*(-sum y_i) + sum supp_i(y_i); +inf propagates from the caches.
double dual_value(const ProblemInstance& p, const DualState& y);

// Gradient of the smooth part w.r.t. any block: -conj_grad(-sum y_j).
// Identical for every block, so it is computed once per iteration.
Vector block_grad(const ProblemInstance& p, const DualState& y);

// Primal point x(y) = conj_grad(-sum y_j); at dual optima this is the primal
// solution.
Vector primal_from_dual(const ProblemInstance& p, const DualState& y);

// In-place exact coordinate minimization of the usual quadratic surrogate:
// y_i <- prox_{step * supp_i}(y_i - step * block_grad). step = sigma() is the
// inverse of the blockwise Lipschitz constant of the smooth part.
// Returns the projection witness (the point of X_i the prox projected onto).
Vector coordinate_step(const ProblemInstance& p, DualState& y, int i, double step);

// (0.5 * ||x(y) - x_star||^2, d(y) - d_star): for best-approximation
// instances the first is bounded by the second at every dual point.
std::pair<double, double> primal_dual_gap_bound(const ProblemInstance& p, const DualState& y,
                                                double d_star);

}  // namespace dualcd
