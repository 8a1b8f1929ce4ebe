#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "dualcd/sets.hpp"

namespace dualcd {

enum class ObjectiveKind { HalfSqDist, Quadratic };

// Smooth strongly convex objective g together with its conjugate oracle.
// The solvers only ever touch g through value/grad/conj_value/conj_grad and
// the strong-convexity constant sigma(); conj_grad is 1/sigma()-Lipschitz.
class Objective {
 public:
  // g(x) = 0.5 * ||x - v||^2 (sigma = L = 1); conj_grad(w) = v + w.
  static Objective half_sq_dist(Vector v);
  // g(x) = 0.5 * x'Qx + q'x + c with Q symmetric positive definite.
  // Q is factored once here; conj_grad solves against the cached factorization.
  static Objective quadratic(Matrix Q, Vector q, double c);

  ObjectiveKind kind() const { return kind_; }
  int dim() const { return n_; }
  double sigma() const { return sigma_; }      // strong convexity constant
  double lipschitz() const { return lip_; }    // gradient Lipschitz constant

  double value(const Vector& x) const;
  Vector grad(const Vector& x) const;
  double conj_value(const Vector& w) const;
  Vector conj_grad(const Vector& w) const;

  // Anchor point for best-approximation objectives.
  const Vector& anchor() const;
  const Matrix& Q() const { return Q_; }
  const Vector& q() const { return q_; }
  double constant() const { return c_; }

 private:
  Objective() = default;

  ObjectiveKind kind_ = ObjectiveKind::HalfSqDist;
  int n_ = 0;
  double sigma_ = 1.0;
  double lip_ = 1.0;
  Vector v_;  // half_sq_dist anchor
  Matrix Q_;
  Vector q_;
  double c_ = 0.0;
  Eigen::LLT<Matrix> llt_;
};

}  // namespace dualcd
