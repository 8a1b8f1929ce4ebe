#include "dualcd/objective.hpp"

#include <Eigen/Eigenvalues>

#include "dualcd/errors.hpp"

namespace dualcd {

Objective Objective::half_sq_dist(Vector v) {
  if (v.size() == 0) throw InvalidArgument("half_sq_dist: empty anchor");
  Objective o;
  o.kind_ = ObjectiveKind::HalfSqDist;
  o.n_ = static_cast<int>(v.size());
  o.v_ = std::move(v);
  o.sigma_ = 1.0;
  o.lip_ = 1.0;
  return o;
}

Objective Objective::quadratic(Matrix Q, Vector q, double c) {
  const auto n = Q.rows();
  if (n == 0 || Q.cols() != n) throw InvalidArgument("quadratic: Q must be square and nonempty");
  if (q.size() != n) throw InvalidArgument("quadratic: q dimension mismatch");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + Q.cwiseAbs().maxCoeff()))
    throw InvalidArgument("quadratic: Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) throw InvalidArgument("quadratic: Q must be positive definite");
  Objective o;
  o.kind_ = ObjectiveKind::Quadratic;
  o.n_ = static_cast<int>(n);
  o.Q_ = std::move(Q);
  o.q_ = std::move(q);
  o.c_ = c;
  o.sigma_ = lmin;
  o.lip_ = lmax;
  o.llt_.compute(o.Q_);
  if (o.llt_.info() != Eigen::Success) throw InvalidArgument("quadratic: factorization failed");
  return o;
}

double Objective::value(const Vector& x) const {
  if (x.size() != n_) throw InvalidArgument("objective value: dimension mismatch");
  if (kind_ == ObjectiveKind::HalfSqDist) return 0.5 * (x - v_).squaredNorm();
  return 0.5 * x.dot(Q_ * x) + q_.dot(x) + c_;
}

Vector Objective::grad(const Vector& x) const {
  if (x.size() != n_) throw InvalidArgument("objective grad: dimension mismatch");
  if (kind_ == ObjectiveKind::HalfSqDist) return x - v_;
  return Q_ * x + q_;
}

double Objective::conj_value(const Vector& w) const {
  if (w.size() != n_) throw InvalidArgument("conj_value: dimension mismatch");
  if (kind_ == ObjectiveKind::HalfSqDist) return 0.5 * w.squaredNorm() + w.dot(v_);
  const Vector r = w - q_;
  return 0.5 * r.dot(llt_.solve(r)) - c_;
}

Vector Objective::conj_grad(const Vector& w) const {
  if (w.size() != n_) throw InvalidArgument("conj_grad: dimension mismatch");
  if (kind_ == ObjectiveKind::HalfSqDist) return v_ + w;
  return llt_.solve(w - q_);
}

const Vector& Objective::anchor() const {
  if (kind_ != ObjectiveKind::HalfSqDist)
    throw InvalidArgument("anchor: objective is not a best-approximation distance");
  return v_;
}

}  // namespace dualcd
