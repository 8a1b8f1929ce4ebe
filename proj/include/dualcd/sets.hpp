#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>

namespace dualcd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class SetKind { Hyperplane, Halfspace, Ball, Box, SecondOrderCone, AffineSubspace };

std::string set_kind_name(SetKind k);

// Support function evaluation. value is +inf when y lies outside the support's
// domain; witness (when present) is a maximizer: a point of the set with
// <y, witness> == value.
struct SupportValue {
  double value = 0.0;
  std::optional<Vector> witness;

  bool finite() const { return std::isfinite(value); }
  static SupportValue infinite();
};

// Relative tolerance for ray/span membership tests inside support evaluation,
// scaled by ||y||.
inline constexpr double kSpanTol = 1e-9;

// Oracle for one simple closed convex set: exact projection, distance,
// support function, prox of the (scaled) support, and a normal-cone direction.
// Immutable after construction; construction validates the geometry.
class ConvexSet {
 public:
  static ConvexSet hyperplane(Vector a, double b);
  static ConvexSet halfspace(Vector a, double b);
  static ConvexSet ball(Vector c, double r);
  static ConvexSet box(Vector l, Vector u);
  static ConvexSet second_order_cone(int n);
  // Set {x : A x = b} with orthonormal rows in A (validated).
  static ConvexSet affine_subspace(Matrix A, Vector b);

  SetKind kind() const;
  int dim() const;
  bool polyhedral() const;

  Vector project(const Vector& x) const;
  double distance(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-10) const;

  SupportValue support(const Vector& y) const;
  // Support value assuming y already lies in the support's domain; skips the
  // membership test so convex combinations of in-domain points evaluate
  // without spurious +inf from floating-point drift.
  double support_on_domain(const Vector& y) const;

  // prox_{alpha * supp}(y) = y - alpha * project(y / alpha), alpha > 0.
  Vector prox_support(double alpha, const Vector& y) const;

  // An element of the normal cone at x (x must belong to the set) with norm
  // `scale`; returns the zero vector at interior points.
  Vector normal_cone_dir(const Vector& x, double scale) const;

  // Signed margin used for constraint-qualification audits: distance to the
  // boundary for interior points of full-dimensional sets, minus the
  // infeasibility for points outside; equality-type sets return minus the
  // residual norm.
  double interior_margin(const Vector& x) const;

  struct Hyperplane {
    Vector a;
    double b;
    double a_sqnorm;
  };
  struct Halfspace {
    Vector a;
    double b;
    double a_sqnorm;
  };
  struct Ball {
    Vector c;
    double r;
  };
  struct Box {
    Vector l, u;
  };
  struct Soc {
    int n;  // ambient dimension; first n-1 coordinates are the vector part, last is the scalar part
  };
  struct Affine {
    Matrix A;  // orthonormal rows
    Vector b;
  };

  using Data = std::variant<Hyperplane, Halfspace, Ball, Box, Soc, Affine>;
  const Data& data() const { return data_; }

 private:
  explicit ConvexSet(Data d) : data_(std::move(d)) {}
  Data data_;
};

}  // namespace dualcd
