#include "dualcd/sets.hpp"

#include <cmath>
#include <limits>

#include "dualcd/errors.hpp"

namespace dualcd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Euclidean distance from an interior SOC point to the cone boundary.
// For ||u|| < t the nearest boundary point lies along the bisector, at
// distance (t - ||u||) / sqrt(2).
constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

std::string set_kind_name(SetKind k) {
  switch (k) {
    case SetKind::Hyperplane: return "hyperplane";
    case SetKind::Halfspace: return "halfspace";
    case SetKind::Ball: return "ball";
    case SetKind::Box: return "box";
    case SetKind::SecondOrderCone: return "second_order_cone";
    case SetKind::AffineSubspace: return "affine_subspace";
  }
  return "unknown";
}

SupportValue SupportValue::infinite() {
  SupportValue s;
  s.value = kInf;
  return s;
}

ConvexSet ConvexSet::hyperplane(Vector a, double b) {
  const double n2 = a.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidArgument("hyperplane: normal must be nonzero");
  return ConvexSet(Hyperplane{std::move(a), b, n2});
}

ConvexSet ConvexSet::halfspace(Vector a, double b) {
  const double n2 = a.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidArgument("halfspace: normal must be nonzero");
  return ConvexSet(Halfspace{std::move(a), b, n2});
}

ConvexSet ConvexSet::ball(Vector c, double r) {
  if (!(r >= 0.0)) throw InvalidArgument("ball: radius must be >= 0");
  return ConvexSet(Ball{std::move(c), r});
}

ConvexSet ConvexSet::box(Vector l, Vector u) {
  if (l.size() != u.size()) throw InvalidArgument("box: bound dimensions differ");
  if (((u - l).array() < 0.0).any()) throw InvalidArgument("box: requires l <= u componentwise");
  return ConvexSet(Box{std::move(l), std::move(u)});
}

ConvexSet ConvexSet::second_order_cone(int n) {
  if (n < 2) throw InvalidArgument("second_order_cone: dimension must be >= 2");
  return ConvexSet(Soc{n});
}

ConvexSet ConvexSet::affine_subspace(Matrix A, Vector b) {
  if (A.rows() == 0 || A.rows() > A.cols()) throw InvalidArgument("affine_subspace: need 1 <= rows <= cols");
  if (b.size() != A.rows()) throw InvalidArgument("affine_subspace: offset dimension mismatch");
  const Matrix gram = A * A.transpose();
  if ((gram - Matrix::Identity(A.rows(), A.rows())).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("affine_subspace: rows must be orthonormal");
  return ConvexSet(Affine{std::move(A), std::move(b)});
}

SetKind ConvexSet::kind() const {
  struct V {
    SetKind operator()(const Hyperplane&) const { return SetKind::Hyperplane; }
    SetKind operator()(const Halfspace&) const { return SetKind::Halfspace; }
    SetKind operator()(const Ball&) const { return SetKind::Ball; }
    SetKind operator()(const Box&) const { return SetKind::Box; }
    SetKind operator()(const Soc&) const { return SetKind::SecondOrderCone; }
    SetKind operator()(const Affine&) const { return SetKind::AffineSubspace; }
  };
  return std::visit(V{}, data_);
}

int ConvexSet::dim() const {
  struct V {
    int operator()(const Hyperplane& s) const { return static_cast<int>(s.a.size()); }
    int operator()(const Halfspace& s) const { return static_cast<int>(s.a.size()); }
    int operator()(const Ball& s) const { return static_cast<int>(s.c.size()); }
    int operator()(const Box& s) const { return static_cast<int>(s.l.size()); }
    int operator()(const Soc& s) const { return s.n; }
    int operator()(const Affine& s) const { return static_cast<int>(s.A.cols()); }
  };
  return std::visit(V{}, data_);
}

bool ConvexSet::polyhedral() const {
  const SetKind k = kind();
  return k != SetKind::Ball && k != SetKind::SecondOrderCone;
}

Vector ConvexSet::project(const Vector& x) const {
  if (x.size() != dim()) throw InvalidArgument("project: dimension mismatch");
  struct V {
    const Vector& x;
    Vector operator()(const ConvexSet::Hyperplane& s) const {
      return x - ((s.a.dot(x) - s.b) / s.a_sqnorm) * s.a;
    }
    Vector operator()(const ConvexSet::Halfspace& s) const {
      const double viol = s.a.dot(x) - s.b;
      if (viol <= 0.0) return x;
      return x - (viol / s.a_sqnorm) * s.a;
    }
    Vector operator()(const ConvexSet::Ball& s) const {
      const Vector d = x - s.c;
      const double nd = d.norm();
      if (nd <= s.r) return x;
      return s.c + (s.r / nd) * d;
    }
    Vector operator()(const ConvexSet::Box& s) const {
      return x.cwiseMax(s.l).cwiseMin(s.u);
    }
    Vector operator()(const ConvexSet::Soc& s) const {
      const int p = s.n - 1;
      const double t = x[p];
      const double nu = x.head(p).norm();
      if (nu <= t) return x;
      if (nu <= -t) return Vector::Zero(s.n);
      const double alpha = 0.5 * (nu + t);
      Vector out(s.n);
      out.head(p) = (alpha / nu) * x.head(p);
      out[p] = alpha;
      return out;
    }
    Vector operator()(const ConvexSet::Affine& s) const {
      return x - s.A.transpose() * (s.A * x - s.b);
    }
  };
  return std::visit(V{x}, data_);
}

double ConvexSet::distance(const Vector& x) const {
  return (x - project(x)).norm();
}

bool ConvexSet::contains(const Vector& x, double tol) const {
  return distance(x) <= tol;
}

SupportValue ConvexSet::support(const Vector& y) const {
  if (y.size() != dim()) throw InvalidArgument("support: dimension mismatch");
  const double ny = y.norm();
  struct V {
    const Vector& y;
    double ny;
    SupportValue operator()(const ConvexSet::Hyperplane& s) const {
      const double lam = s.a.dot(y) / s.a_sqnorm;
      if ((y - lam * s.a).norm() > kSpanTol * ny) return SupportValue::infinite();
      SupportValue out;
      out.value = lam * s.b;
      out.witness = (s.b / s.a_sqnorm) * s.a;
      return out;
    }
    SupportValue operator()(const ConvexSet::Halfspace& s) const {
      const double lam = s.a.dot(y) / s.a_sqnorm;
      if (lam * std::sqrt(s.a_sqnorm) < -kSpanTol * ny) return SupportValue::infinite();
      if ((y - lam * s.a).norm() > kSpanTol * ny) return SupportValue::infinite();
      SupportValue out;
      out.value = lam * s.b;
      out.witness = (s.b / s.a_sqnorm) * s.a;
      return out;
    }
    SupportValue operator()(const ConvexSet::Ball& s) const {
      SupportValue out;
      out.value = s.r * ny + y.dot(s.c);
      out.witness = (ny > 0.0) ? Vector(s.c + (s.r / ny) * y) : s.c;
      return out;
    }
    SupportValue operator()(const ConvexSet::Box& s) const {
      SupportValue out;
      Vector w(y.size());
      double v = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] > 0.0) {
          w[i] = s.u[i];
        } else if (y[i] < 0.0) {
          w[i] = s.l[i];
        } else {
          w[i] = std::min(std::max(0.0, s.l[i]), s.u[i]);
        }
        v += y[i] * w[i];
      }
      out.value = v;
      out.witness = std::move(w);
      return out;
    }
    SupportValue operator()(const ConvexSet::Soc& s) const {
      const int p = s.n - 1;
      // Domain is the polar cone {(u,t): ||u|| <= -t}; support is 0 there.
      if (y.head(p).norm() > -y[p] + kSpanTol * ny) return SupportValue::infinite();
      SupportValue out;
      out.value = 0.0;
      out.witness = Vector::Zero(s.n);
      return out;
    }
    SupportValue operator()(const ConvexSet::Affine& s) const {
      const Vector lam = s.A * y;
      if ((y - s.A.transpose() * lam).norm() > kSpanTol * ny) return SupportValue::infinite();
      SupportValue out;
      out.value = lam.dot(s.b);
      out.witness = s.A.transpose() * s.b;
      return out;
    }
  };
  return std::visit(V{y, ny}, data_);
}

double ConvexSet::support_on_domain(const Vector& y) const {
  if (y.size() != dim()) throw InvalidArgument("support_on_domain: dimension mismatch");
  struct V {
    const Vector& y;
    double operator()(const ConvexSet::Hyperplane& s) const {
      return (s.a.dot(y) / s.a_sqnorm) * s.b;
    }
    double operator()(const ConvexSet::Halfspace& s) const {
      return (s.a.dot(y) / s.a_sqnorm) * s.b;
    }
    double operator()(const ConvexSet::Ball& s) const { return s.r * y.norm() + y.dot(s.c); }
    double operator()(const ConvexSet::Box& s) const {
      double v = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) v += y[i] > 0.0 ? s.u[i] * y[i] : s.l[i] * y[i];
      return v;
    }
    double operator()(const ConvexSet::Soc&) const { return 0.0; }
    double operator()(const ConvexSet::Affine& s) const { return (s.A * y).dot(s.b); }
  };
  return std::visit(V{y}, data_);
}

Vector ConvexSet::prox_support(double alpha, const Vector& y) const {
  if (!(alpha > 0.0)) throw InvalidArgument("prox_support: alpha must be > 0");
  return y - alpha * project(y / alpha);
}

Vector ConvexSet::normal_cone_dir(const Vector& x, double scale) const {
  if (x.size() != dim()) throw InvalidArgument("normal_cone_dir: dimension mismatch");
  if (!(scale >= 0.0)) throw InvalidArgument("normal_cone_dir: scale must be >= 0");
  if (distance(x) > 1e-8 * (1.0 + x.norm()))
    throw InvalidArgument("normal_cone_dir: point not in the set");
  const double atol = 1e-9 * (1.0 + x.norm());
  struct V {
    const Vector& x;
    double scale, atol;
    Vector operator()(const ConvexSet::Hyperplane& s) const {
      return (scale / std::sqrt(s.a_sqnorm)) * s.a;
    }
    Vector operator()(const ConvexSet::Halfspace& s) const {
      const double slack = s.b - s.a.dot(x);
      if (slack > atol * std::sqrt(s.a_sqnorm)) return Vector::Zero(x.size());
      return (scale / std::sqrt(s.a_sqnorm)) * s.a;
    }
    Vector operator()(const ConvexSet::Ball& s) const {
      const Vector d = x - s.c;
      const double nd = d.norm();
      if (s.r == 0.0 || nd < 1e-14) {
        // Singleton: every direction is normal; fix a canonical one.
        Vector e = Vector::Zero(x.size());
        if (s.r == 0.0) e[0] = scale;
        return e;
      }
      if (nd < s.r - atol) return Vector::Zero(x.size());
      return (scale / nd) * d;
    }
    Vector operator()(const ConvexSet::Box& s) const {
      Vector w = Vector::Zero(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const bool at_u = s.u[i] - x[i] <= atol;
        const bool at_l = x[i] - s.l[i] <= atol;
        if (at_u) {
          w[i] = 1.0;
        } else if (at_l) {
          w[i] = -1.0;
        }
      }
      const double nw = w.norm();
      if (nw == 0.0) return w;
      return (scale / nw) * w;
    }
    Vector operator()(const ConvexSet::Soc& s) const {
      const int p = s.n - 1;
      const double t = x[p];
      const double nu = x.head(p).norm();
      Vector w = Vector::Zero(s.n);
      if (nu <= atol && t <= atol) {
        w[p] = -scale;  // apex: pick the polar axis
        return w;
      }
      if (t - nu > atol) return w;  // interior
      w.head(p) = x.head(p) / nu;
      w[p] = -1.0;
      return (scale * kInvSqrt2) * w;
    }
    Vector operator()(const ConvexSet::Affine& s) const {
      Vector ones = Vector::Ones(s.A.rows());
      Vector w = s.A.transpose() * ones;
      return (scale / w.norm()) * w;
    }
  };
  return std::visit(V{x, scale, atol}, data_);
}

double ConvexSet::interior_margin(const Vector& x) const {
  if (x.size() != dim()) throw InvalidArgument("interior_margin: dimension mismatch");
  struct V {
    const Vector& x;
    double operator()(const ConvexSet::Hyperplane& s) const {
      return -std::abs(s.a.dot(x) - s.b) / std::sqrt(s.a_sqnorm);
    }
    double operator()(const ConvexSet::Halfspace& s) const {
      return (s.b - s.a.dot(x)) / std::sqrt(s.a_sqnorm);
    }
    double operator()(const ConvexSet::Ball& s) const { return s.r - (x - s.c).norm(); }
    double operator()(const ConvexSet::Box& s) const {
      double m = kInf;
      for (Eigen::Index i = 0; i < x.size(); ++i)
        m = std::min({m, x[i] - s.l[i], s.u[i] - x[i]});
      return m;
    }
    double operator()(const ConvexSet::Soc& s) const {
      const int p = s.n - 1;
      return (x[p] - x.head(p).norm()) * kInvSqrt2;
    }
    double operator()(const ConvexSet::Affine& s) const { return -(s.A * x - s.b).norm(); }
  };
  return std::visit(V{x}, data_);
}

}  // namespace dualcd
