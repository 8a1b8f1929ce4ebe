#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dualcd/errors.hpp"
#include "dualcd/objective.hpp"
#include "dualcd/rng.hpp"

using namespace dualcd;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vector random_vec(SplitMix64& gen, int n, double scale) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = scale * gen.normal();
  return x;
}

Objective dense_quadratic() {
  Matrix Q(2, 2);
  Q << 2, 1, 1, 2;  // eigenvalues 1 and 3
  return Objective::quadratic(Q, vec({0.5, -1}), 0.25);
}

}  // namespace

TEST_CASE("half squared distance oracle") {
  const auto g = Objective::half_sq_dist(vec({2, 0}));
  CHECK(g.sigma() == 1.0);
  CHECK(g.lipschitz() == 1.0);
  CHECK(g.value(vec({2, 0})) == 0.0);
  CHECK(g.value(vec({3, 1})) == doctest::Approx(1.0));
  CHECK((g.grad(vec({3, 1})) - vec({1, 1})).norm() == 0.0);
  // g*(w) = <w, v> + 0.5 ||w||^2.
  CHECK(g.conj_value(vec({0, 0})) == 0.0);
  CHECK(g.conj_value(vec({-1, 0})) == doctest::Approx(-1.5));
  CHECK((g.conj_grad(vec({-1, 0})) - vec({1, 0})).norm() == 0.0);
  CHECK((g.anchor() - vec({2, 0})).norm() == 0.0);
}

TEST_CASE("quadratic oracle with dense curvature") {
  const auto g = dense_quadratic();
  CHECK(g.sigma() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.lipschitz() == doctest::Approx(3.0).epsilon(1e-12));
  const Vector x = vec({1, 2});
  // grad = Q x + q.
  CHECK((g.grad(x) - vec({4.5, 4.0})).norm() < 1e-14);
  // conj_grad inverts grad.
  CHECK((g.conj_grad(g.grad(x)) - x).norm() < 1e-12);

  Matrix D(2, 2);
  D << 2, 0, 0, 1;
  const auto gd = Objective::quadratic(D, vec({0, 0}), 0.0);
  CHECK(gd.sigma() == doctest::Approx(1.0));
  CHECK(gd.lipschitz() == doctest::Approx(2.0));
  CHECK((gd.grad(vec({1, 1})) - vec({2, 1})).norm() == 0.0);
  CHECK((gd.conj_grad(vec({2, 1})) - vec({1, 1})).norm() < 1e-14);
}

TEST_CASE("conjugate pair identities hold at sampled points") {
  SplitMix64 gen(5);
  const Objective objs[2] = {Objective::half_sq_dist(vec({2, -1})), dense_quadratic()};
  for (const auto& g : objs) {
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_vec(gen, g.dim(), 3.0);
      const Vector w = g.grad(x);
      // Gradient inversion and Fenchel-Young equality at w = grad(x).
      CHECK((g.conj_grad(w) - x).norm() <= 1e-10 * (1.0 + x.norm()));
      const double fy = g.value(x) + g.conj_value(w) - w.dot(x);
      CHECK(std::abs(fy) <= 1e-9 * (1.0 + std::abs(g.value(x))));
      // Fenchel-Young inequality at unrelated w.
      const Vector w2 = random_vec(gen, g.dim(), 3.0);
      CHECK(g.value(x) + g.conj_value(w2) >= w2.dot(x) - 1e-9);
    }
  }
}

TEST_CASE("strong convexity and conjugate smoothness constants") {
  SplitMix64 gen(6);
  const Objective objs[2] = {Objective::half_sq_dist(vec({0, 0, 1})), dense_quadratic()};
  for (const auto& g : objs) {
    const double s = g.sigma();
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_vec(gen, g.dim(), 3.0);
      const Vector y = random_vec(gen, g.dim(), 3.0);
      // g(y) >= g(x) + <grad, y - x> + (sigma/2) ||y - x||^2.
      const double lower =
          g.value(x) + g.grad(x).dot(y - x) + 0.5 * s * (y - x).squaredNorm();
      CHECK(g.value(y) >= lower - 1e-9 * (1.0 + std::abs(g.value(y))));
      // conj_grad is (1/sigma)-Lipschitz.
      const Vector w1 = random_vec(gen, g.dim(), 3.0);
      const Vector w2 = random_vec(gen, g.dim(), 3.0);
      const double lhs = (g.conj_grad(w1) - g.conj_grad(w2)).norm();
      CHECK(lhs <= (1.0 / s) * (w1 - w2).norm() * (1.0 + 1e-10) + 1e-12);
      // Matching quadratic upper bound on g*.
      const double upper = g.conj_value(w1) + g.conj_grad(w1).dot(w2 - w1) +
                           0.5 / s * (w2 - w1).squaredNorm();
      CHECK(g.conj_value(w2) <= upper + 1e-9 * (1.0 + std::abs(upper)));
    }
  }
}

TEST_CASE("quadratic construction rejects bad curvature") {
  Matrix Qn(2, 2);
  Qn << 1, 0, 0, -1;  // indefinite
  CHECK_THROWS_AS(Objective::quadratic(Qn, vec({0, 0}), 0.0), InvalidArgument);

  Matrix Qa(2, 2);
  Qa << 1, 2, 0, 1;  // asymmetric
  CHECK_THROWS_AS(Objective::quadratic(Qa, vec({0, 0}), 0.0), InvalidArgument);

  Matrix Q(2, 2);
  Q << 1, 0, 0, 1;
  CHECK_THROWS_AS(Objective::quadratic(Q, vec({0, 0, 0}), 0.0), InvalidArgument);
}
