#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dualcd/errors.hpp"
#include "dualcd/instances.hpp"
#include "dualcd/solvers.hpp"

using namespace dualcd;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("kkt construction places the anchor along the chosen normals") {
  const auto ball = ConvexSet::ball(vec({0, 0}), 1.0);
  const auto hs = ConvexSet::halfspace(vec({1, 0}), 1.0);

  const auto inst = kkt_instance("pinned", vec({1, 0}), {ball, hs}, {1.0, 2.0});
  const auto& p = inst.problem;
  REQUIRE(p.certificate().has_value());
  CHECK((p.v() - vec({4, 0})).norm() <= 1e-14);
  CHECK(p.certificate()->d_star == doctest::Approx(-4.5).epsilon(1e-14));
  CHECK((p.certificate()->y_star[0] - vec({1, 0})).norm() <= 1e-14);
  CHECK((p.certificate()->y_star[1] - vec({2, 0})).norm() <= 1e-14);

  // All scales zero at an interior point: the anchor is already feasible.
  const auto easy = kkt_instance("easy", vec({0.2, 0}), {ball, hs}, {0.0, 0.0});
  CHECK((easy.problem.v() - vec({0.2, 0})).norm() == 0.0);
  CHECK(easy.problem.certificate()->d_star == 0.0);

  // Two orthogonal halfspaces through the origin: v = (1, 1).
  const auto corner = kkt_instance(
      "corner", vec({0, 0}),
      {ConvexSet::halfspace(vec({1, 0}), 0.0), ConvexSet::halfspace(vec({0, 1}), 0.0)},
      {1.0, 1.0});
  CHECK((corner.problem.v() - vec({1, 1})).norm() <= 1e-14);
  CHECK(corner.problem.certificate()->d_star == doctest::Approx(-1.0).epsilon(1e-14));

  // Invalid requests: nonzero scale at an interior point, x_star outside.
  CHECK_THROWS_AS(kkt_instance("bad", vec({0.2, 0}), {ball}, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(kkt_instance("bad", vec({3, 0}), {ball}, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(kkt_instance("bad", vec({1, 0}), {ball}, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("every certified builtin passes the optimality audit") {
  for (const auto& inst : builtin_suites()) {
    if (inst.diagnostic_only) continue;
    const auto& p = inst.problem;
    REQUIRE_MESSAGE(p.certificate().has_value(), inst.name);
    const auto& c = *p.certificate();

    // Recovering the primal from the dual certificate reproduces x_star.
    Vector sum = Vector::Zero(p.n());
    for (const auto& b : c.y_star) sum += b;
    CHECK((p.objective().conj_grad(-sum) - c.x_star).norm() <= 1e-12 * (1.0 + c.x_star.norm()));
    CHECK(c.d_star == doctest::Approx(-0.5 * (p.v() - c.x_star).squaredNorm()).epsilon(1e-12));

    // The certificate is a coordinate-wise fixed point of the solver update.
    DualState y(p, c.y_star);
    const double d0 = dual_value(p, y);
    CHECK(d0 == doctest::Approx(c.d_star).epsilon(1e-10));
    for (int i = 0; i < p.m(); ++i) {
      coordinate_step(p, y, i, p.objective().sigma());
      CHECK((y.block(i) - c.y_star[static_cast<size_t>(i)]).norm() <=
            1e-8 * (1.0 + c.y_star[static_cast<size_t>(i)].norm()));
    }

    // Dual blocks really are normal-cone elements: <y_i, z - x*> <= 0 on
    // sampled members z of each set.
    SplitMix64 gen(77);
    for (int i = 0; i < p.m(); ++i) {
      for (int t = 0; t < 20; ++t) {
        Vector z(p.n());
        for (int j = 0; j < p.n(); ++j) z[j] = 3.0 * gen.normal();
        const Vector member = p.set(i).project(z);
        CHECK(c.y_star[static_cast<size_t>(i)].dot(member - c.x_star) <=
              1e-9 * (1.0 + member.norm()));
      }
    }
  }
}

TEST_CASE("slater margins separate interior witnesses from boundary ones") {
  const auto ball = ConvexSet::ball(vec({0, 0}), 1.0);
  const auto hs = ConvexSet::halfspace(vec({1, 0}), 1.0);

  const auto good = slater_check({ball, hs}, vec({0, 0}));
  CHECK(good.ok);
  REQUIRE(good.margins.size() == 2);
  CHECK(good.margins[0] == doctest::Approx(1.0));
  CHECK(good.margins[1] == doctest::Approx(1.0));

  // A witness on the ball boundary fails the strict requirement, while a
  // polyhedral boundary point is still acceptable.
  CHECK_FALSE(slater_check({ball, hs}, vec({1, 0})).ok);
  CHECK(slater_check({hs}, vec({1, 0})).ok);
  CHECK_FALSE(slater_check({hs}, vec({2, 0})).ok);

  // Every certified builtin ships a witness that passes its own audit.
  for (const auto& inst : builtin_suites()) {
    if (inst.diagnostic_only) continue;
    const auto& c = *inst.problem.certificate();
    REQUIRE_MESSAGE(c.slater_witness.has_value(), inst.name);
    CHECK_MESSAGE(slater_check(inst.problem.sets(), *c.slater_witness).ok, inst.name);
  }
}

TEST_CASE("regularity estimate: exact values on hand geometry") {
  // Identical sets: mean squared set distance equals the intersection
  // distance, so the ratio is exactly 1 at every probe.
  const auto hs = ConvexSet::halfspace(vec({1, 0}), 0.0);
  const Projector proj_hs = [&](const Vector& x) { return hs.project(x); };
  const auto same = estimate_linear_regularity({hs, hs}, proj_hs, {vec({2, 1}), vec({5, -3})});
  CHECK(same.mu_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.used == 2);

  // Orthogonal halfspaces probed at (1, 1): set distances 1 and 1, corner
  // distance sqrt(2), so the ratio is 1/2.
  const auto hx = ConvexSet::halfspace(vec({1, 0}), 0.0);
  const auto hy = ConvexSet::halfspace(vec({0, 1}), 0.0);
  const Projector corner = [](const Vector& x) {
    return Vector(x.cwiseMin(Vector::Zero(x.size())));
  };
  const auto orth = estimate_linear_regularity({hx, hy}, corner, {vec({1, 1})});
  CHECK(orth.mu_hat == doctest::Approx(0.5).epsilon(1e-9));

  // Probes inside the intersection carry no information and are skipped.
  const auto skip = estimate_linear_regularity({hx, hy}, corner, {vec({-1, -1}), vec({2, 2})});
  CHECK(skip.skipped == 1);
  CHECK(skip.used == 1);
  CHECK_THROWS_AS(estimate_linear_regularity({hx, hy}, corner, {vec({-1, -1})}),
                  InvalidArgument);
  CHECK_THROWS_AS(estimate_linear_regularity({hx, hy}, corner, std::vector<Vector>{}),
                  InvalidArgument);
}

TEST_CASE("regularity estimate never exceeds one") {
  SplitMix64 gen(123);
  for (const char* name : {"ball_halfspace", "balls_m2_n2", "soc_box"}) {
    const auto inst = builtin_instance(name);
    const auto proj = reference_projector(inst.problem.sets());
    const auto est =
        estimate_linear_regularity(inst.problem.sets(), proj, 40, 2.5, RngSpec{gen.next()});
    CHECK_MESSAGE(est.mu_hat <= 1.0 + 1e-9, name);
    CHECK_MESSAGE(est.mu_hat > 0.0, name);
    CHECK(est.used > 0);
  }
}

TEST_CASE("reference projector agrees with a certified optimum") {
  const auto inst = builtin_instance("ball_halfspace");
  const auto& p = inst.problem;
  const auto proj = reference_projector(p.sets());
  const Vector px = proj(p.v());
  CHECK((px - p.certificate()->x_star).norm() <= 1e-5);
  // Feasible points are (nearly) fixed.
  const Vector inside = *p.certificate()->slater_witness;
  CHECK((proj(inside) - inside).norm() <= 1e-9);
}

TEST_CASE("builtin catalog is complete and self-consistent") {
  const auto names = builtin_names();
  for (const char* want : {"single_ball", "ball_halfspace", "balls_m2_n2", "balls_m5_n10",
                           "balls_m20_n50", "tangent_balls", "soc_box", "epi_hypo_diagnostic"}) {
    CHECK_MESSAGE(std::find(names.begin(), names.end(), want) != names.end(), want);
  }
  CHECK(names.size() == builtin_suites().size());

  const auto a = builtin_instance("single_ball");
  CHECK((a.problem.certificate()->x_star - vec({1, 0})).norm() <= 1e-14);
  CHECK(a.problem.m() == 1);

  const auto f = builtin_instance("epi_hypo_diagnostic");
  CHECK(f.diagnostic_only);
  CHECK_FALSE(f.problem.certificate().has_value());
  CHECK(f.problem.m() == 28);

  CHECK_THROWS_AS(builtin_instance("no_such_instance"), InvalidArgument);

  // The ball-bundle family scales as advertised.
  CHECK(builtin_instance("balls_m20_n50").problem.m() == 20);
  CHECK(builtin_instance("balls_m20_n50").problem.n() == 50);
  CHECK(builtin_instance("soc_box").problem.set(0).kind() == SetKind::SecondOrderCone);
}
