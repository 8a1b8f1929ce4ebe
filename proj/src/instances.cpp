#include "dualcd/instances.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "dualcd/errors.hpp"
#include "dualcd/solvers.hpp"

namespace dualcd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CertifiedInstance kkt_instance(std::string name, const Vector& x_star,
                               std::vector<ConvexSet> sets, const std::vector<double>& scales,
                               std::optional<Vector> slater_witness) {
  if (sets.empty()) throw InvalidArgument("kkt_instance: needs at least one set");
  if (scales.size() != sets.size()) throw InvalidArgument("kkt_instance: one scale per set");
  const auto n = x_star.size();
  Certificate cert;
  cert.x_star = x_star;
  Vector v = x_star;
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].dim() != n) throw InvalidArgument("kkt_instance: set dimension mismatch");
    if (!sets[i].contains(x_star, 1e-9 * (1.0 + x_star.norm())))
      throw InvalidArgument("kkt_instance: x_star is not in set " + std::to_string(i));
    if (!(scales[i] >= 0.0)) throw InvalidArgument("kkt_instance: scales must be >= 0");
    Vector dir = sets[i].normal_cone_dir(x_star, scales[i]);
    if (scales[i] > 0.0 && dir.norm() == 0.0)
      throw InvalidArgument("kkt_instance: nonzero scale at a point interior to set " +
                            std::to_string(i));
    cert.y_star.push_back(dir);
    v += dir;
  }
  cert.d_star = -0.5 * (v - x_star).squaredNorm();
  cert.slater_witness = std::move(slater_witness);
  ProblemInstance problem(Objective::half_sq_dist(std::move(v)), std::move(sets),
                          std::move(cert));
  return CertifiedInstance{std::move(name), std::move(problem), false};
}

SlaterReport slater_check(const std::vector<ConvexSet>& sets, const Vector& x_bar, double delta) {
  SlaterReport rep;
  rep.ok = true;
  for (const auto& s : sets) {
    const double margin = s.interior_margin(x_bar);
    rep.margins.push_back(margin);
    if (s.polyhedral()) {
      rep.ok = rep.ok && margin >= 0.0;
    } else {
      rep.ok = rep.ok && margin > delta;
    }
  }
  return rep;
}

RegularityEstimate estimate_linear_regularity(const std::vector<ConvexSet>& sets,
                                              const Projector& intersection_projector,
                                              const std::vector<Vector>& probes) {
  if (sets.empty()) throw InvalidArgument("estimate_linear_regularity: needs sets");
  if (probes.empty()) throw InvalidArgument("estimate_linear_regularity: needs probe points");
  RegularityEstimate est;
  est.mu_hat = kInf;
  const double m = static_cast<double>(sets.size());
  for (const auto& x : probes) {
    const double dist_inter = (x - intersection_projector(x)).norm();
    if (dist_inter <= 1e-8) {
      ++est.skipped;
      continue;
    }
    double mean_sq = 0.0;
    for (const auto& s : sets) {
      const double di = s.distance(x);
      mean_sq += di * di;
    }
    mean_sq /= m;
    est.mu_hat = std::min(est.mu_hat, mean_sq / (dist_inter * dist_inter));
    ++est.used;
  }
  if (est.used == 0)
    throw InvalidArgument(
        "estimate_linear_regularity: every probe lies in the intersection; no information");
  return est;
}

RegularityEstimate estimate_linear_regularity(const std::vector<ConvexSet>& sets,
                                              const Projector& intersection_projector,
                                              long samples, double radius, RngSpec rng) {
  if (samples < 1) throw InvalidArgument("estimate_linear_regularity: samples must be >= 1");
  if (!(radius > 0.0)) throw InvalidArgument("estimate_linear_regularity: radius must be > 0");
  const int n = sets.front().dim();
  auto gen = rng.make();
  std::vector<Vector> probes;
  probes.reserve(static_cast<size_t>(samples));
  for (long s = 0; s < samples; ++s) {
    Vector dir(n);
    for (int j = 0; j < n; ++j) dir[j] = gen.normal();
    const double norm = dir.norm();
    if (norm < 1e-300) {
      dir.setZero();
      dir[0] = 1.0;
    } else {
      dir /= norm;
    }
    const double r = radius * std::pow(gen.uniform01(), 1.0 / n);
    probes.push_back(r * dir);
  }
  return estimate_linear_regularity(sets, intersection_projector, probes);
}

Projector reference_projector(const std::vector<ConvexSet>& sets) {
  return [sets](const Vector& point) -> Vector {
    // Restarted accelerated Dykstra to stagnation: epochs from the ruler
    // schedule, keep-if-not-worse acceptance, stop when an epoch improves the
    // incumbent dual value by less than 1e-15 relative.
    const int m = static_cast<int>(sets.size());
    const EpochSchedule sched(std::max(8L, EpochSchedule::k0_formula(1.0, m)), 1.0);
    SplitMix64 gen(12345);
    std::vector<Vector> incumbent(sets.size(), Vector::Zero(point.size()));
    Vector x = point;
    double d_inc = 0.0;
    long total = 0;
    int stalled = 0;
    for (int r = 0; r < 40 && total < 400000 && stalled < 2; ++r) {
      const long K = sched.epoch_length(r);
      TraceRefs quiet;
      quiet.record = false;
      RngSpec seed{gen.next()};
      std::optional<AccelProjectionResult> out;
      try {
        out = dykstra_accel_random(point, sets, K, seed, quiet, &incumbent);
      } catch (const SolverError&) {
        // Epoch ended on an infeasible dual block; reject it and retry from
        // the incumbent with the next seed.
      }
      total += K;
      if (!out) continue;
      double supp = 0.0;
      bool finite = true;
      for (size_t j = 0; j < sets.size() && finite; ++j) {
        const double sj = sets[j].support(out->y[j]).value;
        finite = std::isfinite(sj);
        supp += sj;
      }
      if (!finite) continue;
      Vector x_cand = point;
      for (const auto& b : out->y) x_cand -= b;
      const double d_cand = 0.5 * x_cand.squaredNorm() - 0.5 * point.squaredNorm() + supp;
      if (d_cand <= d_inc) {
        if (d_inc - d_cand <= 1e-15 * (1.0 + std::abs(d_cand))) ++stalled;
        else stalled = 0;
        incumbent = out->y;
        d_inc = d_cand;
        x = x_cand;
      } else {
        ++stalled;
      }
    }
    return x;
  };
}

namespace {

CertifiedInstance make_single_ball() {
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::ball(Vector::Zero(2), 1.0));
  Vector x_star(2);
  x_star << 1.0, 0.0;
  return kkt_instance("single_ball", x_star, std::move(sets), {1.0}, Vector::Zero(2));
}

// Both sets active at x_star so no single coordinate step lands on the
// optimum. The 20-degree angle between the two outward normals couples the
// blocks strongly enough that the mean dual gap is log-linear from the first
// iterations, not just asymptotically.
CertifiedInstance make_ball_halfspace() {
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::ball(Vector::Zero(2), 1.0));
  const double ang = 20.0 * M_PI / 180.0;
  Vector a(2);
  a << std::cos(ang), std::sin(ang);
  sets.push_back(ConvexSet::halfspace(a, std::cos(ang)));
  Vector x_star(2);
  x_star << 1.0, 0.0;
  return kkt_instance("ball_halfspace", x_star, std::move(sets), {1.0, 1.5}, Vector::Zero(2));
}

// m balls through the origin with outward normals clustered around e_1, so
// the intersection has interior on the -e_1 side.
CertifiedInstance make_ball_bundle(int m, int n) {
  SplitMix64 gen(9000ULL + 13ULL * static_cast<unsigned>(m) + static_cast<unsigned>(n));
  const Vector x_star = Vector::Zero(n);
  std::vector<ConvexSet> sets;
  std::vector<double> scales;
  double min_dot = kInf;
  double min_r = kInf;
  std::vector<Vector> dirs;
  for (int i = 0; i < m; ++i) {
    Vector w(n);
    for (int j = 0; j < n; ++j) w[j] = gen.normal();
    w /= std::max(w.norm(), 1e-12);
    Vector u = Vector::Zero(n);
    u[0] = 1.0;
    u += 0.65 * w;
    u /= u.norm();
    const double r = 0.8 + 0.4 * gen.uniform01();
    sets.push_back(ConvexSet::ball(-r * u, r));
    dirs.push_back(u);
    // Leave the last ball inactive at x_star when enough active blocks remain
    // for the approach to stay asymptotic (two active blocks minimum).
    scales.push_back(i == m - 1 && m > 2 ? 0.0 : 0.5 + gen.uniform01());
    min_dot = std::min(min_dot, u[0]);
    min_r = std::min(min_r, r);
  }
  // Interior witness: step from x_star against the shared normal direction.
  Vector witness = Vector::Zero(n);
  witness[0] = -0.8 * min_r * min_dot;
  std::string name = "balls_m" + std::to_string(m) + "_n" + std::to_string(n);
  return kkt_instance(std::move(name), x_star, std::move(sets), scales, witness);
}

// Two balls overlapping in a thin lens around the origin; gamma controls the
// conditioning (smaller gamma => smaller linear-regularity constant).
CertifiedInstance make_tangent_balls() {
  const double gamma = 3e-3;
  const double r = 1.0 + gamma;
  const double b = std::sqrt(2.0 * gamma + gamma * gamma);
  Vector c1(2), c2(2), x_star(2);
  c1 << -1.0, 0.0;
  c2 << 1.0, 0.0;
  x_star << 0.0, b;
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::ball(c1, r));
  sets.push_back(ConvexSet::ball(c2, r));
  // v = x_star + s (u1 + u2) = (0, b + 1) with s = r / (2 b).
  const double s = r / (2.0 * b);
  return kkt_instance("tangent_balls", x_star, std::move(sets), {s, s}, Vector::Zero(2));
}

CertifiedInstance make_soc_box() {
  std::vector<ConvexSet> sets;
  sets.push_back(ConvexSet::second_order_cone(3));
  Vector l(3), u(3);
  l << -1.0, -1.0, 0.0;
  u << 1.0, 1.0, 0.5;
  sets.push_back(ConvexSet::box(l, u));
  Vector x_star(3);
  x_star << 0.3, 0.4, 0.5;
  Vector witness(3);
  witness << 0.0, 0.0, 0.4;
  return kkt_instance("soc_box", x_star, std::move(sets), {1.0, 0.3}, witness);
}

// Epigraph of sqrt(x^2 + x^4) and hypograph of -sqrt(x^2 + x^4), each covered
// by large balls tangent to the curve from outside the region and inflated so
// every ball contains the whole region restricted to the window
// [-1, 1] x [-3, 3]. Their intersection pinches to the origin, so Slater
// margins collapse while linear regularity does not. Geometry only.
CertifiedInstance make_epi_hypo() {
  const double R = 50.0;
  const double y_cap = 3.0;
  auto f = [](double x) { return std::sqrt(x * x + x * x * x * x); };
  auto fprime = [](double x) {
    const double fx = std::sqrt(x * x + x * x * x * x);
    return (x + 2.0 * x * x * x) / fx;
  };
  // Boundary sample of the windowed epigraph, used to inflate radii until the
  // covering is an outer approximation.
  std::vector<Vector> region;
  for (int g = 0; g <= 60; ++g) {
    const double x = -1.0 + 2.0 * g / 60.0;
    Vector p(2), q(2);
    p << x, f(x);
    q << x, y_cap;
    region.push_back(p);
    region.push_back(q);
  }
  std::vector<ConvexSet> sets;
  const int J = 14;
  for (int j = 0; j < J; ++j) {
    const double x = -1.0 + 2.0 * j / (J - 1.0);
    Vector normal(2);
    normal << fprime(x), -1.0;  // points out of the epigraph
    normal /= normal.norm();
    Vector boundary(2);
    boundary << x, f(x);
    const Vector center = boundary - R * normal;
    double radius = R;
    for (const auto& z : region) radius = std::max(radius, (z - center).norm());
    radius *= 1.0 + 1e-12;
    // Epigraph ball and its reflection covering the hypograph of -f.
    sets.push_back(ConvexSet::ball(center, radius));
    Vector mirrored = center;
    mirrored[1] = -mirrored[1];
    sets.push_back(ConvexSet::ball(mirrored, radius));
  }
  ProblemInstance problem(Objective::half_sq_dist(Vector::Zero(2)), std::move(sets));
  return CertifiedInstance{"epi_hypo_diagnostic", std::move(problem), true};
}

}  // namespace

std::vector<CertifiedInstance> builtin_suites() {
  std::vector<CertifiedInstance> out;
  out.push_back(make_single_ball());
  out.push_back(make_ball_halfspace());
  out.push_back(make_ball_bundle(2, 2));
  out.push_back(make_ball_bundle(5, 10));
  out.push_back(make_ball_bundle(20, 50));
  out.push_back(make_tangent_balls());
  out.push_back(make_soc_box());
  out.push_back(make_epi_hypo());
  return out;
}

CertifiedInstance builtin_instance(const std::string& name) {
  for (auto& inst : builtin_suites())
    if (inst.name == name) return inst;
  throw InvalidArgument("unknown builtin instance: " + name);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& inst : builtin_suites()) names.push_back(inst.name);
  return names;
}

}  // namespace dualcd
