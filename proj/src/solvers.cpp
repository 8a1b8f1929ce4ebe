#include "dualcd/solvers.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "dualcd/errors.hpp"

namespace dualcd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

// Relative-decrease stagnation detector over fixed-size windows.
class StagnationCheck {
 public:
  StagnationCheck(long window, double rel, double d0) : window_(window), rel_(rel), last_(d0) {}
  bool step(long k, double d) {
    if (window_ <= 0 || k == 0 || k % window_ != 0) return false;
    const bool stalled = last_ - d <= rel_ * (1.0 + std::abs(d));
    last_ = d;
    return stalled;
  }

 private:
  long window_;
  double rel_;
  double last_;
};

struct Refs {
  std::optional<double> d_ref;
  std::optional<Vector> x_ref;
};

Refs resolve_refs(const ProblemInstance& p, const SolveOptions& opts) {
  Refs r;
  r.d_ref = opts.d_ref ? opts.d_ref : p.d_star();
  if (opts.x_ref) {
    r.x_ref = opts.x_ref;
  } else if (p.certificate()) {
    r.x_ref = p.certificate()->x_star;
  }
  return r;
}

void push_row(Trace& tr, bool record, long k, double d, const std::optional<double>& d_ref,
              const std::optional<Vector>& x_ref, const Vector* x, double theta, int epoch,
              long proj) {
  if (!record) return;
  TraceRecord r;
  r.k = k;
  r.d = d;
  r.gap = d_ref ? d - *d_ref : kNaN;
  r.primal_err = (x_ref && x) ? (*x - *x_ref).norm() : kNaN;
  r.theta = theta;
  r.epoch = epoch;
  r.projections = proj;
  tr.records.push_back(r);
}

// Best-approximation dual value from the primal shadow:
// g*(-s) + sum supp = 0.5||x||^2 - 0.5||v||^2 + sum supp with x = v - s.
double dykstra_dual_value(const Vector& x, const Vector& v, double supp_sum) {
  return 0.5 * x.squaredNorm() - 0.5 * v.squaredNorm() + supp_sum;
}

}  // namespace

void Trace::to_csv(std::ostream& os) const {
  std::string out;
  out.reserve(records.size() * 96 + 64);
  out += kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.k);
    out += ',';
    append_number(out, r.d);
    out += ',';
    append_number(out, r.gap);
    out += ',';
    append_number(out, r.primal_err);
    out += ',';
    append_number(out, r.theta);
    out += ',';
    out += std::to_string(r.epoch);
    out += ',';
    out += std::to_string(r.projections);
    out += '\n';
  }
  os << out;
}

double theta_next(double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw InvalidArgument("theta_next: theta must be in (0, 1]");
  const double t2 = theta * theta;
  return 0.5 * (std::sqrt(t2 * (t2 + 2.0)) - t2);
}

SolveResult rcd_solve(const ProblemInstance& p, DualState y0, const SolveOptions& opts,
                      RngSpec rng) {
  if (opts.budget < 0) throw InvalidArgument("rcd_solve: budget must be >= 0");
  const int m = p.m();
  const double step = p.objective().sigma();
  auto gen = rng.make();
  const Refs refs = resolve_refs(p, opts);

  SolveResult res{std::move(y0), Trace{"rcd", opts.instance_id, rng.seed, {}}};
  DualState& y = res.y;

  double d = dual_value(p, y);
  if (!std::isfinite(d)) throw SolverError("rcd_solve: initial dual value is not finite");
  const double d0 = d;
  {
    const Vector x = primal_from_dual(p, y);
    push_row(res.trace, opts.record_trace, 0, d, refs.d_ref, refs.x_ref, &x, kNaN, 0, 0);
    if (opts.keep_primal) res.primal_history.push_back(x);
  }

  StagnationCheck stag(10L * m, opts.stagnation_rel, d);
  res.stop = StopReason::Budget;
  long k = 0;
  while (k < opts.budget) {
    const int i = gen.index(m);
    coordinate_step(p, y, i, step);
    ++k;
    d = dual_value(p, y);
    if (!std::isfinite(d)) throw SolverError("rcd_solve: support value became +inf");
    if (d < -1e15 * (1.0 + std::abs(d0)))
      throw SolverError("rcd_solve: dual unbounded below; the intersection may be empty");
    const Vector x = primal_from_dual(p, y);
    push_row(res.trace, opts.record_trace, k, d, refs.d_ref, refs.x_ref, &x, kNaN, 0, k);
    if (opts.keep_primal) res.primal_history.push_back(x);
    if (opts.tol > 0.0 && refs.d_ref && d - *refs.d_ref <= opts.tol) {
      res.stop = StopReason::GapTolerance;
      break;
    }
    if (stag.step(k, d)) {
      res.stop = StopReason::Stagnation;
      break;
    }
  }
  if (!y.revalidate_supports(p))
    throw SolverError("rcd_solve: final iterate has a +inf support term");
  res.iterations = k;
  res.projections = k;
  res.final_d = dual_value(p, y);
  return res;
}

SolveResult racd_solve(const ProblemInstance& p, const DualState& y0, long K,
                       const SolveOptions& opts, SplitMix64& gen, int epoch_tag, long k_offset,
                       long proj_offset, Trace* append_to) {
  if (K < 0) throw InvalidArgument("racd_solve: K must be >= 0");
  const int m = p.m();
  const double sigma_g = p.objective().sigma();
  const Refs refs = resolve_refs(p, opts);

  SolveResult res{y0, Trace{"racd", opts.instance_id, 0, {}}};
  Trace& tr = append_to ? *append_to : res.trace;
  DualState& y = res.y;
  DualState z = y0;
  DualState vstate = y0;  // workspace for v^k

  double theta = 1.0 / m;
  {
    const double d = dual_value(p, y);
    if (!std::isfinite(d)) throw SolverError("racd_solve: initial dual value is not finite");
    const Vector x = primal_from_dual(p, y);
    // Restart epochs resume an existing trace; only the very first epoch
    // records the k = 0 row.
    push_row(tr, opts.record_trace && k_offset == 0, k_offset, d, refs.d_ref, refs.x_ref, &x,
             theta, epoch_tag, proj_offset);
    if (opts.keep_primal) res.primal_history.push_back(x);
  }

  for (long k = 0; k < K; ++k) {
    vstate.assign_combination(p, 1.0 - theta, y, theta, z);
    const int i = gen.index(m);
    // Block gradient of the smooth part at v^k, shared across blocks.
    const Vector g = block_grad(p, vstate);
    const double alpha = sigma_g / (theta * m);
    const Vector t = z.block(i) - alpha * g;
    const Vector witness = p.set(i).project(t / alpha);
    const Vector z_new = t - alpha * witness;
    const Vector dz = z_new - z.block(i);
    z.set_block_from_prox(i, z_new, witness);
    // y^{k+1} = v^k + m theta (z^{k+1} - z^k): v^k everywhere except block i.
    y = vstate;
    y.set_block_in_domain(p, i, vstate.block(i) + (m * theta) * dz);

    theta = theta_next(theta);
    const double d = dual_value(p, y);
    const Vector x = primal_from_dual(p, y);
    push_row(tr, opts.record_trace, k_offset + k + 1, d, refs.d_ref, refs.x_ref, &x, theta,
             epoch_tag, proj_offset + k + 1);
    if (opts.keep_primal) res.primal_history.push_back(x);
  }
  res.iterations = K;
  res.projections = K;
  res.final_d = dual_value(p, y);
  return res;
}

SolveResult racd_solve(const ProblemInstance& p, const DualState& y0, long K,
                       const SolveOptions& opts, RngSpec rng) {
  auto gen = rng.make();
  SolveResult res = racd_solve(p, y0, K, opts, gen, 0, 0, 0, nullptr);
  res.trace.seed = rng.seed;
  res.trace.solver = "racd";
  res.trace.instance_id = opts.instance_id;
  if (!res.y.revalidate_supports(p))
    throw SolverError("racd_solve: final iterate has a +inf support term");
  res.final_d = dual_value(p, res.y);
  return res;
}

EpochSchedule::EpochSchedule(long k0, double sigma_bar) : k0_(k0), sigma_bar_(sigma_bar) {
  if (k0_ < 1) throw InvalidArgument("EpochSchedule: K0 must be >= 1");
  if (!(sigma_bar_ > 0.0)) throw InvalidArgument("EpochSchedule: sigma_bar must be > 0");
}

long EpochSchedule::k0_formula(double s, int m) {
  if (!(s > 0.0)) throw InvalidArgument("schedule: sigma estimate must be > 0");
  if (m < 1) throw InvalidArgument("schedule: m must be >= 1");
  const double raw = 2.0 * std::numbers::e * m * (std::sqrt((1.0 + s) / s) - 1.0) + 1.0;
  return static_cast<long>(std::ceil(raw));
}

EpochSchedule EpochSchedule::from_sigma_bar(double sigma_bar, int m) {
  return EpochSchedule(k0_formula(sigma_bar, m), sigma_bar);
}

long EpochSchedule::epoch_length(long r) const {
  if (r < 0) throw InvalidArgument("epoch_length: r must be >= 0");
  const int j = std::countr_zero(static_cast<unsigned long long>(r) + 1ULL);
  if (j > 56) throw InvalidArgument("epoch_length: epoch index too large");
  return k0_ << j;
}

std::vector<long> EpochSchedule::prefix(int p) const {
  if (p < 1 || p > 24) throw InvalidArgument("prefix: p must be in [1, 24]");
  std::vector<long> out;
  out.reserve((1L << p) - 1);
  for (long r = 0; r < (1L << p) - 1; ++r) out.push_back(epoch_length(r));
  return out;
}

bool EpochSchedule::check_conditions(int p) const {
  if (p < 1 || p > 24) throw InvalidArgument("check_conditions: p must be in [1, 24]");
  const long total = (1L << p) - 1;
  for (int j = 0; j < p; ++j) {
    if (epoch_length((1L << j) - 1) != (k0_ << j)) return false;
    long count = 0;
    for (long r = 0; r < total; ++r)
      if (epoch_length(r) == (k0_ << j)) ++count;
    if (count != (1L << (p - 1 - j))) return false;
  }
  return true;
}

long EpochSchedule::k_star_for(double sigma, int m) const { return k0_formula(sigma, m); }

long EpochSchedule::beta_for(double sigma, int m) const {
  const long k_star = k_star_for(sigma, m);
  long b = 0;
  while ((k0_ << b) < k_star) ++b;
  return b;
}

SolveResult restarted_racd(const ProblemInstance& p, DualState y0, const EpochSchedule& sched,
                           const RestartOptions& opts, RngSpec rng) {
  if (opts.epochs < 0) throw InvalidArgument("restarted_racd: epochs must be >= 0");
  auto gen = rng.make();
  const Refs refs = resolve_refs(p, opts.base);

  SolveResult res{std::move(y0), Trace{"restarted_racd", opts.base.instance_id, rng.seed, {}}};
  DualState& incumbent = res.y;
  if (!incumbent.revalidate_supports(p))
    throw SolverError("restarted_racd: initial point has a +inf support term");
  double d_inc = dual_value(p, incumbent);

  long k_total = 0;
  res.stop = StopReason::EpochsDone;
  for (int r = 0; r < opts.epochs; ++r) {
    long K = sched.epoch_length(r);
    if (opts.projection_cap >= 0) {
      K = std::min(K, opts.projection_cap - k_total);
      if (K <= 0) {
        res.stop = StopReason::Budget;
        break;
      }
    }
    SolveOptions epoch_opts = opts.base;
    epoch_opts.keep_primal = opts.base.keep_primal;
    SolveResult epoch =
        racd_solve(p, incumbent, K, epoch_opts, gen, r, k_total, k_total, &res.trace);
    if (opts.base.keep_primal) {
      auto& h = epoch.primal_history;
      // Epoch histories overlap at the epoch boundary point; drop the repeat.
      const size_t skip = res.primal_history.empty() ? 0 : 1;
      res.primal_history.insert(res.primal_history.end(), h.begin() + skip, h.end());
    }
    k_total += K;

    // Restart acceptance: keep the endpoint only if its strictly re-evaluated
    // dual value does not exceed the incumbent's; +inf support rejects.
    DualState candidate = epoch.y;
    const bool finite = candidate.revalidate_supports(p);
    const double d_cand = finite ? dual_value(p, candidate) : kInf;
    if (d_cand <= d_inc) {
      incumbent = std::move(candidate);
      d_inc = d_cand;
    }
    if (opts.base.tol > 0.0 && refs.d_ref && d_inc - *refs.d_ref <= opts.base.tol) {
      res.stop = StopReason::GapTolerance;
      break;
    }
    if (opts.projection_cap >= 0 && k_total >= opts.projection_cap) {
      res.stop = StopReason::Budget;
      break;
    }
  }
  res.iterations = k_total;
  res.projections = k_total;
  res.final_d = d_inc;
  return res;
}

ProjectionResult dykstra_cyclic(const Vector& v, const std::vector<ConvexSet>& sets, long sweeps,
                                const TraceRefs& refs) {
  if (sets.empty()) throw InvalidArgument("dykstra_cyclic: needs at least one set");
  if (sweeps < 0) throw InvalidArgument("dykstra_cyclic: sweeps must be >= 0");
  const int m = static_cast<int>(sets.size());
  for (const auto& s : sets)
    if (s.dim() != v.size()) throw InvalidArgument("dykstra_cyclic: set dimension mismatch");

  ProjectionResult res;
  res.trace.solver = "dykstra_cyclic";
  res.x = v;
  res.y.assign(sets.size(), Vector::Zero(v.size()));
  std::vector<double> supp(sets.size(), 0.0);
  double supp_sum = 0.0;

  auto trace_point = [&](long k) {
    const double d = dykstra_dual_value(res.x, v, supp_sum);
    push_row(res.trace, refs.record, k, d, refs.d_star, refs.x_star, &res.x, kNaN, 0, k);
    if (refs.keep_primal) res.primal_history.push_back(res.x);
  };
  trace_point(0);

  long k = 0;
  for (long sweep = 0; sweep < sweeps; ++sweep) {
    for (int i = 0; i < m; ++i) {
      const auto idx = static_cast<size_t>(i);
      const Vector w = res.x + res.y[idx];
      Vector x_new = sets[idx].project(w);
      res.y[idx] = w - x_new;
      supp_sum += res.y[idx].dot(x_new) - supp[idx];
      supp[idx] = res.y[idx].dot(x_new);
      res.x = std::move(x_new);
      ++k;
      trace_point(k);
    }
  }
  res.projections = k;
  res.stop = StopReason::Budget;
  return res;
}

ProjectionResult dykstra_random(const Vector& v, const std::vector<ConvexSet>& sets,
                                const RandomDykstraOptions& opts, RngSpec rng,
                                const TraceRefs& refs, const std::vector<Vector>* y0) {
  if (sets.empty()) throw InvalidArgument("dykstra_random: needs at least one set");
  if (opts.budget < 0) throw InvalidArgument("dykstra_random: budget must be >= 0");
  const int m = static_cast<int>(sets.size());
  for (const auto& s : sets)
    if (s.dim() != v.size()) throw InvalidArgument("dykstra_random: set dimension mismatch");
  auto gen = rng.make();

  ProjectionResult res;
  res.trace.solver = "dykstra_random";
  res.trace.seed = rng.seed;
  res.y.assign(sets.size(), Vector::Zero(v.size()));
  std::vector<double> supp(sets.size(), 0.0);
  double supp_sum = 0.0;
  if (y0) {
    if (y0->size() != sets.size()) throw InvalidArgument("dykstra_random: y0 block count mismatch");
    res.y = *y0;
    for (size_t i = 0; i < sets.size(); ++i) {
      supp[i] = sets[i].support(res.y[i]).value;
      if (!std::isfinite(supp[i]))
        throw SolverError("dykstra_random: initial block outside the support domain");
      supp_sum += supp[i];
    }
  }
  // Invariant maintained throughout: x = v - sum_j y_j.
  res.x = v;
  for (const auto& b : res.y) res.x -= b;

  double d = dykstra_dual_value(res.x, v, supp_sum);
  const double d0 = d;
  push_row(res.trace, refs.record, 0, d, refs.d_star, refs.x_star, &res.x, kNaN, 0, 0);
  if (refs.keep_primal) res.primal_history.push_back(res.x);

  StagnationCheck stag(10L * m, opts.stagnation_rel, d);
  res.stop = StopReason::Budget;
  long k = 0;
  while (k < opts.budget) {
    const int i = gen.index(m);
    const auto idx = static_cast<size_t>(i);
    const Vector w = res.x + res.y[idx];
    Vector x_new = sets[idx].project(w);
    res.y[idx] = w - x_new;
    supp_sum += res.y[idx].dot(x_new) - supp[idx];
    supp[idx] = res.y[idx].dot(x_new);
    res.x = std::move(x_new);
    ++k;
    d = dykstra_dual_value(res.x, v, supp_sum);
    if (d < -1e15 * (1.0 + std::abs(d0)))
      throw SolverError("dykstra_random: dual unbounded below; the intersection may be empty");
    push_row(res.trace, refs.record, k, d, refs.d_star, refs.x_star, &res.x, kNaN, 0, k);
    if (refs.keep_primal) res.primal_history.push_back(res.x);
    if (opts.tol > 0.0 && refs.d_star && d - *refs.d_star <= opts.tol) {
      res.stop = StopReason::GapTolerance;
      break;
    }
    if (stag.step(k, d)) {
      res.stop = StopReason::Stagnation;
      break;
    }
  }
  res.projections = k;
  return res;
}

namespace {

// State threaded through accelerated-Dykstra epochs.
struct AccelState {
  Vector x, xt;            // x^k and x~^k
  std::vector<Vector> z;   // prox blocks
  std::vector<Vector> y;   // dual shadow, bookkeeping only
  double theta = 0.0;
};

// One accelerated epoch of K iterations. Updates touch x, xt and one z block
// per iteration; the y shadow is maintained alongside for dual-value traces
// and for the restart acceptance rule.
void accel_epoch(const std::vector<ConvexSet>& sets, const Vector& v, AccelState& st, long K,
                 SplitMix64& gen, Trace& tr, const TraceRefs& refs, int epoch_tag, long k_offset,
                 std::vector<Vector>* primal_history) {
  const int m = static_cast<int>(sets.size());
  auto supp_sum_on_domain = [&]() {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += sets[static_cast<size_t>(j)].support_on_domain(st.y[static_cast<size_t>(j)]);
    return s;
  };
  if (k_offset == 0) {
    double s0 = 0.0;
    for (int j = 0; j < m; ++j) {
      const double sj = sets[static_cast<size_t>(j)].support(st.y[static_cast<size_t>(j)]).value;
      if (!std::isfinite(sj))
        throw SolverError("dykstra_accel: initial block outside the support domain");
      s0 += sj;
    }
    push_row(tr, refs.record, 0, dykstra_dual_value(st.x, v, s0), refs.d_star, refs.x_star, &st.x,
             st.theta, epoch_tag, 0);
    if (primal_history) primal_history->push_back(st.x);
  }

  for (long k = 0; k < K; ++k) {
    const double theta = st.theta;
    const Vector xh = (1.0 - theta) * st.x + theta * st.xt;
    const int i = gen.index(m);
    const auto idx = static_cast<size_t>(i);
    const Vector x_new = sets[idx].project(xh + (theta * m) * st.z[idx]);
    const Vector dz = (xh - x_new) / (theta * m);
    // Shadow first: y^{k+1} = (1-theta) y^k + theta z^k blockwise, plus the
    // m*theta*(z^{k+1}-z^k) correction on the updated block.
    for (int j = 0; j < m; ++j) {
      const auto jdx = static_cast<size_t>(j);
      st.y[jdx] = (1.0 - theta) * st.y[jdx] + theta * st.z[jdx];
    }
    st.y[idx] += (m * theta) * dz;
    st.z[idx] += dz;
    st.xt -= dz;
    st.x = x_new;
    st.theta = theta_next(theta);

    if (refs.record) {
      const double d = dykstra_dual_value(st.x, v, supp_sum_on_domain());
      push_row(tr, true, k_offset + k + 1, d, refs.d_star, refs.x_star, &st.x, st.theta, epoch_tag,
               k_offset + k + 1);
    }
    if (primal_history) primal_history->push_back(st.x);
  }
}

AccelState make_accel_state(const Vector& v, const std::vector<ConvexSet>& sets,
                            const std::vector<Vector>* z0) {
  AccelState st;
  const size_t m = sets.size();
  st.z.assign(m, Vector::Zero(v.size()));
  if (z0) {
    if (z0->size() != m) throw InvalidArgument("dykstra_accel: z0 block count mismatch");
    st.z = *z0;
  }
  st.x = v;
  for (const auto& b : st.z) st.x -= b;
  st.xt = st.x;
  st.y = st.z;
  st.theta = 1.0 / static_cast<double>(m);
  return st;
}

}  // namespace

AccelProjectionResult dykstra_accel_random(const Vector& v, const std::vector<ConvexSet>& sets,
                                           long K, RngSpec rng, const TraceRefs& refs,
                                           const std::vector<Vector>* z0) {
  if (sets.empty()) throw InvalidArgument("dykstra_accel: needs at least one set");
  if (K < 0) throw InvalidArgument("dykstra_accel: K must be >= 0");
  for (const auto& s : sets)
    if (s.dim() != v.size()) throw InvalidArgument("dykstra_accel: set dimension mismatch");
  auto gen = rng.make();

  AccelProjectionResult res;
  res.trace.solver = "dykstra_accel";
  res.trace.seed = rng.seed;
  AccelState st = make_accel_state(v, sets, z0);
  accel_epoch(sets, v, st, K, gen, res.trace, refs, 0, 0,
              refs.keep_primal ? &res.primal_history : nullptr);

  double supp_sum = 0.0;
  for (size_t j = 0; j < sets.size(); ++j) {
    const double sj = sets[j].support(st.y[j]).value;
    if (!std::isfinite(sj))
      throw SolverError("dykstra_accel: final iterate has a +inf support term");
    supp_sum += sj;
  }
  res.final_d = dykstra_dual_value(st.x, v, supp_sum);
  res.x = std::move(st.x);
  res.z = std::move(st.z);
  res.y = std::move(st.y);
  res.projections = K;
  return res;
}

AccelProjectionResult dykstra_accel_restarted(const Vector& v, const std::vector<ConvexSet>& sets,
                                              const EpochSchedule& sched, int epochs, RngSpec rng,
                                              const TraceRefs& refs, long projection_cap,
                                              double tol) {
  if (sets.empty()) throw InvalidArgument("dykstra_accel_restarted: needs at least one set");
  if (epochs < 0) throw InvalidArgument("dykstra_accel_restarted: epochs must be >= 0");
  auto gen = rng.make();
  const size_t m = sets.size();

  AccelProjectionResult res;
  res.trace.solver = "dykstra_accel_restarted";
  res.trace.seed = rng.seed;

  std::vector<Vector> incumbent(m, Vector::Zero(v.size()));
  double d_inc;
  {
    double s = 0.0;
    for (size_t j = 0; j < m; ++j) s += sets[j].support(incumbent[j]).value;
    d_inc = dykstra_dual_value(v, v, s);  // x(0) = v
  }

  long k_total = 0;
  for (int r = 0; r < epochs; ++r) {
    long K = sched.epoch_length(r);
    if (projection_cap >= 0) {
      K = std::min(K, projection_cap - k_total);
      if (K <= 0) break;
    }
    AccelState st = make_accel_state(v, sets, &incumbent);
    accel_epoch(sets, v, st, K, gen, res.trace, refs, r, k_total,
                refs.keep_primal ? &res.primal_history : nullptr);
    k_total += K;

    // Acceptance on strictly evaluated dual values; +inf support rejects.
    double supp_sum = 0.0;
    bool finite = true;
    for (size_t j = 0; j < m && finite; ++j) {
      const double sj = sets[j].support(st.y[j]).value;
      finite = std::isfinite(sj);
      supp_sum += sj;
    }
    if (finite) {
      Vector x_cand = v;
      for (const auto& b : st.y) x_cand -= b;
      const double d_cand = dykstra_dual_value(x_cand, v, supp_sum);
      if (d_cand <= d_inc) {
        incumbent = st.y;
        d_inc = d_cand;
      }
    }
    if (tol > 0.0 && refs.d_star && d_inc - *refs.d_star <= tol) break;
    if (projection_cap >= 0 && k_total >= projection_cap) break;
  }

  res.x = v;
  for (const auto& b : incumbent) res.x -= b;
  res.y = incumbent;
  res.z = std::move(incumbent);
  res.projections = k_total;
  res.final_d = d_inc;
  return res;
}

}  // namespace dualcd
