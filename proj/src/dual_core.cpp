#include "dualcd/dual_core.hpp"

#include <cmath>
#include <limits>

#include "dualcd/errors.hpp"

namespace dualcd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ProblemInstance::ProblemInstance(Objective objective, std::vector<ConvexSet> sets,
                                 std::optional<Certificate> certificate)
    : objective_(std::move(objective)), sets_(std::move(sets)), n_(objective_.dim()),
      certificate_(std::move(certificate)) {
  if (sets_.empty()) throw InvalidArgument("instance: needs at least one set");
  for (const auto& s : sets_)
    if (s.dim() != n_) throw InvalidArgument("instance: set dimension mismatch");
  if (certificate_) {
    const auto& c = *certificate_;
    if (c.x_star.size() != n_) throw InvalidArgument("certificate: x_star dimension mismatch");
    if (c.y_star.size() != sets_.size())
      throw InvalidArgument("certificate: y_star block count mismatch");
    Vector sum = Vector::Zero(n_);
    for (const auto& b : c.y_star) {
      if (b.size() != n_) throw InvalidArgument("certificate: y_star block dimension mismatch");
      sum += b;
    }
    // KKT audit: x_star must be the primal point recovered from y_star and
    // must belong to every set.
    if ((objective_.conj_grad(-sum) - c.x_star).norm() > 1e-8 * (1.0 + c.x_star.norm()))
      throw InvalidArgument("certificate: x_star does not match conj_grad(-sum y_star)");
    for (const auto& s : sets_)
      if (!s.contains(c.x_star, 1e-8 * (1.0 + c.x_star.norm())))
        throw InvalidArgument("certificate: x_star violates a set");
  }
}

DualState::DualState(const ProblemInstance& p)
    : blocks_(static_cast<size_t>(p.m()), Vector::Zero(p.n())),
      sum_(Vector::Zero(p.n())),
      supp_(static_cast<size_t>(p.m()), 0.0) {}

DualState::DualState(const ProblemInstance& p, std::vector<Vector> blocks)
    : blocks_(std::move(blocks)), sum_(Vector::Zero(p.n())),
      supp_(static_cast<size_t>(p.m()), 0.0) {
  if (blocks_.size() != static_cast<size_t>(p.m()))
    throw InvalidArgument("DualState: block count mismatch");
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].size() != p.n()) throw InvalidArgument("DualState: block dimension mismatch");
    sum_ += blocks_[i];
    supp_[i] = p.set(static_cast<int>(i)).support(blocks_[i]).value;
  }
}

double DualState::support_sum() const {
  double s = 0.0;
  for (double v : supp_) {
    if (!std::isfinite(v)) return kInf;
    s += v;
  }
  return s;
}

void DualState::set_block_from_prox(int i, const Vector& new_block, const Vector& witness) {
  const auto idx = static_cast<size_t>(i);
  sum_ += new_block - blocks_[idx];
  blocks_[idx] = new_block;
  supp_[idx] = new_block.dot(witness);
}

void DualState::set_block_in_domain(const ProblemInstance& p, int i, const Vector& new_block) {
  const auto idx = static_cast<size_t>(i);
  sum_ += new_block - blocks_[idx];
  blocks_[idx] = new_block;
  supp_[idx] = p.set(i).support_on_domain(new_block);
}

void DualState::assign_combination(const ProblemInstance& p, double wa, const DualState& a,
                                   double wb, const DualState& b) {
  for (int i = 0; i < m(); ++i) {
    const auto idx = static_cast<size_t>(i);
    blocks_[idx] = wa * a.blocks_[idx] + wb * b.blocks_[idx];
    supp_[idx] = p.set(i).support_on_domain(blocks_[idx]);
  }
  sum_ = wa * a.sum_ + wb * b.sum_;
}

bool DualState::revalidate_supports(const ProblemInstance& p) {
  bool ok = true;
  for (int i = 0; i < m(); ++i) {
    const auto idx = static_cast<size_t>(i);
    supp_[idx] = p.set(i).support(blocks_[idx]).value;
    ok = ok && std::isfinite(supp_[idx]);
  }
  return ok;
}

bool DualState::verify_consistency() const {
  Vector s = Vector::Zero(sum_.size());
  double total_norm = 0.0;
  for (const auto& b : blocks_) {
    s += b;
    total_norm += b.norm();
  }
  return (s - sum_).norm() <= 1e-9 * (1.0 + total_norm);
}

double dual_value(const ProblemInstance& p, const DualState& y) {
  const double s = y.support_sum();
  if (!std::isfinite(s)) return kInf;
  return p.objective().conj_value(-y.sum()) + s;
}

Vector block_grad(const ProblemInstance& p, const DualState& y) {
  return -p.objective().conj_grad(-y.sum());
}

Vector primal_from_dual(const ProblemInstance& p, const DualState& y) {
  return p.objective().conj_grad(-y.sum());
}

Vector coordinate_step(const ProblemInstance& p, DualState& y, int i, double step) {
  if (i < 0 || i >= y.m()) throw InvalidArgument("coordinate_step: block index out of range");
  if (!(step > 0.0)) throw InvalidArgument("coordinate_step: step must be > 0");
  const Vector t = y.block(i) - step * block_grad(p, y);
  const Vector witness = p.set(i).project(t / step);
  y.set_block_from_prox(i, t - step * witness, witness);
  return witness;
}

std::pair<double, double> primal_dual_gap_bound(const ProblemInstance& p, const DualState& y,
                                                double d_star) {
  if (!p.certificate() && !std::isfinite(d_star))
    throw InvalidArgument("primal_dual_gap_bound: no reference optimum");
  const Vector x = primal_from_dual(p, y);
  const Vector* x_star = nullptr;
  if (p.certificate()) x_star = &p.certificate()->x_star;
  if (!x_star) throw InvalidArgument("primal_dual_gap_bound: certificate with x_star required");
  return {0.5 * (x - *x_star).squaredNorm(), dual_value(p, y) - d_star};
}

}  // namespace dualcd
