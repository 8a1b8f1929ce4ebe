#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dualcd/sets.hpp"

namespace dualcd {

// One row per iterate. gap and primal_err are NaN when no reference optimum
// is available; theta is NaN for non-accelerated schemes.
struct TraceRecord {
  long k = 0;
  double d = 0.0;
  double gap = 0.0;
  double primal_err = 0.0;
  double theta = 0.0;
  int epoch = 0;
  long projections = 0;
};

struct Trace {
  std::string solver;
  std::string instance_id;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;

  static constexpr const char* kCsvHeader = "k,d,gap,primal_err,theta,epoch,projections";

  // Stable 17-significant-digit formatting so identical runs produce
  // byte-identical files.
  void to_csv(std::ostream& os) const;
};

// References used only for trace columns and tolerance stopping.
struct TraceRefs {
  std::optional<double> d_star;
  std::optional<Vector> x_star;
  bool record = true;
  // Keep x^k for k = 0..K in the result (used by the route-equivalence tests).
  bool keep_primal = false;
};

}  // namespace dualcd
