#pragma once

#include <limits>
#include <vector>

#include "dplqr/lqr.hpp"
#include "dplqr/schedules.hpp"

namespace dplqr {

/// One weight pair per agent; the protected database.
struct WeightDatabase {
  std::vector<WeightPair> entries;
};

/// Rescales a pair so that tr(Q + R) = 1.
WeightPair normalize_pair(const WeightPair& w);

/// Adjacency of weight databases: some agent i exists such that every other
/// agent's pair matches after trace normalization. Identical databases are
/// adjacent (any i witnesses).
bool are_adjacent(const WeightDatabase& a, const WeightDatabase& b);

/// Laplace scale n * c(t) * p(t) * Delta_{i,t} * gap / eps.
double noise_scale(int n, double c_t, double p_t, double delta_it, double gap_inf,
                   double eps);

/// Inverse-CDF Laplace draw from a single uniform in (0,1). b = 0 degenerates
/// to the point mass at zero.
double sample_laplace(double b, double u);

/// Time-ordered record of per-step privacy expenditure eps/p(t).
class PrivacyLedger {
public:
  void record_step(int t, double eps, const PowerLawSchedule& sched);

  const std::vector<double>& per_step() const { return per_step_; }
  double cumulative() const { return cumulative_; }
  int steps_recorded() const { return static_cast<int>(per_step_.size()); }

private:
  std::vector<double> per_step_;
  double cumulative_ = 0.0;
};

/// Upper bound on sum_{t >= from_t} eps/(t+1)^gamma; infinity when gamma <= 1.
double ledger_tail_bound(double eps, double gamma, int from_t);

inline constexpr double kInfiniteBudget = std::numeric_limits<double>::infinity();

}  // namespace dplqr
