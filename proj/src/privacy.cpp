#include "dplqr/privacy.hpp"

#include <cmath>
#include <stdexcept>

namespace dplqr {

WeightPair normalize_pair(const WeightPair& w) {
  const double tau = w.Q.trace() + w.R.trace();
  if (!(tau > 0.0)) throw std::invalid_argument("tr(Q + R) must be > 0");
  return WeightPair(w.Q / tau, w.R / tau);
}

namespace {

bool pairs_match(const WeightPair& a, const WeightPair& b) {
  const WeightPair na = normalize_pair(a);
  const WeightPair nb = normalize_pair(b);
  return (na.Q - nb.Q).cwiseAbs().maxCoeff() <= 1e-12 &&
         (na.R - nb.R).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

bool are_adjacent(const WeightDatabase& a, const WeightDatabase& b) {
  const size_t n = a.entries.size();
  if (n != b.entries.size()) {
    throw std::invalid_argument("databases have different lengths");
  }
  for (size_t i = 0; i < n; ++i) {
    if (a.entries[i].dim() != b.entries[i].dim()) {
      throw std::invalid_argument("databases have mismatched dimensions");
    }
  }
  // witness search: the distinguished agent's own pair is unconstrained
  for (size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (size_t j = 0; j < n && ok; ++j) {
      if (j != i && !pairs_match(a.entries[j], b.entries[j])) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

double noise_scale(int n, double c_t, double p_t, double delta_it, double gap_inf,
                   double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (n < 0 || c_t < 0.0 || p_t < 0.0 || delta_it < 0.0 || gap_inf < 0.0) {
    throw std::invalid_argument("noise_scale arguments must be nonnegative");
  }
  return n * c_t * p_t * delta_it * gap_inf / eps;
}

double sample_laplace(double b, double u) {
  if (b < 0.0) throw std::invalid_argument("scale must be >= 0");
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("u must lie in (0,1)");
  if (b == 0.0) return 0.0;
  const double s = u - 0.5;
  const double sgn = (s > 0.0) ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
  return -b * sgn * std::log1p(-2.0 * std::abs(s));
}

void PrivacyLedger::record_step(int t, double eps, const PowerLawSchedule& sched) {
  if (t != steps_recorded()) {
    throw std::logic_error("ledger steps must be recorded in time order");
  }
  const double step = eps / sched.p(t);
  per_step_.push_back(step);
  cumulative_ += step;
}

double ledger_tail_bound(double eps, double gamma, int from_t) {
  if (!(gamma > 1.0)) return kInfiniteBudget;
  return eps * std::pow(static_cast<double>(from_t), 1.0 - gamma) / (gamma - 1.0);
}

}  // namespace dplqr
