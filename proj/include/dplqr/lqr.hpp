#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dplqr/graph.hpp"
#include "dplqr/schedules.hpp"

namespace dplqr {

/// One agent's (Q, R) cost weights. Q must be symmetric PSD, R symmetric PD.
struct WeightPair {
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;

  WeightPair(Eigen::MatrixXd q, Eigen::MatrixXd r);
  int dim() const { return static_cast<int>(Q.rows()); }
};

/// Finite nonempty candidate set an agent selects its pair from.
struct FeasibleWeightSet {
  std::vector<WeightPair> pairs;

  explicit FeasibleWeightSet(std::vector<WeightPair> ps);
  int dim() const { return pairs.front().dim(); }
};

/// First-step gain K of the horizon-T tracking LQR: the optimal first input is
/// u = c * K * sum_j a_ij (xhat_j - x_i). Zero matrix when d == 0 or T == 1.
Eigen::MatrixXd riccati_gain(const WeightPair& w, int horizon, int in_degree,
                             double c);

/// Independent brute-force check: solves the stacked quadratic program over the
/// whole control sequence by dense factorization. Refuses T*n > 64.
Eigen::MatrixXd qp_oracle_gain(const WeightPair& w, int horizon, int in_degree,
                               double c);

/// Gain sensitivity: max over ordered candidate pairs of the induced
/// infinity-norm of the gain difference at this (T, d, c).
double sensitivity(const FeasibleWeightSet& feasible, int horizon, int in_degree,
                   double c);

/// Per-agent, per-time gains and sensitivities over t = 0..t_max, the c -> 0
/// limit gains, and the suprema delta_hat, delta_bar.
struct GainTable {
  int horizon = 1;
  int t_max = 0;
  std::vector<int> in_degrees;
  // indexed [agent][t]; limit entries hold the c -> 0 evaluation
  std::vector<std::vector<Eigen::MatrixXd>> gains;
  std::vector<std::vector<double>> sensitivities;
  std::vector<Eigen::MatrixXd> limit_gains;
  std::vector<double> limit_sensitivities;
  double delta_hat = 0.0;
  double delta_bar = 0.0;

  const Eigen::MatrixXd& gain(int agent, int t) const { return gains[agent][t]; }
  double sens(int agent, int t) const { return sensitivities[agent][t]; }
};

GainTable build_gain_table(const DirectedGraph& g,
                           const std::vector<WeightPair>& weights,
                           const std::vector<FeasibleWeightSet>& feasible,
                           const PowerLawSchedule& sched, int horizon, int t_max);

}  // namespace dplqr
