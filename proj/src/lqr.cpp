#include "dplqr/lqr.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dplqr {
namespace {

constexpr double kLimitC = 1e-12;  // numerical stand-in for the c -> 0 limit

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + " must be square");
  const double skew = (m - m.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (skew > 1e-9 * scale) {
    throw std::invalid_argument(std::string(what) + " must be symmetric");
  }
  return 0.5 * (m + m.transpose());
}

double induced_inf_norm(const Eigen::MatrixXd& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

}  // namespace

WeightPair::WeightPair(Eigen::MatrixXd q, Eigen::MatrixXd r)
    : Q(std::move(q)), R(std::move(r)) {
  Q = symmetrized(Q, "Q");
  R = symmetrized(R, "R");
  if (Q.rows() != R.rows()) throw std::invalid_argument("Q and R dimensions differ");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eq(Q);
  if (eq.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("Q must be positive semidefinite");
  }
  if (eq.eigenvalues().minCoeff() < 0.0) {
    // clamp rounding-level negatives to zero
    Eigen::VectorXd ev = eq.eigenvalues().cwiseMax(0.0);
    Q = eq.eigenvectors() * ev.asDiagonal() * eq.eigenvectors().transpose();
    Q = 0.5 * (Q + Q.transpose());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> er(R);
  if (er.eigenvalues().minCoeff() < 1e-10) {
    throw std::invalid_argument("R must be positive definite");
  }
}

FeasibleWeightSet::FeasibleWeightSet(std::vector<WeightPair> ps) : pairs(std::move(ps)) {
  if (pairs.empty()) throw std::invalid_argument("feasible set must be nonempty");
  for (const auto& p : pairs) {
    if (p.dim() != pairs.front().dim()) {
      throw std::invalid_argument("feasible set dimensions differ");
    }
  }
}

Eigen::MatrixXd riccati_gain(const WeightPair& w, int horizon, int in_degree,
                             double c) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (in_degree < 0) throw std::invalid_argument("in-degree must be >= 0");
  if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
  const int n = w.dim();
  if (in_degree == 0 || horizon == 1) return Eigen::MatrixXd::Zero(n, n);

  const Eigen::MatrixXd qtil = c * in_degree * w.Q;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);  // P_T = 0
  for (int k = horizon - 1; k >= 1; --k) {
    const Eigen::MatrixXd gain = (w.R + p).llt().solve(p);  // (R+P)^{-1} P
    p = qtil + p - p * gain;
    p = 0.5 * (p + p.transpose());
    assert(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(p).eigenvalues().minCoeff() >=
           -1e-10);
  }
  return (w.R + p).llt().solve(p) / (c * in_degree);
}

double sensitivity(const FeasibleWeightSet& feasible, int horizon, int in_degree,
                   double c) {
  std::vector<Eigen::MatrixXd> gains;
  gains.reserve(feasible.pairs.size());
  for (const auto& w : feasible.pairs) {
    gains.push_back(riccati_gain(w, horizon, in_degree, c));
  }
  double worst = 0.0;
  for (const auto& a : gains) {
    for (const auto& b : gains) {
      worst = std::max(worst, induced_inf_norm(a - b));
    }
  }
  return worst;
}

GainTable build_gain_table(const DirectedGraph& g,
                           const std::vector<WeightPair>& weights,
                           const std::vector<FeasibleWeightSet>& feasible,
                           const PowerLawSchedule& sched, int horizon, int t_max) {
  const int n_agents = g.num_agents();
  if (static_cast<int>(weights.size()) != n_agents ||
      static_cast<int>(feasible.size()) != n_agents) {
    throw std::invalid_argument("per-agent inputs must have one entry per agent");
  }
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (!has_spanning_tree(g)) {
    throw std::invalid_argument("graph has no directed spanning tree");
  }

  GainTable table;
  table.horizon = horizon;
  table.t_max = t_max;
  table.in_degrees.resize(n_agents);
  table.gains.assign(n_agents, std::vector<Eigen::MatrixXd>(t_max + 1));
  table.sensitivities.assign(n_agents, std::vector<double>(t_max + 1, 0.0));
  table.limit_gains.resize(n_agents);
  table.limit_sensitivities.assign(n_agents, 0.0);
  for (int i = 0; i < n_agents; ++i) table.in_degrees[i] = g.in_degree(i);

#pragma omp parallel for collapse(2) schedule(dynamic)
  for (int i = 0; i < n_agents; ++i) {
    for (int t = 0; t <= t_max; ++t) {
      const double c = sched.c(t);
      table.gains[i][t] = riccati_gain(weights[i], horizon, table.in_degrees[i], c);
      table.sensitivities[i][t] = sensitivity(feasible[i], horizon, table.in_degrees[i], c);
    }
  }
  for (int i = 0; i < n_agents; ++i) {
    table.limit_gains[i] = riccati_gain(weights[i], horizon, table.in_degrees[i], kLimitC);
    table.limit_sensitivities[i] = sensitivity(feasible[i], horizon, table.in_degrees[i], kLimitC);
  }

  double dhat = 0.0;
  double dbar = 0.0;
  for (int i = 0; i < n_agents; ++i) {
    for (int t = 0; t <= t_max; ++t) {
      dhat = std::max(dhat, table.sensitivities[i][t]);
      dbar = std::max(dbar, spectral_norm(table.gains[i][t]));
    }
    dhat = std::max(dhat, table.limit_sensitivities[i]);
    dbar = std::max(dbar, spectral_norm(table.limit_gains[i]));
  }
  table.delta_hat = dhat;
  table.delta_bar = dbar;
  return table;
}

}  // namespace dplqr
