#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "dplqr/graph.hpp"
#include "dplqr/lqr.hpp"
#include "dplqr/privacy.hpp"
#include "dplqr/rng.hpp"
#include "dplqr/schedules.hpp"

namespace dplqr {

struct SimConfig {
  std::shared_ptr<DirectedGraph> graph;
  std::vector<WeightPair> weights;            // selected pair per agent
  std::vector<FeasibleWeightSet> feasible;    // candidate set per agent
  PowerLawSchedule schedule;
  double epsilon = 1.0;
  int horizon = 1;            // LQR horizon T
  int t_max = 1;              // simulated steps
  Eigen::MatrixXd initial_states;  // N x n
  int trials = 1;
  std::uint64_t seed = 0;
  bool noise_enabled = true;

  int num_agents() const { return graph->num_agents(); }
  int state_dim() const { return static_cast<int>(initial_states.cols()); }
};

/// Full record of one trial. states[t] and noises[t] are N x n; noises[t] is
/// the perturbation applied to transmissions at time t (noises[0] == 0).
struct SimTrace {
  std::vector<Eigen::MatrixXd> states;
  std::vector<Eigen::MatrixXd> noises;
  std::vector<Eigen::VectorXd> gaps;       // per-agent inf-norm aggregated gap at t
  std::vector<double> lyapunov;            // V(t)
  std::vector<std::vector<char>> exact_release;  // noise scale was 0 at (t, agent)
  PrivacyLedger ledger;
};

struct MonteCarloSummary {
  std::vector<double> mean_v;         // per t
  std::vector<double> half_width;     // 95% normal CI per t
  double max_mean_v = 0.0;
  double final_mean_v = 0.0;
  int trials = 0;
};

/// delta = (P kron I_n) X and V = delta' delta, with X given row-per-agent.
std::pair<Eigen::MatrixXd, double> consensus_error(const Eigen::MatrixXd& states,
                                                   const Eigen::MatrixXd& projector);

/// One synchronous update of all agents: exchange perturbed states, apply the
/// LQR input, then draw next-step noise. Returns per-agent gaps at time t.
Eigen::VectorXd step(Eigen::MatrixXd& states, Eigen::MatrixXd& noises, int t,
                     const GainTable& gains, const SimConfig& cfg, CounterRng& rng);

SimTrace run_trial(const SimConfig& cfg, const GainTable& gains, int trial_index);

MonteCarloSummary run_monte_carlo(const SimConfig& cfg, const GainTable& gains);

/// Serial reference for the OpenMP trial loop; must produce identical output.
MonteCarloSummary run_monte_carlo_serial(const SimConfig& cfg, const GainTable& gains);

}  // namespace dplqr
