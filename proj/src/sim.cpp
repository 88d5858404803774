#include "dplqr/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dplqr {

std::pair<Eigen::MatrixXd, double> consensus_error(const Eigen::MatrixXd& states,
                                                   const Eigen::MatrixXd& projector) {
  if (projector.rows() != states.rows()) {
    throw std::invalid_argument("projector/state dimension mismatch");
  }
  Eigen::MatrixXd delta = projector * states;
  return {delta, delta.squaredNorm()};
}

Eigen::VectorXd step(Eigen::MatrixXd& states, Eigen::MatrixXd& noises, int t,
                     const GainTable& gains, const SimConfig& cfg, CounterRng& rng) {
  const int n_agents = cfg.num_agents();
  const int n = cfg.state_dim();
  const auto& adj = cfg.graph->adjacency();
  const double c = cfg.schedule.c(t);
  const double p = cfg.schedule.p(t);

  const Eigen::MatrixXd received = states + noises;  // xhat, same slice for all

  Eigen::VectorXd gap(n_agents);
  Eigen::MatrixXd next_states(n_agents, n);
  for (int i = 0; i < n_agents; ++i) {
    Eigen::RowVectorXd agg = Eigen::RowVectorXd::Zero(n);
    for (int j = 0; j < n_agents; ++j) {
      if (adj(i, j) == 1) agg += received.row(j) - states.row(i);
    }
    gap(i) = agg.cwiseAbs().maxCoeff();
    next_states.row(i) =
        states.row(i) + c * (gains.gain(i, t) * agg.transpose()).transpose();
  }

  Eigen::MatrixXd next_noises = Eigen::MatrixXd::Zero(n_agents, n);
  if (cfg.noise_enabled) {
    // agent-major, component-minor draw order; one uniform per component
    for (int i = 0; i < n_agents; ++i) {
      const double b = noise_scale(n, c, p, gains.sens(i, t), gap(i), cfg.epsilon);
      for (int k = 0; k < n; ++k) {
        next_noises(i, k) = sample_laplace(b, rng.next_uniform());
      }
    }
  }
  states = std::move(next_states);
  noises = std::move(next_noises);
  return gap;
}

SimTrace run_trial(const SimConfig& cfg, const GainTable& gains, int trial_index) {
  const int n_agents = cfg.num_agents();
  const int n = cfg.state_dim();
  const Eigen::MatrixXd projector = disagreement_projector(n_agents);
  CounterRng rng(CounterRng::trial_key(cfg.seed, static_cast<std::uint64_t>(trial_index)));

  SimTrace trace;
  trace.states.reserve(cfg.t_max + 1);
  trace.noises.reserve(cfg.t_max + 1);
  Eigen::MatrixXd states = cfg.initial_states;
  Eigen::MatrixXd noises = Eigen::MatrixXd::Zero(n_agents, n);  // eta(0) = 0

  trace.states.push_back(states);
  trace.noises.push_back(noises);
  trace.lyapunov.push_back(consensus_error(states, projector).second);

  for (int t = 0; t < cfg.t_max; ++t) {
    std::vector<char> exact(n_agents, 0);
    for (int i = 0; i < n_agents; ++i) {
      // flagged before stepping: gap depends on the pre-step slice
      Eigen::RowVectorXd agg = Eigen::RowVectorXd::Zero(n);
      for (int j = 0; j < n_agents; ++j) {
        if (cfg.graph->adjacency()(i, j) == 1) {
          agg += (states.row(j) + noises.row(j)) - states.row(i);
        }
      }
      if (cfg.noise_enabled && gains.sens(i, t) * agg.cwiseAbs().maxCoeff() == 0.0) {
        exact[i] = 1;
      }
    }
    trace.gaps.push_back(step(states, noises, t, gains, cfg, rng));
    trace.exact_release.push_back(std::move(exact));
    trace.ledger.record_step(t, cfg.epsilon, cfg.schedule);
    trace.states.push_back(states);
    trace.noises.push_back(noises);
    trace.lyapunov.push_back(consensus_error(states, projector).second);
  }
  return trace;
}

namespace {

MonteCarloSummary summarize(const Eigen::MatrixXd& v_by_trial) {
  const int trials = static_cast<int>(v_by_trial.rows());
  const int steps = static_cast<int>(v_by_trial.cols());
  MonteCarloSummary s;
  s.trials = trials;
  s.mean_v.resize(steps);
  s.half_width.resize(steps);
  for (int t = 0; t < steps; ++t) {
    const double mean = v_by_trial.col(t).mean();
    s.mean_v[t] = mean;
    double var = 0.0;
    if (trials > 1) {
      var = (v_by_trial.col(t).array() - mean).square().sum() / (trials - 1);
    }
    s.half_width[t] = 1.96 * std::sqrt(var / trials);
  }
  s.final_mean_v = s.mean_v.back();
  s.max_mean_v = *std::max_element(s.mean_v.begin(), s.mean_v.end());
  return s;
}

}  // namespace

MonteCarloSummary run_monte_carlo(const SimConfig& cfg, const GainTable& gains) {
  if (cfg.trials < 1) throw std::invalid_argument("trial count must be >= 1");
  Eigen::MatrixXd v_by_trial(cfg.trials, cfg.t_max + 1);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < cfg.trials; ++r) {
    const SimTrace trace = run_trial(cfg, gains, r);
    for (int t = 0; t <= cfg.t_max; ++t) v_by_trial(r, t) = trace.lyapunov[t];
  }
  return summarize(v_by_trial);
}

MonteCarloSummary run_monte_carlo_serial(const SimConfig& cfg, const GainTable& gains) {
  if (cfg.trials < 1) throw std::invalid_argument("trial count must be >= 1");
  Eigen::MatrixXd v_by_trial(cfg.trials, cfg.t_max + 1);
  for (int r = 0; r < cfg.trials; ++r) {
    const SimTrace trace = run_trial(cfg, gains, r);
    for (int t = 0; t <= cfg.t_max; ++t) v_by_trial(r, t) = trace.lyapunov[t];
  }
  return summarize(v_by_trial);
}

}  // namespace dplqr
