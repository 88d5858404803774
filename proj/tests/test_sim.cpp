#include <doctest.h>

#include <cmath>

#include "dplqr/config.hpp"
#include "dplqr/paper_scenario.hpp"
#include "dplqr/sim.hpp"

using namespace dplqr;

namespace {

SimConfig scenario() { return parse_config_text(kPaperScenarioJson); }

GainTable table_for(const SimConfig& cfg) {
  return build_gain_table(*cfg.graph, cfg.weights, cfg.feasible, cfg.schedule,
                          cfg.horizon, cfg.t_max);
}

}  // namespace

TEST_CASE("consensus error of the reference initial states") {
  const SimConfig cfg = scenario();
  const auto [delta, v0] =
      consensus_error(cfg.initial_states, disagreement_projector(4));
  CHECK(v0 == doctest::Approx(4783.5).epsilon(1e-12));
  // projected rows sum to zero componentwise
  CHECK((delta.colwise().sum()).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS(consensus_error(cfg.initial_states, disagreement_projector(3)));
}

TEST_CASE("consensus is a fixed point of the update") {
  SimConfig cfg = scenario();
  cfg.noise_enabled = false;
  cfg.initial_states = Eigen::MatrixXd::Ones(4, 3) * 3.25;
  const GainTable gains = table_for(cfg);

  Eigen::MatrixXd states = cfg.initial_states;
  Eigen::MatrixXd noises = Eigen::MatrixXd::Zero(4, 3);
  CounterRng rng(1);
  const Eigen::VectorXd gap = step(states, noises, 0, gains, cfg, rng);
  CHECK(gap.cwiseAbs().maxCoeff() == 0.0);
  CHECK((states - cfg.initial_states).cwiseAbs().maxCoeff() == 0.0);
  CHECK(noises.isZero(0.0));
}

TEST_CASE("single noiseless step matches the hand formula") {
  // two agents exchanging scalar states: x_i <- x_i + c k (x_j - x_i)
  Eigen::MatrixXi a(2, 2);
  a << 0, 1, 1, 0;
  SimConfig cfg;
  cfg.graph = std::make_shared<DirectedGraph>(a);
  const WeightPair w(8.0 * Eigen::MatrixXd::Identity(1, 1),
                     2.0 * Eigen::MatrixXd::Identity(1, 1));
  cfg.weights = {w, w};
  cfg.feasible = {FeasibleWeightSet({w}), FeasibleWeightSet({w})};
  cfg.schedule = PowerLawSchedule(0.1, 1.3, 1.1);
  cfg.horizon = 2;
  cfg.t_max = 1;
  cfg.initial_states = Eigen::MatrixXd(2, 1);
  cfg.initial_states << 1.0, 5.0;
  cfg.noise_enabled = false;

  const GainTable gains = table_for(cfg);
  const double k = gains.gain(0, 0)(0, 0);
  CHECK(k == doctest::Approx(8.0 / (2.0 + 0.1 * 8.0)).epsilon(1e-12));

  Eigen::MatrixXd states = cfg.initial_states;
  Eigen::MatrixXd noises = Eigen::MatrixXd::Zero(2, 1);
  CounterRng rng(0);
  const Eigen::VectorXd gap = step(states, noises, 0, gains, cfg, rng);
  CHECK(gap(0) == doctest::Approx(4.0));
  CHECK(gap(1) == doctest::Approx(4.0));
  CHECK(states(0, 0) == doctest::Approx(1.0 + 0.1 * k * 4.0).epsilon(1e-14));
  CHECK(states(1, 0) == doctest::Approx(5.0 - 0.1 * k * 4.0).epsilon(1e-14));
}

TEST_CASE("trials are reproducible bit for bit") {
  const SimConfig cfg = scenario();
  const GainTable gains = table_for(cfg);
  const SimTrace a = run_trial(cfg, gains, 0);
  const SimTrace b = run_trial(cfg, gains, 0);
  for (int t = 0; t <= cfg.t_max; ++t) {
    CHECK((a.states[t] - b.states[t]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.noises[t] - b.noises[t]).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.lyapunov[t] == b.lyapunov[t]);
  }
  // different trial index diverges once noise kicks in
  const SimTrace c = run_trial(cfg, gains, 1);
  CHECK((a.states[5] - c.states[5]).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("noise-free run converges on the reference scenario") {
  SimConfig cfg = scenario();
  cfg.noise_enabled = false;
  const GainTable gains = table_for(cfg);
  const SimTrace trace = run_trial(cfg, gains, 0);
  CHECK(trace.lyapunov[0] == doctest::Approx(4783.5).epsilon(1e-12));
  CHECK(trace.lyapunov[120] == doctest::Approx(1.0053901675299899).epsilon(1e-9));
  for (double v : trace.lyapunov) CHECK(v <= 10.0 * trace.lyapunov[0]);
  for (const auto& eta : trace.noises) CHECK(eta.isZero(0.0));
}

TEST_CASE("singleton feasible sets yield an exact release") {
  SimConfig cfg = scenario();
  const WeightPair w = cfg.weights[0];
  cfg.feasible.assign(4, FeasibleWeightSet({w}));
  const GainTable gains = table_for(cfg);
  CHECK(gains.delta_hat == 0.0);

  const SimTrace noisy = run_trial(cfg, gains, 0);
  SimConfig quiet = cfg;
  quiet.noise_enabled = false;
  const SimTrace clean = run_trial(quiet, gains, 0);
  for (int t = 0; t <= cfg.t_max; ++t) {
    CHECK((noisy.states[t] - clean.states[t]).cwiseAbs().maxCoeff() == 0.0);
    CHECK(noisy.noises[t].isZero(0.0));
  }
  for (const auto& flags : noisy.exact_release) {
    for (char f : flags) CHECK(f == 1);
  }
}

TEST_CASE("recorded noises replay from the counter stream") {
  const SimConfig cfg = scenario();
  const GainTable gains = table_for(cfg);
  const int trial = 3;
  const SimTrace trace = run_trial(cfg, gains, trial);

  CounterRng rng(CounterRng::trial_key(cfg.seed, trial));
  const int n = cfg.state_dim();
  for (int t = 0; t < cfg.t_max; ++t) {
    for (int i = 0; i < cfg.num_agents(); ++i) {
      const double b = noise_scale(n, cfg.schedule.c(t), cfg.schedule.p(t),
                                   gains.sens(i, t), trace.gaps[t](i), cfg.epsilon);
      for (int k = 0; k < n; ++k) {
        const double draw = sample_laplace(b, rng.next_uniform());
        CHECK(trace.noises[t + 1](i, k) == draw);
      }
    }
  }
}

TEST_CASE("trace is recomputable from states, noises and gains") {
  const SimConfig cfg = scenario();
  const GainTable gains = table_for(cfg);
  const SimTrace trace = run_trial(cfg, gains, 0);
  const auto& adj = cfg.graph->adjacency();
  for (int t = 0; t < cfg.t_max; ++t) {
    const Eigen::MatrixXd received = trace.states[t] + trace.noises[t];
    for (int i = 0; i < 4; ++i) {
      Eigen::RowVectorXd agg = Eigen::RowVectorXd::Zero(3);
      for (int j = 0; j < 4; ++j) {
        if (adj(i, j) == 1) agg += received.row(j) - trace.states[t].row(i);
      }
      CHECK(std::abs(trace.gaps[t](i) - agg.cwiseAbs().maxCoeff()) < 1e-12);
      const Eigen::RowVectorXd next =
          trace.states[t].row(i) +
          cfg.schedule.c(t) * (gains.gain(i, t) * agg.transpose()).transpose();
      CHECK((next - trace.states[t + 1].row(i)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  // ledger covers exactly t = 0..t_max-1
  CHECK(static_cast<int>(trace.ledger.per_step().size()) == cfg.t_max);
}

TEST_CASE("monte carlo summaries") {
  SimConfig cfg = scenario();
  const GainTable gains = table_for(cfg);

  SUBCASE("one trial reproduces the trial curve exactly") {
    cfg.trials = 1;
    const MonteCarloSummary s = run_monte_carlo(cfg, gains);
    const SimTrace trace = run_trial(cfg, gains, 0);
    for (int t = 0; t <= cfg.t_max; ++t) {
      CHECK(s.mean_v[t] == trace.lyapunov[t]);
      CHECK(s.half_width[t] == 0.0);
    }
    CHECK(s.final_mean_v == trace.lyapunov[120]);
    CHECK(s.max_mean_v == doctest::Approx(4783.5));
  }

  SUBCASE("no-noise trials have zero spread") {
    cfg.noise_enabled = false;
    cfg.trials = 8;
    const MonteCarloSummary s = run_monte_carlo(cfg, gains);
    for (double hw : s.half_width) CHECK(hw == 0.0);
  }

  SUBCASE("serial reference matches the parallel path bit for bit") {
    cfg.trials = 16;
    const MonteCarloSummary par = run_monte_carlo(cfg, gains);
    const MonteCarloSummary ser = run_monte_carlo_serial(cfg, gains);
    REQUIRE(par.mean_v.size() == ser.mean_v.size());
    for (size_t t = 0; t < par.mean_v.size(); ++t) {
      CHECK(par.mean_v[t] == ser.mean_v[t]);
      CHECK(par.half_width[t] == ser.half_width[t]);
    }
  }

  SUBCASE("invalid trial count") {
    cfg.trials = 0;
    CHECK_THROWS(run_monte_carlo(cfg, gains));
  }
}
