#include "dplqr/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dplqr {
namespace {

Eigen::MatrixXd kron_identity(const Eigen::MatrixXd& a, int n) {
  // a kron I_n
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows * n, cols * n);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (a(i, j) != 0.0) {
        out.block(i * n, j * n, n, n) =
            a(i, j) * Eigen::MatrixXd::Identity(n, n);
      }
    }
  }
  return out;
}

Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks) {
  int total = 0;
  for (const auto& b : blocks) total += static_cast<int>(b.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(total, total);
  int at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += static_cast<int>(b.rows());
  }
  return out;
}

// exponent rho_L dbar^2 C1 - rho_lambda * sum c(t); -inf when the c-series
// diverges and rho_lambda > 0
double exp_term(const BoundInputs& in) {
  const double pos = in.rho_L * in.delta_bar * in.delta_bar * in.consts.c1;
  if (in.rho_lambda == 0.0) return std::exp(pos);
  if (!in.consts.sum_c_finite) {
    return in.rho_lambda > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::exp(pos - in.rho_lambda * in.consts.sum_c);
}

double denominator(const BoundInputs& in) {
  return 1.0 + in.c0 * in.c0 * in.rho_L * in.delta_bar * in.delta_bar -
         in.c0 * in.rho_lambda;
}

}  // namespace

RhoLambdaReport rho_lambda(const DirectedGraph& g, const GainTable& gains,
                           int state_dim) {
  const int n_agents = g.num_agents();
  const Eigen::MatrixXd pbar = kron_identity(disagreement_projector(n_agents), state_dim);
  const Eigen::MatrixXd lbar = kron_identity(laplacian(g), state_dim);

  RhoLambdaReport rep;
  double best = std::numeric_limits<double>::infinity();
  const int grid = gains.t_max + 1;
  for (int idx = 0; idx <= grid; ++idx) {  // last index: c -> 0 limit gains
    std::vector<Eigen::MatrixXd> blocks;
    blocks.reserve(n_agents);
    for (int i = 0; i < n_agents; ++i) {
      blocks.push_back(idx < grid ? gains.gain(i, idx) : gains.limit_gains[i]);
    }
    const Eigen::MatrixXd m = pbar * block_diagonal(blocks) * lbar;
    const Eigen::MatrixXd s = m + m.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double nrm = ev.cwiseAbs().maxCoeff();
    if (ev.minCoeff() < -1e-9 * nrm) {
      rep.defined = false;
      rep.offending_t = idx;
      rep.reason = "negative eigenvalue in symmetrized closed-loop matrix";
      return rep;
    }
    double lambda0 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < ev.size(); ++k) {
      if (ev(k) > 1e-9 * nrm) lambda0 = std::min(lambda0, ev(k));
    }
    if (!std::isfinite(lambda0)) {
      rep.defined = false;
      rep.offending_t = idx;
      rep.reason = "no positive eigenvalue in symmetrized closed-loop matrix";
      return rep;
    }
    best = std::min(best, lambda0);
  }
  rep.defined = true;
  rep.value = best;
  return rep;
}

std::optional<double> v_bar(const BoundInputs& in, double* q_out) {
  const double e = exp_term(in);
  const double q = 2.0 * (in.n_agents - 1) * in.rho_A * in.kappa * in.delta_bar *
                   in.delta_bar * in.consts.c2 * e;
  if (q_out != nullptr) *q_out = q;
  const double den = denominator(in);
  if (!(q < 1.0) || !(den > 0.0)) return std::nullopt;
  return (1.0 / (1.0 - q)) * e / den * in.v1;
}

std::optional<double> sigma_bound(const BoundInputs& in, std::string* diagnosis) {
  const double den = denominator(in);
  if (!(den > 0.0)) {
    if (diagnosis) *diagnosis = "first-term denominator nonpositive";
    return std::nullopt;
  }
  double q = 0.0;
  const auto vb = v_bar(in, &q);
  if (!vb) {
    if (diagnosis) {
      *diagnosis = "a-priori envelope undefined: contraction factor q = " +
                   std::to_string(q) + " >= 1";
    }
    return std::nullopt;
  }
  const double first = exp_term(in) / den * in.v1;
  const double second = 2.0 * (in.n_agents - 1) * in.rho_A * in.kappa *
                        in.delta_bar * in.delta_bar * in.consts.c2 *
                        in.consts.c3 * *vb;
  return first + second;
}

double v1(const SimConfig& cfg, const GainTable& gains) {
  SimConfig det = cfg;
  det.noise_enabled = false;
  Eigen::MatrixXd states = cfg.initial_states;
  Eigen::MatrixXd noises =
      Eigen::MatrixXd::Zero(cfg.num_agents(), cfg.state_dim());
  CounterRng rng(0);
  step(states, noises, 0, gains, det, rng);
  return consensus_error(states, disagreement_projector(cfg.num_agents())).second;
}

Lemma4Envelope lemma4_envelope(const std::vector<double>& c_seq,
                               const std::vector<double>& d_seq, double a0,
                               int t_max) {
  if (static_cast<int>(c_seq.size()) < t_max + 1 ||
      static_cast<int>(d_seq.size()) < t_max + 1) {
    throw std::invalid_argument("sequences must cover t = 0..t_max");
  }
  Lemma4Envelope env;
  env.beta.resize(t_max + 1);
  env.beta[0] = a0;
  double exp_sum = 0.0;
  for (int t = 1; t <= t_max; ++t) {
    if (c_seq[t] < 0.0 || d_seq[t] < 0.0) {
      throw std::invalid_argument("c_n and d_n must be nonnegative");
    }
    env.beta[t] = (1.0 + c_seq[t] + t * d_seq[t]) * env.beta[t - 1];
    exp_sum += c_seq[t] + t * d_seq[t];
  }
  env.closed_bound = std::exp(exp_sum) * a0;
  return env;
}

BoundsReport compute_bounds(const SimConfig& cfg, const GainTable& gains,
                            const ScheduleConstants& consts) {
  BoundsReport rep;
  const SpectralConstants sc = spectral_constants(*cfg.graph);
  rep.rho_L = sc.rho_L;
  rep.rho_A = sc.rho_A;
  rep.kappa_eps = kappa_epsilon(cfg.state_dim(), cfg.num_agents(), gains.delta_hat,
                                cfg.epsilon);
  rep.rho_lambda = rho_lambda(*cfg.graph, gains, cfg.state_dim());
  rep.v1 = v1(cfg, gains);

  const double rl = rep.rho_lambda.defined ? rep.rho_lambda.value : 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t <= gains.t_max; ++t) {
    const double c = cfg.schedule.c(t);
    margin = std::min(margin, 1.0 + c * c * rep.rho_L * gains.delta_bar *
                                        gains.delta_bar - c * rl);
  }
  rep.contraction_margin = margin;

  if (!rep.rho_lambda.defined) {
    rep.sigma_diagnosis = "rho_lambda undefined: " + rep.rho_lambda.reason;
    return rep;
  }

  BoundInputs in;
  in.consts = consts;
  in.rho_L = rep.rho_L;
  in.rho_A = rep.rho_A;
  in.rho_lambda = rl;
  in.delta_bar = gains.delta_bar;
  in.kappa = rep.kappa_eps;
  in.n_agents = cfg.num_agents();
  in.v1 = rep.v1;
  in.c0 = cfg.schedule.c(0);
  rep.first_term_zero_flag = !consts.sum_c_finite && rl > 0.0;

  rep.v_bar = v_bar(in, &rep.v_bar_q);
  rep.sigma = sigma_bound(in, &rep.sigma_diagnosis);
  if (rep.sigma) rep.sigma_diagnosis.clear();
  return rep;
}

}  // namespace dplqr
