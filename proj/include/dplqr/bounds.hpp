#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dplqr/graph.hpp"
#include "dplqr/lqr.hpp"
#include "dplqr/sim.hpp"

namespace dplqr {

/// Smallest-positive-eigenvalue constant of the symmetrized closed-loop
/// matrices. Undefined when some grid matrix has a genuinely negative
/// eigenvalue or no positive one at all.
struct RhoLambdaReport {
  bool defined = false;
  double value = 0.0;
  int offending_t = -1;        // grid index of the first failure; -1 if none
  std::string reason;
};

RhoLambdaReport rho_lambda(const DirectedGraph& g, const GainTable& gains, int state_dim);

struct BoundsReport {
  RhoLambdaReport rho_lambda;
  double rho_L = 0.0;
  double rho_A = 0.0;
  double kappa_eps = 0.0;
  double v1 = 0.0;
  double contraction_margin = 0.0;   // min over t of 1 + c^2 rho_L dbar^2 - c rho_lambda
  std::optional<double> sigma;
  std::optional<double> v_bar;
  double v_bar_q = 0.0;              // the contraction factor gating v_bar
  std::string sigma_diagnosis;       // empty when sigma is defined
  bool first_term_zero_flag = false; // divergent sum c(t) with rho_lambda > 0
};

struct BoundInputs {
  ScheduleConstants consts;
  double rho_L = 0.0;
  double rho_A = 0.0;
  double rho_lambda = 0.0;
  double delta_bar = 0.0;
  double kappa = 0.0;
  int n_agents = 0;
  double v1 = 0.0;
  double c0 = 0.0;
};

/// A-priori envelope on E[V(t)]; nullopt with q reported when the contraction
/// condition q < 1 fails.
std::optional<double> v_bar(const BoundInputs& in, double* q_out = nullptr);

/// Error bound: exp-term * V(1) / denominator + 2(N-1) rho_A kappa dbar^2 C2 C3 Vbar.
std::optional<double> sigma_bound(const BoundInputs& in, std::string* diagnosis = nullptr);

/// One deterministic noise-free step from the initial states; returns V(1).
double v1(const SimConfig& cfg, const GainTable& gains);

struct Lemma4Envelope {
  std::vector<double> beta;   // beta_n = prod_{t<=n} (1 + c_t + t d_t) * a0
  double closed_bound = 0.0;  // exp(sum c_t + t d_t) * a0
};

Lemma4Envelope lemma4_envelope(const std::vector<double>& c_seq,
                               const std::vector<double>& d_seq, double a0,
                               int t_max);

BoundsReport compute_bounds(const SimConfig& cfg, const GainTable& gains,
                            const ScheduleConstants& consts);

}  // namespace dplqr
