#pragma once

#include <optional>
#include <string>

namespace dplqr {

/// The designed sequences c(t) = alpha/(t+1)^beta and p(t) = (t+1)^gamma.
struct PowerLawSchedule {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;

  PowerLawSchedule() = default;
  PowerLawSchedule(double a, double b, double g);

  double c(int t) const;
  double p(int t) const;
};

/// Convergence constants of a schedule. C3 and the series sums depend on
/// quantities computed elsewhere (gain bounds, spectral constants).
struct ScheduleConstants {
  double c1 = 0.0;        // sum of c^2(t)
  double c2 = 0.0;        // sum of t c^2(t) c^2(t-1) p^2(t-1)
  double c3 = 0.0;        // sup over t of the tail product
  double kappa_eps = 0.0;
  double sum_c = 0.0;           // sum of c(t); +inf marker when divergent
  bool sum_c_finite = true;
};

struct AssumptionReport {
  bool a2 = false;          // sum 1/p(t) finite: gamma > 1
  bool a3a = false;         // sum c^2(t) finite: 2 beta > 1
  bool a3b = false;         // kappa c^2(t) p^2(t) <= 1 for all t
  bool a3c = false;         // sum t c^2 c^2 p^2 finite: 1 - 4 beta + 2 gamma < -1
  bool a4 = false;          // 1 + c^2 rho_L dbar^2 - c rho_lambda > 0 for all t
  bool l2_footnote = false; // informational: {c(t) p(t)} in l2, i.e. 2(beta - gamma) > 1
  double a3b_worst = 0.0;   // max over t of kappa c^2(t) p^2(t)
  double a4_margin = 0.0;   // min over the sweep of 1 + c^2 rho_L dbar^2 - c rho_lambda

  bool blocking_ok() const { return a2 && a3a && a3b && a3c && a4; }
};

double kappa_epsilon(int n, int n_agents, double delta_hat, double eps);

AssumptionReport validate_assumptions(const PowerLawSchedule& sched, double kappa,
                                      double rho_L, double rho_lambda,
                                      double delta_bar, int t_check);

/// Partial sum plus integral tail; the returned value is an upper estimate.
double compute_C1(const PowerLawSchedule& sched, double precision);
double compute_C2(const PowerLawSchedule& sched, double precision);
double compute_C3(const PowerLawSchedule& sched, double rho_L, double rho_lambda,
                  double delta_bar, double precision);

/// Sum of c(t) with upper tail bound; nullopt when the series diverges.
std::optional<double> compute_sum_c(const PowerLawSchedule& sched, double precision);

/// Bundles all schedule constants; divergent series are stored as +inf.
ScheduleConstants compute_constants(const PowerLawSchedule& sched, double kappa,
                                    double rho_L, double rho_lambda,
                                    double delta_bar, double precision = 1e-8);

}  // namespace dplqr
