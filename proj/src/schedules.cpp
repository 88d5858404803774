#include "dplqr/schedules.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dplqr {

PowerLawSchedule::PowerLawSchedule(double a, double b, double g)
    : alpha(a), beta(b), gamma(g) {
  if (!(alpha > 0.0)) throw std::invalid_argument("schedule alpha must be > 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("schedule beta must be >= 0");
  if (!(gamma >= 0.0)) throw std::invalid_argument("schedule gamma must be >= 0");
}

double PowerLawSchedule::c(int t) const {
  return alpha / std::pow(static_cast<double>(t + 1), beta);
}

double PowerLawSchedule::p(int t) const {
  return std::pow(static_cast<double>(t + 1), gamma);
}

double kappa_epsilon(int n, int n_agents, double delta_hat, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (n_agents < 2) throw std::invalid_argument("need N >= 2");
  const double nd = static_cast<double>(n);
  return 4.0 * nd * nd * nd * n_agents * (n_agents - 1) * delta_hat * delta_hat /
         (eps * eps);
}

AssumptionReport validate_assumptions(const PowerLawSchedule& sched, double kappa,
                                      double rho_L, double rho_lambda,
                                      double delta_bar, int t_check) {
  AssumptionReport rep;
  rep.a2 = sched.gamma > 1.0;
  rep.a3a = 2.0 * sched.beta > 1.0;
  rep.a3c = 1.0 - 4.0 * sched.beta + 2.0 * sched.gamma < -1.0;
  rep.l2_footnote = 2.0 * (sched.beta - sched.gamma) > 1.0;

  // kappa c^2(t) p^2(t) = kappa alpha^2 (t+1)^{2(gamma-beta)}: monotone in t,
  // so the sup sits at t = 0 when beta >= gamma and is unbounded otherwise.
  const double at0 = kappa * sched.c(0) * sched.c(0) * sched.p(0) * sched.p(0);
  if (sched.beta >= sched.gamma) {
    rep.a3b_worst = at0;
    rep.a3b = at0 <= 1.0;
  } else {
    rep.a3b_worst = std::numeric_limits<double>::infinity();
    rep.a3b = kappa == 0.0;
  }

  // a4 positivity sweep; c(t) -> 0 sends the expression to 0 > -1, so only
  // small t can violate it.
  double margin = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (int t = 0; t <= t_check; ++t) {
    const double c = sched.c(t);
    const double f = 1.0 + c * c * rho_L * delta_bar * delta_bar - c * rho_lambda;
    margin = std::min(margin, f);
    if (!(f > 0.0)) ok = false;
  }
  rep.a4 = ok;
  rep.a4_margin = margin;
  return rep;
}

double compute_C1(const PowerLawSchedule& sched, double precision) {
  const double e = 2.0 * sched.beta;
  if (!(e > 1.0)) {
    throw std::invalid_argument("sum c^2(t) diverges: need 2*beta > 1");
  }
  const double a2 = sched.alpha * sched.alpha;
  double sum = 0.0;
  // tail beyond t*: a^2 * integral_{t*}^inf (s+1)^{-e} ds = a^2 (t*+1)^{1-e}/(e-1)
  for (int t = 0;; ++t) {
    const double ct = sched.c(t);
    sum += ct * ct;
    const double tail = a2 * std::pow(static_cast<double>(t + 1), 1.0 - e) / (e - 1.0);
    if (tail < precision || t > 50'000'000) return sum + tail;
  }
}

double compute_C2(const PowerLawSchedule& sched, double precision) {
  const double e = 1.0 - 4.0 * sched.beta + 2.0 * sched.gamma;
  if (!(e < -1.0)) {
    throw std::invalid_argument(
        "sum t c^2(t) c^2(t-1) p^2(t-1) diverges: need 1 - 4*beta + 2*gamma < -1");
  }
  const double a4 = std::pow(sched.alpha, 4.0);
  double sum = 0.0;
  for (int t = 1;; ++t) {
    const double ct = sched.c(t);
    const double cm = sched.c(t - 1);
    const double pm = sched.p(t - 1);
    sum += t * ct * ct * cm * cm * pm * pm;
    // summand <= a^4 t^{1+2g-4b} for t >= 1; integral tail from t
    const double tail = a4 * std::pow(static_cast<double>(t), e + 1.0) / (-e - 1.0);
    if (tail < precision || t > 50'000'000) return sum + tail;
  }
}

double compute_C3(const PowerLawSchedule& sched, double rho_L, double rho_lambda,
                  double delta_bar, double precision) {
  const double rld2 = rho_L * delta_bar * delta_bar;
  const double inf = std::numeric_limits<double>::infinity();
  constexpr int kCap = 50'000'000;

  auto factor = [&](int t) {
    const double c = sched.c(t);
    return 1.0 + c * c * rld2 - c * rho_lambda;
  };
  auto require_positive = [&](double f) {
    if (!(f > 0.0)) {
      throw std::invalid_argument("tail product factor <= 0 (a4 positivity violated)");
    }
  };

  if (rld2 == 0.0) {
    if (rho_lambda <= 0.0) return 1.0;  // every factor is exactly 1
    // every factor lies in (0, 1): the sup is the t -> infinity limit, 1
    for (int t = 0; t <= 1'000'000; ++t) {
      const double f = factor(t);
      require_positive(f);
      if (1.0 - f < 1e-12) break;
    }
    return 1.0;
  }

  if (rho_lambda <= 0.0) {
    // nonnegative log terms; partial sum plus integral tail on sum c^2
    if (!(2.0 * sched.beta > 1.0)) return inf;
    double log_sum = 0.0;
    for (int t = 0;; ++t) {
      const double f = factor(t);
      require_positive(f);
      log_sum += std::log(f);
      const double tail = (sched.alpha * sched.alpha * rld2 - sched.alpha * rho_lambda) *
                          std::pow(static_cast<double>(t + 1), 1.0 - 2.0 * sched.beta) /
                          (2.0 * sched.beta - 1.0);
      if (tail < precision) return std::exp(log_sum + tail);
      if (t > kCap) return inf;
    }
  }

  // rho_lambda > 0: once c(t) < rho_lambda / rld2 every factor is < 1, so
  // truncating the product there only rounds the bound upward.
  std::vector<double> logs;
  const double c_cross = rho_lambda / rld2;
  int t_star = -1;
  for (int t = 0; t <= kCap; ++t) {
    if (sched.c(t) < c_cross) {
      t_star = t;
      break;
    }
    const double f = factor(t);
    require_positive(f);
    logs.push_back(std::log(f));
  }
  if (t_star < 0) return inf;  // c(t) never drops below the crossover
  // remaining factors must still be positive for the bound to exist; once
  // c(t) rho_lambda < 1 the factor exceeds 1 - c(t) rho_lambda > 0 forever
  for (int t = t_star;; ++t) {
    const double f = factor(t);
    require_positive(f);
    if (sched.c(t) * rho_lambda < 1.0) break;
    if (t > kCap) break;
  }
  double suffix = 0.0;
  double best = 0.0;  // the limit product, 1
  for (int t = t_star - 1; t >= 0; --t) {
    suffix += logs[static_cast<size_t>(t)];
    best = std::max(best, suffix);
  }
  return std::exp(best);
}

ScheduleConstants compute_constants(const PowerLawSchedule& sched, double kappa,
                                    double rho_L, double rho_lambda,
                                    double delta_bar, double precision) {
  ScheduleConstants consts;
  consts.kappa_eps = kappa;
  const double inf = std::numeric_limits<double>::infinity();
  consts.c1 = 2.0 * sched.beta > 1.0 ? compute_C1(sched, precision) : inf;
  consts.c2 = 1.0 - 4.0 * sched.beta + 2.0 * sched.gamma < -1.0
                  ? compute_C2(sched, precision)
                  : inf;
  try {
    consts.c3 = compute_C3(sched, rho_L, rho_lambda, delta_bar, precision);
  } catch (const std::exception&) {
    consts.c3 = inf;
  }
  const auto sc = compute_sum_c(sched, precision);
  consts.sum_c_finite = sc.has_value();
  consts.sum_c = sc.value_or(inf);
  return consts;
}

std::optional<double> compute_sum_c(const PowerLawSchedule& sched, double precision) {
  if (!(sched.beta > 1.0)) return std::nullopt;
  double sum = 0.0;
  for (int t = 0;; ++t) {
    sum += sched.c(t);
    const double tail = sched.alpha *
                        std::pow(static_cast<double>(t + 1), 1.0 - sched.beta) /
                        (sched.beta - 1.0);
    if (tail < precision || t > 50'000'000) return sum + tail;
  }
}

}  // namespace dplqr
