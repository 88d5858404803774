#include "dplqr/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dplqr {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void write_trace_csv(const std::string& path, const SimConfig& cfg,
                     const std::vector<SimTrace>& traces) {
  const int n = cfg.state_dim();
  const int n_agents = cfg.num_agents();
  std::ostringstream os;
  os << "trial,t,agent";
  for (int k = 1; k <= n; ++k) os << ",x_" << k;
  for (int k = 1; k <= n; ++k) os << ",eta_" << k;
  os << ",gap_inf,V_t,eps_step,eps_cum\n";

  for (size_t r = 0; r < traces.size(); ++r) {
    const SimTrace& trace = traces[r];
    double cum = 0.0;
    for (int t = 0; t <= cfg.t_max; ++t) {
      const double eps_step =
          t < trace.ledger.steps_recorded() ? trace.ledger.per_step()[t] : 0.0;
      cum += eps_step;
      for (int i = 0; i < n_agents; ++i) {
        os << r << ',' << t << ',' << i;
        for (int k = 0; k < n; ++k) os << ',' << num(trace.states[t](i, k));
        for (int k = 0; k < n; ++k) os << ',' << num(trace.noises[t](i, k));
        double gap;
        if (t < static_cast<int>(trace.gaps.size())) {
          gap = trace.gaps[t](i);
        } else {
          // final slice: recompute from the stored states and noises
          Eigen::RowVectorXd agg = Eigen::RowVectorXd::Zero(n);
          for (int j = 0; j < n_agents; ++j) {
            if (cfg.graph->adjacency()(i, j) == 1) {
              agg += (trace.states[t].row(j) + trace.noises[t].row(j)) -
                     trace.states[t].row(i);
            }
          }
          gap = agg.cwiseAbs().maxCoeff();
        }
        os << ',' << num(gap) << ',' << num(trace.lyapunov[t]) << ','
           << num(eps_step) << ',' << num(cum) << '\n';
      }
    }
  }
  write_text_atomic(path, os.str());
}

std::string summary_json(const SimConfig& cfg, const ScheduleConstants& consts,
                         const GainTable& gains, const AssumptionReport& assumptions,
                         const BoundsReport& bounds, const MonteCarloSummary* mc,
                         const PrivacyLedger* ledger) {
  json j;
  j["schedule_constants"] = {
      {"C1", consts.c1},
      {"C2", consts.c2},
      {"C3", finite_or_string(consts.c3)},
      {"sum_c", consts.sum_c_finite ? json(consts.sum_c) : json("inf")},
      {"kappa_eps", consts.kappa_eps},
  };
  j["gains"] = {
      {"delta_hat", gains.delta_hat},
      {"delta_bar", gains.delta_bar},
      {"horizon", gains.horizon},
  };
  j["spectral"] = {{"rho_L", bounds.rho_L}, {"rho_A", bounds.rho_A}};
  j["rho_lambda"] = {
      {"defined", bounds.rho_lambda.defined},
      {"value", bounds.rho_lambda.value},
      {"offending_t", bounds.rho_lambda.offending_t},
      {"reason", bounds.rho_lambda.reason},
  };
  j["bounds"] = {
      {"v1", bounds.v1},
      {"contraction_margin", bounds.contraction_margin},
      {"sigma", {{"defined", bounds.sigma.has_value()},
                 {"value", bounds.sigma.value_or(0.0)},
                 {"diagnosis", bounds.sigma_diagnosis}}},
      {"v_bar", {{"defined", bounds.v_bar.has_value()},
                 {"value", bounds.v_bar.value_or(0.0)},
                 {"q", finite_or_string(bounds.v_bar_q)}}},
      {"first_term_zero_flag", bounds.first_term_zero_flag},
  };
  j["assumptions"] = {
      {"A2", assumptions.a2},
      {"A3a", assumptions.a3a},
      {"A3b", assumptions.a3b},
      {"A3c", assumptions.a3c},
      {"A4", assumptions.a4},
      {"l2_footnote_informational", assumptions.l2_footnote},
      {"a3b_worst", finite_or_string(assumptions.a3b_worst)},
      {"a4_margin", assumptions.a4_margin},
  };
  if (mc != nullptr) {
    j["monte_carlo"] = {
        {"trials", mc->trials},
        {"final_mean_v", mc->final_mean_v},
        {"max_mean_v", mc->max_mean_v},
        {"mean_v", mc->mean_v},
        {"half_width", mc->half_width},
    };
  }
  if (ledger != nullptr) {
    const double tail =
        ledger_tail_bound(cfg.epsilon, cfg.schedule.gamma, ledger->steps_recorded());
    j["privacy"] = {
        {"epsilon", cfg.epsilon},
        {"per_step", ledger->per_step()},
        {"cumulative", ledger->cumulative()},
        {"tail_bound", finite_or_string(tail)},
    };
  }
  return j.dump(2) + "\n";
}

}  // namespace dplqr
