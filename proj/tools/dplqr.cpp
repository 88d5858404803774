#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "dplqr/bounds.hpp"
#include "dplqr/config.hpp"
#include "dplqr/output.hpp"
#include "dplqr/paper_scenario.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<int> trials;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  bool no_noise = false;
};

void apply_overrides(dplqr::SimConfig& cfg, const Options& opt) {
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.steps) cfg.t_max = *opt.steps;
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.no_noise) cfg.noise_enabled = false;
}

struct Artifacts {
  dplqr::GainTable table;
  dplqr::ScheduleConstants consts;
  dplqr::AssumptionReport assumptions;
  dplqr::BoundsReport bounds;
};

Artifacts analyze(const dplqr::SimConfig& cfg) {
  Artifacts a;
  a.table = dplqr::build_gain_table(*cfg.graph, cfg.weights, cfg.feasible,
                                    cfg.schedule, cfg.horizon, cfg.t_max);
  const auto spectral = dplqr::spectral_constants(*cfg.graph);
  const auto rl = dplqr::rho_lambda(*cfg.graph, a.table, cfg.state_dim());
  const double kappa = dplqr::kappa_epsilon(cfg.state_dim(), cfg.num_agents(),
                                            a.table.delta_hat, cfg.epsilon);
  a.consts = dplqr::compute_constants(cfg.schedule, kappa, spectral.rho_L,
                                      rl.defined ? rl.value : 0.0,
                                      a.table.delta_bar);
  a.assumptions = dplqr::validate_assumptions(cfg.schedule, kappa, spectral.rho_L,
                                              rl.defined ? rl.value : 0.0,
                                              a.table.delta_bar, cfg.t_max);
  a.bounds = dplqr::compute_bounds(cfg, a.table, a.consts);
  return a;
}

int cmd_validate(const dplqr::SimConfig& cfg) {
  const Artifacts a = analyze(cfg);
  std::cout << dplqr::summary_json(cfg, a.consts, a.table, a.assumptions, a.bounds,
                                   nullptr, nullptr);
  return a.assumptions.blocking_ok() ? 0 : 2;
}

int cmd_gains(const dplqr::SimConfig& cfg) {
  const auto table = dplqr::build_gain_table(*cfg.graph, cfg.weights, cfg.feasible,
                                             cfg.schedule, cfg.horizon, cfg.t_max);
  json j;
  j["delta_hat"] = table.delta_hat;
  j["delta_bar"] = table.delta_bar;
  j["horizon"] = table.horizon;
  j["in_degrees"] = table.in_degrees;
  json agents = json::array();
  for (int i = 0; i < cfg.num_agents(); ++i) {
    json per_t = json::array();
    for (int t = 0; t <= table.t_max; ++t) {
      json cell;
      cell["t"] = t;
      cell["sensitivity"] = table.sens(i, t);
      json rows = json::array();
      for (int r = 0; r < cfg.state_dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < cfg.state_dim(); ++c) row.push_back(table.gain(i, t)(r, c));
        rows.push_back(row);
      }
      cell["K"] = rows;
      per_t.push_back(cell);
    }
    agents.push_back({{"agent", i},
                      {"gains", per_t},
                      {"limit_sensitivity", table.limit_sensitivities[i]}});
  }
  j["agents"] = agents;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_bounds(const dplqr::SimConfig& cfg) {
  const Artifacts a = analyze(cfg);
  std::cout << dplqr::summary_json(cfg, a.consts, a.table, a.assumptions, a.bounds,
                                   nullptr, nullptr);
  return 0;
}

int cmd_privacy(const dplqr::SimConfig& cfg) {
  dplqr::PrivacyLedger ledger;
  for (int t = 0; t < cfg.t_max; ++t) ledger.record_step(t, cfg.epsilon, cfg.schedule);
  const double tail =
      dplqr::ledger_tail_bound(cfg.epsilon, cfg.schedule.gamma, cfg.t_max);
  json j;
  j["epsilon"] = cfg.epsilon;
  j["steps"] = cfg.t_max;
  j["per_step"] = ledger.per_step();
  j["cumulative"] = ledger.cumulative();
  j["tail_bound"] = std::isfinite(tail) ? json(tail) : json("inf");
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const dplqr::SimConfig& cfg, const Options& opt) {
  const Artifacts a = analyze(cfg);
  std::vector<dplqr::SimTrace> traces;
  traces.reserve(cfg.trials);
  for (int r = 0; r < cfg.trials; ++r) {
    traces.push_back(dplqr::run_trial(cfg, a.table, r));
  }
  const auto mc = dplqr::run_monte_carlo(cfg, a.table);

  std::filesystem::create_directories(opt.out_dir);
  const auto out = std::filesystem::path(opt.out_dir);
  dplqr::write_trace_csv((out / "trace.csv").string(), cfg, traces);
  const std::string summary =
      dplqr::summary_json(cfg, a.consts, a.table, a.assumptions, a.bounds, &mc,
                          &traces.front().ledger);
  dplqr::write_text_atomic((out / "summary.json").string(), summary);
  std::cout << summary;
  return 0;
}

int cmd_paper(const Options& opt) {
  dplqr::SimConfig cfg = dplqr::parse_config_text(dplqr::kPaperScenarioJson);
  cfg.t_max = 120;
  apply_overrides(cfg, opt);
  const int rc = cmd_simulate(cfg, opt);
  dplqr::PrivacyLedger ledger;
  for (int t = 0; t <= 120; ++t) ledger.record_step(t, cfg.epsilon, cfg.schedule);
  std::printf("cumulative privacy leakage over t = 0..120: %.6f\n",
              ledger.cumulative());
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private distributed LQR consensus simulator"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config_path, "run config (JSON)");
    if (needs_config) c->required();
    sub->add_option("--trials", opt.trials, "override trial count");
    sub->add_option("--steps", opt.steps, "override simulated steps");
    sub->add_option("--seed", opt.seed, "override master seed");
    sub->add_flag("--no-noise", opt.no_noise, "disable privacy noise");
    sub->add_option("--out", opt.out_dir, "output directory");
  };

  auto* validate = app.add_subcommand("validate", "check schedule assumptions");
  auto* gains = app.add_subcommand("gains", "dump the gain table");
  auto* bounds = app.add_subcommand("bounds", "theoretical error bounds");
  auto* privacy = app.add_subcommand("privacy", "privacy ledger projection");
  auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo simulation");
  auto* paper = app.add_subcommand("paper", "run the built-in 4-agent scenario");
  for (auto* sub : {validate, gains, bounds, privacy, simulate}) add_common(sub, true);
  add_common(paper, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (paper->parsed()) return cmd_paper(opt);
    dplqr::SimConfig cfg = dplqr::parse_config(opt.config_path);
    apply_overrides(cfg, opt);
    if (validate->parsed()) return cmd_validate(cfg);
    if (gains->parsed()) return cmd_gains(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (privacy->parsed()) return cmd_privacy(cfg);
    return cmd_simulate(cfg, opt);
  } catch (const dplqr::ConfigError& ex) {
    json err;
    err["error"] = "invalid config";
    err["details"] = ex.errors();
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& ex) {
    json err;
    err["error"] = ex.what();
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}
