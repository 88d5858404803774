#include <chrono>
#include <cmath>
#include <cstdio>

#include "dplqr/bounds.hpp"
#include "dplqr/config.hpp"
#include "dplqr/paper_scenario.hpp"

// Compares the OpenMP trial loop against the serial reference on the built-in
// scenario and checks that both produce identical aggregates.
int main(int argc, char** argv) {
  const int trials = argc > 1 ? std::atoi(argv[1]) : 2000;
  dplqr::SimConfig cfg = dplqr::parse_config_text(dplqr::kPaperScenarioJson);
  cfg.trials = trials;

  const auto table = dplqr::build_gain_table(*cfg.graph, cfg.weights, cfg.feasible,
                                             cfg.schedule, cfg.horizon, cfg.t_max);

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const auto serial = dplqr::run_monte_carlo_serial(cfg, table);
  const auto t1 = clock::now();
  const auto parallel = dplqr::run_monte_carlo(cfg, table);
  const auto t2 = clock::now();

  const double serial_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double parallel_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();

  double max_diff = 0.0;
  for (size_t t = 0; t < serial.mean_v.size(); ++t) {
    max_diff = std::max(max_diff, std::abs(serial.mean_v[t] - parallel.mean_v[t]));
  }

  std::printf("trials: %d, steps: %d\n", trials, cfg.t_max);
  std::printf("serial:   %8.1f ms\n", serial_ms);
  std::printf("parallel: %8.1f ms  (speedup %.2fx)\n", parallel_ms,
              serial_ms / parallel_ms);
  std::printf("max |mean V| difference: %g\n", max_diff);
  return max_diff == 0.0 ? 0 : 1;
}
