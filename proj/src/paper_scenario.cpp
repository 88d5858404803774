#include "dplqr/paper_scenario.hpp"

namespace dplqr {

// The 4-agent reference scenario, shipped as data (mirrors configs/paper.json).
const char* kPaperScenarioJson = R"JSON(
{
  "graph": {
    "num_agents": 4,
    "adjacency": [
      [0, 1, 1, 0],
      [0, 0, 0, 1],
      [0, 0, 0, 1],
      [1, 0, 0, 0]
    ]
  },
  "agents": [
    {
      "initial_state": [1, 10, 20],
      "q_diag": [8, 8, 8],
      "r_diag": [2, 2, 2],
      "feasible": [
        {"q_diag": [6, 6, 6], "r_diag": [2, 2, 2]},
        {"q_diag": [6, 6, 6], "r_diag": [3, 3, 3]},
        {"q_diag": [7, 7, 7], "r_diag": [2, 2, 2]},
        {"q_diag": [7, 7, 7], "r_diag": [3, 3, 3]},
        {"q_diag": [8, 8, 8], "r_diag": [2, 2, 2]},
        {"q_diag": [8, 8, 8], "r_diag": [3, 3, 3]}
      ]
    },
    {
      "initial_state": [14, 20, 7],
      "q_diag": [8, 8, 8],
      "r_diag": [2, 2, 2],
      "feasible": [
        {"q_diag": [6, 6, 6], "r_diag": [2, 2, 2]},
        {"q_diag": [6, 6, 6], "r_diag": [3, 3, 3]},
        {"q_diag": [7, 7, 7], "r_diag": [2, 2, 2]},
        {"q_diag": [7, 7, 7], "r_diag": [3, 3, 3]},
        {"q_diag": [8, 8, 8], "r_diag": [2, 2, 2]},
        {"q_diag": [8, 8, 8], "r_diag": [3, 3, 3]}
      ]
    },
    {
      "initial_state": [30, 70, 50],
      "q_diag": [8, 8, 8],
      "r_diag": [2, 2, 2],
      "feasible": [
        {"q_diag": [6, 6, 6], "r_diag": [2, 2, 2]},
        {"q_diag": [6, 6, 6], "r_diag": [3, 3, 3]},
        {"q_diag": [7, 7, 7], "r_diag": [2, 2, 2]},
        {"q_diag": [7, 7, 7], "r_diag": [3, 3, 3]},
        {"q_diag": [8, 8, 8], "r_diag": [2, 2, 2]},
        {"q_diag": [8, 8, 8], "r_diag": [3, 3, 3]}
      ]
    },
    {
      "initial_state": [55, 43, 34],
      "q_diag": [8, 8, 8],
      "r_diag": [2, 2, 2],
      "feasible": [
        {"q_diag": [6, 6, 6], "r_diag": [2, 2, 2]},
        {"q_diag": [6, 6, 6], "r_diag": [3, 3, 3]},
        {"q_diag": [7, 7, 7], "r_diag": [2, 2, 2]},
        {"q_diag": [7, 7, 7], "r_diag": [3, 3, 3]},
        {"q_diag": [8, 8, 8], "r_diag": [2, 2, 2]},
        {"q_diag": [8, 8, 8], "r_diag": [3, 3, 3]}
      ]
    }
  ],
  "schedule": {
    "alpha": 0.06666666666666667,
    "beta": 1.3,
    "gamma": 1.1
  },
  "privacy": {
    "epsilon": 5.0
  },
  "lqr": {
    "horizon": 10
  },
  "sim": {
    "steps": 120,
    "trials": 1,
    "seed": 1,
    "noise_enabled": true
  }
}
)JSON";

}  // namespace dplqr
