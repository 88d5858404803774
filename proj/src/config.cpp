#include "dplqr/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dplqr {
namespace {

using nlohmann::json;

std::string join_errors(const std::vector<std::string>& errors) {
  std::ostringstream os;
  os << "invalid config:";
  for (const auto& e : errors) os << "\n  - " << e;
  return os.str();
}

class Collector {
public:
  void add(const std::string& path, const std::string& msg) {
    errors_.push_back(path + ": " + msg);
  }
  void check_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
      if (!allowed.contains(key)) add(path + "." + key, "unknown key");
    }
  }
  bool empty() const { return errors_.empty(); }
  std::vector<std::string> take() { return std::move(errors_); }

private:
  std::vector<std::string> errors_;
};

Eigen::MatrixXd read_matrix(const json& j, const std::string& path, Collector& errs) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    errs.add(path, "expected a nonempty array of arrays");
    return {};
  }
  const size_t rows = j.size();
  const size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      errs.add(path, "rows have inconsistent lengths");
      return {};
    }
    for (size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) {
        errs.add(path, "entries must be numeric");
        return {};
      }
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

// weights given either as diagonal vectors (q_diag/r_diag) or full matrices (Q/R)
std::optional<WeightPair> read_weight_pair(const json& j, const std::string& path,
                                           Collector& errs, bool strict_keys = true) {
  Collector local;
  // the agent object carries extra keys checked by the caller
  if (strict_keys) local.check_keys(j, path, {"q_diag", "r_diag", "Q", "R"});
  Eigen::MatrixXd q, r;
  if (j.contains("q_diag")) {
    const auto& d = j["q_diag"];
    if (!d.is_array() || d.empty()) {
      local.add(path + ".q_diag", "expected a nonempty numeric array");
    } else {
      q = Eigen::MatrixXd::Zero(d.size(), d.size());
      for (size_t k = 0; k < d.size(); ++k) q(k, k) = d[k].get<double>();
    }
  } else if (j.contains("Q")) {
    q = read_matrix(j["Q"], path + ".Q", local);
  } else {
    local.add(path, "missing q_diag or Q");
  }
  if (j.contains("r_diag")) {
    const auto& d = j["r_diag"];
    if (!d.is_array() || d.empty()) {
      local.add(path + ".r_diag", "expected a nonempty numeric array");
    } else {
      r = Eigen::MatrixXd::Zero(d.size(), d.size());
      for (size_t k = 0; k < d.size(); ++k) r(k, k) = d[k].get<double>();
    }
  } else if (j.contains("R")) {
    r = read_matrix(j["R"], path + ".R", local);
  } else {
    local.add(path, "missing r_diag or R");
  }
  if (!local.empty()) {
    for (auto& e : local.take()) errs.add("", e);
    return std::nullopt;
  }
  try {
    return WeightPair(std::move(q), std::move(r));
  } catch (const std::exception& ex) {
    errs.add(path, ex.what());
    return std::nullopt;
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

SimConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ConfigError({std::string("JSON parse error: ") + ex.what()});
  }

  Collector errs;
  errs.check_keys(root, "$", {"graph", "agents", "schedule", "privacy", "lqr", "sim"});
  for (const char* section : {"graph", "agents", "schedule", "privacy", "lqr", "sim"}) {
    if (!root.contains(section)) errs.add(std::string("$.") + section, "missing section");
  }
  if (!errs.empty()) throw ConfigError(errs.take());

  SimConfig cfg;

  // graph
  const json& jg = root["graph"];
  errs.check_keys(jg, "$.graph", {"num_agents", "adjacency"});
  int n_agents = 0;
  if (jg.contains("num_agents") && jg["num_agents"].is_number_integer()) {
    n_agents = jg["num_agents"].get<int>();
  } else {
    errs.add("$.graph.num_agents", "missing or non-integer");
  }
  if (jg.contains("adjacency")) {
    Collector merrs;
    const Eigen::MatrixXd a = read_matrix(jg["adjacency"], "$.graph.adjacency", merrs);
    if (!merrs.empty()) {
      for (auto& e : merrs.take()) errs.add("", e);
    } else if (a.rows() != n_agents || a.cols() != n_agents) {
      errs.add("$.graph.adjacency", "must be num_agents x num_agents");
    } else {
      Eigen::MatrixXi ai(n_agents, n_agents);
      bool binary = true;
      for (int i = 0; i < n_agents; ++i) {
        for (int j = 0; j < n_agents; ++j) {
          if (a(i, j) != 0.0 && a(i, j) != 1.0) binary = false;
          ai(i, j) = static_cast<int>(a(i, j));
        }
      }
      if (!binary) {
        errs.add("$.graph.adjacency", "entries must be exactly 0 or 1");
      } else {
        try {
          cfg.graph = std::make_shared<DirectedGraph>(ai);
          if (!has_spanning_tree(*cfg.graph)) {
            errs.add("$.graph.adjacency", "graph has no directed spanning tree");
          }
        } catch (const std::exception& ex) {
          errs.add("$.graph.adjacency", ex.what());
        }
      }
    }
  } else {
    errs.add("$.graph.adjacency", "missing");
  }

  // agents
  int state_dim = -1;
  const json& ja = root["agents"];
  if (!ja.is_array() || static_cast<int>(ja.size()) != n_agents) {
    errs.add("$.agents", "expected an array with one entry per agent");
  } else {
    cfg.initial_states.resize(n_agents, 0);
    for (int i = 0; i < n_agents; ++i) {
      const std::string path = "$.agents[" + std::to_string(i) + "]";
      const json& agent = ja[static_cast<size_t>(i)];
      errs.check_keys(agent, path, {"initial_state", "q_diag", "r_diag", "Q", "R", "feasible"});
      if (agent.contains("initial_state") && agent["initial_state"].is_array() &&
          !agent["initial_state"].empty()) {
        const auto& x0 = agent["initial_state"];
        if (state_dim < 0) {
          state_dim = static_cast<int>(x0.size());
          cfg.initial_states.resize(n_agents, state_dim);
        }
        if (static_cast<int>(x0.size()) != state_dim) {
          errs.add(path + ".initial_state", "dimension differs across agents");
        } else {
          for (int k = 0; k < state_dim; ++k) {
            cfg.initial_states(i, k) = x0[static_cast<size_t>(k)].get<double>();
          }
        }
      } else {
        errs.add(path + ".initial_state", "missing or empty");
      }
      auto pair = read_weight_pair(agent, path, errs, /*strict_keys=*/false);
      if (pair) {
        if (state_dim > 0 && pair->dim() != state_dim) {
          errs.add(path, "weight matrix dimension differs from state dimension");
        }
        cfg.weights.push_back(std::move(*pair));
      }
      if (agent.contains("feasible") && agent["feasible"].is_array() &&
          !agent["feasible"].empty()) {
        std::vector<WeightPair> cands;
        for (size_t k = 0; k < agent["feasible"].size(); ++k) {
          auto c = read_weight_pair(agent["feasible"][k],
                                    path + ".feasible[" + std::to_string(k) + "]", errs);
          if (c) {
            if (state_dim > 0 && c->dim() != state_dim) {
              errs.add(path + ".feasible[" + std::to_string(k) + "]",
                       "dimension differs from state dimension");
            }
            cands.push_back(std::move(*c));
          }
        }
        if (!cands.empty()) cfg.feasible.emplace_back(std::move(cands));
      } else {
        errs.add(path + ".feasible", "missing or empty feasible set");
      }
    }
  }

  // schedule
  const json& js = root["schedule"];
  errs.check_keys(js, "$.schedule", {"alpha", "beta", "gamma"});
  try {
    cfg.schedule = PowerLawSchedule(js.value("alpha", 0.0), js.value("beta", -1.0),
                                    js.value("gamma", -1.0));
  } catch (const std::exception& ex) {
    errs.add("$.schedule", ex.what());
  }

  // privacy
  const json& jp = root["privacy"];
  errs.check_keys(jp, "$.privacy", {"epsilon"});
  cfg.epsilon = jp.value("epsilon", 0.0);
  if (!(cfg.epsilon > 0.0)) errs.add("$.privacy.epsilon", "must be > 0");

  // lqr
  const json& jl = root["lqr"];
  errs.check_keys(jl, "$.lqr", {"horizon"});
  cfg.horizon = jl.value("horizon", 0);
  if (cfg.horizon < 1) errs.add("$.lqr.horizon", "must be >= 1");

  // sim
  const json& jm = root["sim"];
  errs.check_keys(jm, "$.sim", {"steps", "trials", "seed", "noise_enabled"});
  cfg.t_max = jm.value("steps", 0);
  if (cfg.t_max < 1) errs.add("$.sim.steps", "must be >= 1");
  cfg.trials = jm.value("trials", 0);
  if (cfg.trials < 1) errs.add("$.sim.trials", "must be >= 1");
  cfg.seed = jm.value("seed", std::uint64_t{0});
  cfg.noise_enabled = jm.value("noise_enabled", true);

  if (!errs.empty()) throw ConfigError(errs.take());
  return cfg;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace dplqr
