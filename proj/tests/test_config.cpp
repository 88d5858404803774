#include <doctest.h>

#include <string>

#include <json.hpp>

#include "dplqr/config.hpp"
#include "dplqr/paper_scenario.hpp"

using namespace dplqr;
using nlohmann::json;

TEST_CASE("embedded scenario parses and matches the published setup") {
  const SimConfig cfg = parse_config_text(kPaperScenarioJson);
  CHECK(cfg.num_agents() == 4);
  CHECK(cfg.state_dim() == 3);
  CHECK(cfg.horizon == 10);
  CHECK(cfg.t_max == 120);
  CHECK(cfg.epsilon == 5.0);
  CHECK(cfg.schedule.beta == 1.3);
  CHECK(cfg.schedule.gamma == 1.1);
  CHECK(cfg.schedule.alpha == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
  CHECK(cfg.initial_states(0, 0) == 1.0);
  CHECK(cfg.initial_states(3, 2) == 34.0);
  CHECK(cfg.weights[0].Q(1, 1) == 8.0);
  CHECK(cfg.weights[0].R(2, 2) == 2.0);
  CHECK(cfg.feasible[0].pairs.size() == 6);
  CHECK(cfg.noise_enabled);
  CHECK(cfg.seed == 1);
  CHECK(cfg.trials == 1);
}

TEST_CASE("config validation failures") {
  json base = json::parse(kPaperScenarioJson);

  SUBCASE("self-loop in the adjacency") {
    base["graph"]["adjacency"][0][0] = 1;
    CHECK_THROWS_AS(parse_config_text(base.dump()), ConfigError);
  }

  SUBCASE("disconnected graph") {
    base["graph"]["adjacency"] = {{0, 0, 0, 0}, {0, 0, 0, 0},
                                  {0, 0, 0, 0}, {0, 0, 0, 0}};
    try {
      parse_config_text(base.dump());
      FAIL("expected a throw");
    } catch (const ConfigError& ex) {
      REQUIRE(ex.errors().size() == 1);
      CHECK(ex.errors()[0].find("spanning tree") != std::string::npos);
    }
  }

  SUBCASE("unknown keys are rejected everywhere") {
    base["extra_section"] = 1;
    CHECK_THROWS_AS(parse_config_text(base.dump()), ConfigError);

    json b2 = json::parse(kPaperScenarioJson);
    b2["sim"]["threads"] = 4;
    CHECK_THROWS_AS(parse_config_text(b2.dump()), ConfigError);
  }

  SUBCASE("several errors are reported together") {
    base["privacy"]["epsilon"] = -1.0;
    base["lqr"]["horizon"] = 0;
    base["sim"]["steps"] = 0;
    try {
      parse_config_text(base.dump());
      FAIL("expected a throw");
    } catch (const ConfigError& ex) {
      CHECK(ex.errors().size() == 3);
      CHECK(std::string(ex.what()).find("$.privacy.epsilon") != std::string::npos);
      CHECK(std::string(ex.what()).find("$.lqr.horizon") != std::string::npos);
      CHECK(std::string(ex.what()).find("$.sim.steps") != std::string::npos);
    }
  }

  SUBCASE("non-positive-definite R") {
    for (auto& agent : base["agents"]) agent["r_diag"] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(parse_config_text(base.dump()), ConfigError);
  }

  SUBCASE("mismatched state dimensions") {
    base["agents"][2]["initial_state"] = {1.0, 2.0};
    CHECK_THROWS_AS(parse_config_text(base.dump()), ConfigError);
  }

  SUBCASE("full matrices are accepted in place of diagonals") {
    json& agent = base["agents"][0];
    agent.erase("q_diag");
    agent["Q"] = {{8.0, 0.1, 0.0}, {0.1, 8.0, 0.0}, {0.0, 0.0, 8.0}};
    const SimConfig cfg = parse_config_text(base.dump());
    CHECK(cfg.weights[0].Q(0, 1) == 0.1);
  }

  SUBCASE("missing file") { CHECK_THROWS_AS(parse_config("/no/such/file.json"), ConfigError); }

  SUBCASE("malformed json") { CHECK_THROWS_AS(parse_config_text("{oops"), ConfigError); }
}
