#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sca/bench.hpp"
#include "sca/errors.hpp"

using namespace sca;
using namespace sca::bench;

namespace {

std::string csv_of(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_csv(out, run_experiment(cfg), false);
  return out.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = config_from_json(R"({
    "problem": "mimo-ic", "users": 3, "tx_antennas": 2, "rx_antennas": 2,
    "snr_db": 10, "delta": 0.1, "seed": 42, "iterations": 7, "eval_samples": 5,
    "algorithms": ["best-response", {"id": "proximal-gradient", "tau": 0.5},
                   {"id": "conditional-gradient", "schedule": {"alpha": 0.8, "beta": 0.7}}]
  })");
  CHECK(c.problem == ProblemKind::MimoIc);
  CHECK(c.users == 3);
  CHECK(c.seed == 42);
  CHECK(c.power() == doctest::Approx(10.0).epsilon(1e-15));
  REQUIRE(c.algorithms.size() == 3);
  CHECK(c.algorithms[1].tau.value() == 0.5);
  CHECK(c.algorithms[2].schedule->alpha == 0.8);
  CHECK(c.algorithms[2].schedule->scale == 2.0);

  const auto single = config_from_json(R"({"problem": "siso-ic", "algorithm": "best-response"})");
  CHECK(single.algorithms.size() == 1);
  CHECK(config_from_json(R"({"snr_db": 0, "algorithm": "best-response"})").power() == 1.0);
}

TEST_CASE("config errors") {
  auto bad = [](const std::string& text) {
    CHECK_THROWS_AS(config_from_json(text), ConfigError);
  };
  bad("not json");
  bad("[1, 2]");
  bad(R"({"algorithm": "best-response", "colour": 3})");
  bad(R"({"problem": "mimo-bc", "algorithm": "best-response"})");
  bad(R"({"algorithm": "robust-pricing"})");
  bad(R"({"problem": "robust-mimo-ic", "algorithm": "best-response"})");
  bad(R"({"algorithms": ["best-response", "best-response"]})");
  bad(R"({})");
  bad(R"({"algorithm": "best-response", "users": 0})");
  bad(R"({"algorithm": "best-response", "users": -2})");
  bad(R"({"algorithm": "best-response", "users": 2.5})");
  bad(R"({"algorithm": "best-response", "delta": -0.1})");
  bad(R"({"algorithm": "best-response", "iterations": 0})");
  bad(R"({"algorithm": "best-response", "schedule": {"alpha": 1.5}})");
  bad(R"({"algorithm": "best-response", "schedule": {"gamma": 0.5}})");
  bad(R"({"algorithm": {"id": "proximal-gradient", "tau": 0}})");
  bad(R"({"algorithm": {"tau": 1}})");
  bad(R"({"algorithm": "best-response", "timing": 1})");
}

TEST_CASE("achievable sum-rate and means") {
  const auto a = achievable_sum_rate({1.0, 3.0, 2.0, 6.0});
  REQUIRE(a.size() == 4);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 2.0);
  CHECK(a[2] == 2.0);
  CHECK(a[3] == 3.0);
  // Recurrence: t·a_t = (t − 1)·a_{t−1} + inst_t.
  std::vector<double> inst;
  for (int k = 0; k < 100; ++k) inst.push_back(std::sin(k) + 2.0);
  const auto r = achievable_sum_rate(inst);
  for (std::size_t t = 1; t < inst.size(); ++t)
    CHECK((t + 1) * r[t] == doctest::Approx(t * r[t - 1] + inst[t]).epsilon(1e-13));
  CHECK(achievable_sum_rate({}).empty());

  CHECK(mean_of({2.0, 4.0}) == 3.0);
  std::vector<double> v(37, 1.25);
  CHECK(mean_of(v) == 1.25);
  CHECK_THROWS_AS(mean_of({}), ParameterError);
}

TEST_CASE("csv formatting") {
  Row r{12, "best-response", 3.5, 2.25, 1e-3, 4.5678};
  CHECK(csv_header() == "iteration,algorithm,ergodic_sum_rate,achievable_sum_rate,stationarity_gap,wall_ms");
  CHECK(csv_row(r, true) == "12,best-response,3.5,2.25,0.001,4.568");
  CHECK(csv_row(r, false) == "12,best-response,3.5,2.25,0.001,0");
}

TEST_CASE("smoke run over every problem kind") {
  for (ProblemKind kind : {ProblemKind::SisoIc, ProblemKind::MimoIc, ProblemKind::MimoMac,
                           ProblemKind::RobustMimoIc}) {
    ExperimentConfig c;
    c.problem = kind;
    c.users = 3;
    c.subchannels = 4;
    c.iterations = 3;
    c.eval_samples = 4;
    for (const auto& id : algorithms_for(kind)) c.algorithms.push_back({id, {}, {}});
    const auto rows = run_experiment(c);
    REQUIRE(rows.size() == 3 * c.algorithms.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      CHECK(rows[k].iteration == static_cast<long>(k % 3) + 1);
      CHECK(rows[k].algorithm == c.algorithms[k / 3].id);
      CHECK(std::isfinite(rows[k].ergodic_sum_rate));
      CHECK(rows[k].ergodic_sum_rate >= 0.0);
      CHECK(rows[k].achievable_sum_rate >= 0.0);
      CHECK(rows[k].stationarity_gap >= 0.0);
      CHECK(rows[k].wall_ms >= 0.0);
    }
  }
}

TEST_CASE("experiment output is reproducible and thread-count independent") {
  ExperimentConfig c;
  c.problem = ProblemKind::MimoIc;
  c.users = 4;
  c.iterations = 10;
  c.eval_samples = 20;
  c.timing = false;
  c.algorithms = {{"best-response", {}, {}}, {"gradient-projection", {}, {}}};
  const std::string one = csv_of(c);
  CHECK(one == csv_of(c));
  c.threads = 3;
  CHECK(one == csv_of(c));
  c.seed = 2;
  CHECK(one != csv_of(c));
}

TEST_CASE("without perturbation the ergodic rate is the deterministic rate") {
  ExperimentConfig c;
  c.problem = ProblemKind::SisoIc;
  c.users = 3;
  c.subchannels = 4;
  c.delta = 0.0;
  c.iterations = 5;
  c.algorithms = {{"best-response", {}, {}}};
  c.eval_samples = 1;
  const auto single = run_experiment(c);
  c.eval_samples = 9;
  const auto many = run_experiment(c);
  for (std::size_t k = 0; k < single.size(); ++k) {
    CHECK(many[k].ergodic_sum_rate == doctest::Approx(single[k].ergodic_sum_rate).epsilon(1e-14));
    // Every iteration sees the same channel, so the instantaneous rate is
    // the deterministic one as well.
    if (k == 0) CHECK(many[k].achievable_sum_rate == doctest::Approx(single[k].ergodic_sum_rate).epsilon(1e-14));
  }
}
