#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sca/baselines.hpp"
#include "sca/errors.hpp"
#include "sca/siso_ic.hpp"

using namespace sca;
using namespace sca::baselines;

TEST_CASE("recursive stepsize") {
  RecursiveStepsize g(1e-3);
  CHECK(g(1) == 1.0);
  CHECK(g(2) == doctest::Approx(0.999).epsilon(1e-15));
  CHECK(g(3) == doctest::Approx(0.999 * (1.0 - 0.999e-3)).epsilon(1e-15));
  double sum = 0.0, prev = 2.0;
  bool positive_decreasing = true;
  for (long t = 1; t <= 1000000; ++t) {
    const double v = g(t);
    positive_decreasing = positive_decreasing && v > 0.0 && v < prev;
    prev = v;
    sum += v;
  }
  CHECK(positive_decreasing);
  // γ^t ≈ 1/(decay·t): the sum grows like 1000·ln t and γ itself vanishes.
  CHECK(sum > 5000.0);
  CHECK(prev < 1.1e-3);
  CHECK_THROWS_AS(RecursiveStepsize(0.0), ParameterError);
  CHECK_THROWS_AS(g(0), ContractError);
}

TEST_CASE("gradient projection step") {
  StrategyProfile x;
  x.blocks = {Block::power(RVector::Constant(3, 1.0)), Block::power(RVector::Constant(2, 0.5))};
  x.budgets = {5.0, 2.0};

  // A zero gradient leaves the iterate where it is.
  const auto same = gradient_projection_step(x, {x.blocks[0].zeros_like(), x.blocks[1].zeros_like()}, 0.5);
  CHECK((same.blocks[0].vec - x.blocks[0].vec).norm() == 0.0);
  CHECK((same.blocks[1].vec - x.blocks[1].vec).norm() == 0.0);

  // A step that stays inside is plain gradient ascent.
  const Block g0 = Block::power(RVector::LinSpaced(3, 0.1, 0.3));
  const auto inside = gradient_projection_step(x, {g0, x.blocks[1].zeros_like()}, 0.5);
  CHECK((inside.blocks[0].vec - (x.blocks[0].vec + 0.5 * g0.vec)).norm() <= 1e-15);

  CHECK_THROWS_AS(gradient_projection_step(x, {g0, g0}, 0.0), ParameterError);
  CHECK_THROWS_AS(gradient_projection_step(x, {g0}, 0.5), ContractError);
}

TEST_CASE("gradient projection matches the projection oracle") {
  std::mt19937_64 rng(80);
  for (int rep = 0; rep < 50; ++rep) {
    StrategyProfile x;
    const CMatrix g = oracle::randn_complex(rng, 3, 3);
    x.blocks = {Block::covariance(oracle::herm(g * g.adjoint()) * 0.1)};
    x.budgets = {2.0};
    if (x.blocks[0].mat.trace().real() > 2.0) x.blocks[0].mat *= 1.0 / x.blocks[0].mat.trace().real();
    const Block d = Block::covariance(oracle::herm(3.0 * oracle::randn_complex(rng, 3, 3)));
    const auto next = gradient_projection_step(x, {d}, 0.7);
    const CMatrix ref = oracle::project_psd_trace(x.blocks[0].mat + 0.7 * d.mat, 2.0);
    CHECK(linalg::max_abs(next.blocks[0].mat - ref) <= 1e-12);

    RVector p = RVector::Random(4).cwiseAbs();
    StrategyProfile v;
    v.blocks = {Block::power(p / p.sum())};
    v.budgets = {1.0};
    const RVector dv = 2.0 * RVector::Random(4);
    const auto nv = gradient_projection_step(v, {Block::power(dv)}, 0.3);
    CHECK((nv.blocks[0].vec - oracle::project_capped_simplex(v.blocks[0].vec + 0.3 * dv, 1.0)).norm() <= 1e-13);
  }
}

TEST_CASE("conditional gradient settings") {
  const auto s = conditional_gradient_schedule();
  CHECK(s.gamma(1) == 1.0);
  CHECK(s.rho(0) == 1.0);
  CHECK(s.gamma(3) == doctest::Approx(std::pow(5.0, -0.91)).epsilon(1e-14));
  CHECK(s.rho(3) == doctest::Approx(std::pow(5.0, -0.9)).epsilon(1e-14));
  CHECK(validate_schedule(s, 1000).valid());
  const auto p = conditional_gradient_policy();
  CHECK(p.kind == SurrogateKind::ConditionalGradient);
  CHECK(p.tau_min() == 0.0);
}

TEST_CASE("gradient projection run") {
  const siso::Problem prob(siso::ChannelProcess(4, 16, 0.2, 3), 10.0);
  const auto traj = run_gradient_projection(prob, 5, 200);
  REQUIRE(traj.records.size() == 201);
  for (const auto& r : traj.records) CHECK(is_feasible(r.x));
  for (std::size_t k = 0; k < traj.records.size(); ++k) CHECK(traj.records[k].t == static_cast<long>(k));

  // Same seed, same trajectory.
  const auto again = run_gradient_projection(prob, 5, 200);
  CHECK((again.final_point.blocks[2].vec - traj.final_point.blocks[2].vec).norm() == 0.0);

  // Mean utility on a common evaluation set improves over the initial point.
  auto mean_rate = [&](const StrategyProfile& x) {
    double s = 0.0;
    for (long k = 0; k < 200; ++k) s += prob.utility(x, prob.process().eval_sample(9, k));
    return s / 200.0;
  };
  CHECK(mean_rate(traj.final_point) > mean_rate(prob.initial_point()));
}
