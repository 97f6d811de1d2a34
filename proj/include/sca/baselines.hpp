#pragma once

// Comparison methods: stochastic conditional gradient (the driver with a fully
// linearized surrogate) and stochastic gradient projection.

#include <chrono>
#include <cstdint>
#include <vector>

#include "sca/driver.hpp"

namespace sca::baselines {

/// ρ^t = 1/(t+2)^0.9, γ^t = 1/(t+2)^0.91.
StepSchedule conditional_gradient_schedule();
/// Full linearization; τ = 0 picks a maximizing vertex of the linear model.
SurrogatePolicy conditional_gradient_policy(double tau = 0.0);

/// Diminishing stepsize γ¹ = 1, γ^t = γ^{t−1}(1 − decay·γ^{t−1}).
class RecursiveStepsize {
 public:
  explicit RecursiveStepsize(double decay = 1e-3);
  /// γ^t for t ≥ 1; values are cached, so successive calls are cheap.
  double operator()(long t);

 private:
  double decay_;
  std::vector<double> values_;
};

/// Projection of x_t + gamma·grad onto each user's feasible set (ascent).
StrategyProfile gradient_projection_step(const StrategyProfile& x_t,
                                         const std::vector<Block>& sample_grad, double gamma);

/// Stochastic gradient projection with the recursive stepsize. Records follow
/// the conventions of sca::run.
template <SeparableProblem P>
RunTrajectory run_gradient_projection(const P& problem, std::uint64_t seed, long T,
                                      const RunOptions& opts = {}, double decay = 1e-3) {
  using Clock = std::chrono::steady_clock;
  if (T < 0) throw ParameterError("run_gradient_projection: negative iteration budget");
  const std::size_t n = problem.num_users();
  RecursiveStepsize step(decay);
  RunTrajectory traj;
  traj.seed = seed;
  traj.schedule = "recursive(decay=" + std::to_string(decay) + ")";

  StrategyProfile x = problem.initial_point();
  require_feasible(x);
  auto sample = problem.sample(seed, 0);
  IterationRecord first;
  if (opts.keep_snapshots) first.x = x;
  first.objective = problem.utility(x, sample);
  if (opts.observer) opts.observer(first, x);
  traj.records.push_back(std::move(first));

  for (long t = 0; t < T; ++t) {
    const auto start = Clock::now();
    std::vector<Block> grads(n);
    parallel_for(n, opts.threads, [&](std::size_t i) {
      try {
        grads[i] = problem.tracked_gradient(x, sample, i);
      } catch (const std::exception& e) {
        throw SolverError(e.what(), t, i);
      }
    });
    const StrategyProfile next = gradient_projection_step(x, grads, step(t + 1));
    const double gap = stationarity_gap(x, next);
    x = next;
    sample = problem.sample(seed, t + 1);
    IterationRecord rec;
    rec.t = t + 1;
    rec.gap = gap;
    rec.objective = problem.utility(x, sample);
    if (opts.keep_snapshots) rec.x = x;
    rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (opts.observer) opts.observer(rec, x);
    traj.records.push_back(std::move(rec));
  }
  traj.final_point = std::move(x);
  return traj;
}

}  // namespace sca::baselines
