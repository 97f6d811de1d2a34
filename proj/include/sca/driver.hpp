#pragma once

// Parallel stochastic best-response iteration over separable multi-user
// problems. Each iteration draws a sample, solves every user's strongly
// concave surrogate in parallel, moves the iterate toward the best responses
// and updates the running gradient averages.

#include <chrono>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sca/errors.hpp"
#include "sca/parallel.hpp"
#include "sca/schedule.hpp"
#include "sca/strategy.hpp"

namespace sca {

enum class SurrogateKind { ConditionalGradient, SingleConvex, Pricing, DC };

/// Which sample functions a surrogate keeps exactly (the rest is linearized).
enum class KeptTerms {
  None,         // full linearization
  Own,          // the user's own term f_i
  All,          // every term, which must then be concave in the user's block
  ConcavePart,  // concave component of a difference-of-convex split
};

std::string to_string(SurrogateKind kind);
std::string to_string(KeptTerms kept);

struct SurrogatePolicy {
  SurrogateKind kind = SurrogateKind::Pricing;
  /// Proximal weights; a single entry applies to every user.
  std::vector<double> tau{1e-8};

  double tau_for(std::size_t user) const;
  double tau_min() const;
};

/// Per-user convex subproblem: maximize over the user's feasible set
///   w·(kept terms at (y, x_{−i}^t)) + ⟨linear, y − anchor⟩ − prox_weight·‖y − anchor‖²
/// where the kept-term weight w is decided by the problem (ρ for the
/// stochastic schemes).
struct Surrogate {
  SurrogateKind kind = SurrogateKind::Pricing;
  KeptTerms kept = KeptTerms::Own;
  std::size_t user = 0;
  double rho = 1.0;
  double tau = 0.0;
  double prox_weight = 0.0;
  double budget = 0.0;
  Block linear;
  Block anchor;

  /// Modulus c in f̂(y) ≤ f̂(z) + ⟨∇f̂(z), y − z⟩ − c‖y − z‖².
  double strong_concavity() const { return prox_weight; }
};

template <class P>
concept SeparableProblem = requires(const P& p, const StrategyProfile& x,
                                    const typename P::Sample& s, std::size_t i, SurrogateKind k,
                                    const Surrogate& sur, std::uint64_t seed, long t) {
  typename P::Sample;
  { p.num_users() } -> std::convertible_to<std::size_t>;
  { p.initial_point() } -> std::convertible_to<StrategyProfile>;
  { p.sample(seed, t) } -> std::convertible_to<typename P::Sample>;
  // Throws ConfigError when the policy does not fit the problem.
  { p.kept_terms(k) } -> std::convertible_to<KeptTerms>;
  // Multiplier on τ in the proximal term.
  { p.prox_scale(k) } -> std::convertible_to<double>;
  // Gradient of the linearized terms with respect to user i's block.
  { p.linearization(k, x, s, i) } -> std::convertible_to<Block>;
  // Sample gradient fed to the running average.
  { p.tracked_gradient(x, s, i) } -> std::convertible_to<Block>;
  { p.solve(sur, x, s) } -> std::convertible_to<Block>;
  { p.utility(x, s) } -> std::convertible_to<double>;
};

template <SeparableProblem P>
Surrogate build_surrogate(const P& problem, const SurrogatePolicy& policy,
                          const StrategyProfile& x_t, const typename P::Sample& sample,
                          const Block& f_prev, double rho, std::size_t user) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("build_surrogate: rho outside [0, 1]");
  Surrogate s;
  s.kind = policy.kind;
  s.kept = problem.kept_terms(policy.kind);
  s.user = user;
  s.rho = rho;
  s.tau = policy.tau_for(user);
  s.prox_weight = s.tau * problem.prox_scale(policy.kind);
  s.budget = x_t.budgets.at(user);
  s.anchor = x_t.blocks.at(user);
  const Block price = problem.linearization(policy.kind, x_t, sample, user);
  s.linear = axpby(rho, price, 1.0 - rho, f_prev);
  return s;
}

/// Solves a surrogate; the fully linearized case is handled generically.
template <SeparableProblem P>
Block solve_surrogate(const P& problem, const Surrogate& sur, const StrategyProfile& x_t,
                      const typename P::Sample& sample) {
  if (sur.kept == KeptTerms::None)
    return maximize_linear_proximal(sur.linear, sur.anchor, sur.prox_weight, sur.budget);
  return problem.solve(sur, x_t, sample);
}

struct IterationRecord {
  long t = 0;
  StrategyProfile x;  // empty when snapshots are disabled
  double gap = 0.0;   // ‖x̂^{t−1} − x^{t−1}‖ from the step that produced x^t
  double objective = std::numeric_limits<double>::quiet_NaN();  // utility(x^t, ξ^t)
  double wall_ms = 0.0;
};

struct RunOptions {
  int threads = 1;
  bool keep_snapshots = true;
  /// Stop early once the stationarity gap falls below this value (0 disables).
  double gap_tolerance = 0.0;
  // Called after every recorded iterate with the record and the iterate itself.
  std::function<void(const IterationRecord&, const StrategyProfile&)> observer;
};

struct RunTrajectory {
  std::vector<IterationRecord> records;  // records[0] is the initial point
  StrategyProfile final_point;
  GradientAccumulator accumulator;
  std::uint64_t seed = 0;
  std::string schedule;
  SurrogatePolicy policy;
};

template <SeparableProblem P>
RunTrajectory run(const P& problem, const StepSchedule& sched, const SurrogatePolicy& policy,
                  std::uint64_t seed, long T, const RunOptions& opts = {}) {
  using Clock = std::chrono::steady_clock;
  if (T < 0) throw ParameterError("run: negative iteration budget");
  const std::size_t n = problem.num_users();
  if (policy.tau_min() < 0.0) throw ParameterError("run: proximal weights must be nonnegative");
  problem.kept_terms(policy.kind);

  RunTrajectory traj;
  traj.seed = seed;
  traj.schedule = sched.describe();
  traj.policy = policy;

  StrategyProfile x = problem.initial_point();
  require_feasible(x);
  if (x.size() != n) throw ContractError("run: initial point has the wrong number of users");
  for (const Block& b : x.blocks) traj.accumulator.blocks.push_back(b.zeros_like());

  auto sample = problem.sample(seed, 0);
  IterationRecord first;
  first.t = 0;
  if (opts.keep_snapshots) first.x = x;
  first.objective = problem.utility(x, sample);
  if (opts.observer) opts.observer(first, x);
  traj.records.push_back(std::move(first));

  for (long t = 0; t < T; ++t) {
    const auto start = Clock::now();
    const double rho = sched.rho(t);
    const double gamma = sched.gamma(t + 1);

    StrategyProfile x_hat;
    x_hat.budgets = x.budgets;
    x_hat.blocks.resize(n);
    std::vector<Block> grads(n);
    parallel_for(n, opts.threads, [&](std::size_t i) {
      try {
        const Surrogate sur =
            build_surrogate(problem, policy, x, sample, traj.accumulator.blocks[i], rho, i);
        Block b = solve_surrogate(problem, sur, x, sample);
        const std::string why = feasibility_violation(b, x.budgets[i]);
        if (!why.empty()) throw InvariantViolation("best response infeasible: " + why);
        x_hat.blocks[i] = std::move(b);
        grads[i] = problem.tracked_gradient(x, sample, i);
      } catch (const SolverError&) {
        throw;
      } catch (const std::exception& e) {
        throw SolverError(e.what(), t, i);
      }
    });

    const double gap = stationarity_gap(x, x_hat);
    for (std::size_t i = 0; i < n; ++i)
      traj.accumulator.blocks[i] = accumulate_gradient(traj.accumulator.blocks[i], grads[i], rho);
    traj.accumulator.last_update = t;
    x = update_iterate(x, x_hat, gamma);

    sample = problem.sample(seed, t + 1);
    IterationRecord rec;
    rec.t = t + 1;
    rec.gap = gap;
    rec.objective = problem.utility(x, sample);
    if (opts.keep_snapshots) rec.x = x;
    rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (opts.observer) opts.observer(rec, x);
    traj.records.push_back(std::move(rec));

    if (opts.gap_tolerance > 0.0 && gap < opts.gap_tolerance) break;
  }
  traj.final_point = std::move(x);
  return traj;
}

}  // namespace sca
