#pragma once

// Small problems with known solutions, used to exercise the driver and the
// surrogate policies.

#include <cstdint>

#include "sca/driver.hpp"

namespace sca::toy {

/// One scalar user on [−1, 1] maximizing E[x⁴ − ξx²] with ξ ≥ 0 random.
/// The difference-of-convex surrogate keeps the concave −ξx² and linearizes x⁴.
class DcProblem {
 public:
  struct Sample {
    double xi = 1.0;
  };

  DcProblem(double xi_mean, double xi_spread, double start = 0.5);

  std::size_t num_users() const { return 1; }
  StrategyProfile initial_point() const;
  Sample sample(std::uint64_t seed, long t) const;
  KeptTerms kept_terms(SurrogateKind kind) const;
  double prox_scale(SurrogateKind) const { return 1.0; }
  Block linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                      std::size_t i) const;
  Block tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const;
  Block solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const;
  double utility(const StrategyProfile& x, const Sample& s) const;
  double surrogate_value(const Surrogate& sur, const StrategyProfile& x, const Sample& s,
                         const Block& y) const;

 private:
  double xi_mean_;
  double xi_spread_;
  double start_;
};

/// One user with powers p ≥ 0, Σp ≤ P maximizing −E‖p − c‖², where the target
/// c is observed with additive Gaussian noise of level `noise`. The maximizer
/// is the projection of the mean target onto the feasible set.
class QuadraticProblem {
 public:
  using Sample = RVector;  // the observed target

  QuadraticProblem(RVector target, double budget, double noise);

  std::size_t num_users() const { return 1; }
  const RVector& target() const { return target_; }
  double budget() const { return budget_; }
  RVector optimum() const;

  StrategyProfile initial_point() const;
  Sample sample(std::uint64_t seed, long t) const;
  KeptTerms kept_terms(SurrogateKind kind) const;
  double prox_scale(SurrogateKind) const { return 1.0; }
  Block linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                      std::size_t i) const;
  Block tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const;
  Block solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const;
  double utility(const StrategyProfile& x, const Sample& s) const;

 private:
  RVector target_;
  double budget_;
  double noise_;
};

}  // namespace sca::toy
