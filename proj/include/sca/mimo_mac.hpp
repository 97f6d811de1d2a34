#pragma once

// Sum-rate maximization over the MIMO multiple-access channel. The sum-rate
// logdet(R_N + Σ_i H_i Q_i H_iᴴ) is jointly concave in the covariances.

#include <cstdint>
#include <vector>

#include "sca/driver.hpp"
#include "sca/logdet_solver.hpp"
#include "sca/rng.hpp"
#include "sca/strategy.hpp"

namespace sca::mac {

using linalg::CMatrix;

struct ChannelSample {
  std::vector<CMatrix> H;  // rx × tx_i per user
  CMatrix RN;              // positive definite
};

/// logdet(R_N + Σ_i H_i Q_i H_iᴴ).
double sum_rate(const StrategyProfile& Q, const ChannelSample& H);
/// H_iᴴ(R_N + Σ_j H_j Q_j H_jᴴ)⁻¹H_i.
CMatrix gradient(const StrategyProfile& Q, const ChannelSample& H, std::size_t i);

/// Maximizer over user i's covariances of
///   ρ·r(Q_i, Q_{−i}) + (1 − ρ)⟨Q_i − Q_i^t, F_prev⟩ − τ‖Q_i − Q_i^t‖²,
/// solved by the log-det dual Newton method against the noise plus the other
/// users' signals.
CMatrix best_response(const StrategyProfile& Q, const ChannelSample& H, const CMatrix& F_prev,
                      double rho, double tau, std::size_t i,
                      mimo::DualNewtonResult* diagnostics = nullptr,
                      const mimo::DualNewtonOptions& opts = {});

class ChannelProcess {
 public:
  ChannelProcess(std::size_t users, Eigen::Index rx, Eigen::Index tx, double delta,
                 std::uint64_t base_seed);

  const ChannelSample& base() const { return base_; }
  ChannelSample sample(std::uint64_t seed, long t) const;
  ChannelSample eval_sample(std::uint64_t seed, long k) const;
  Eigen::Index tx() const { return tx_; }

 private:
  ChannelSample perturbed(std::uint64_t seed, Stream stream, long counter) const;

  ChannelSample base_;
  Eigen::Index rx_;
  Eigen::Index tx_;
  double delta_;
};

/// Adapter for the generic driver. The whole sum-rate is kept by the
/// single-convex surrogate; full linearization is also available.
class Problem {
 public:
  using Sample = ChannelSample;

  Problem(ChannelProcess process, double budget, mimo::DualNewtonOptions opts = {});

  std::size_t num_users() const { return process_.base().H.size(); }
  double budget() const { return budget_; }
  const ChannelProcess& process() const { return process_; }

  StrategyProfile initial_point() const;
  Sample sample(std::uint64_t seed, long t) const { return process_.sample(seed, t); }
  KeptTerms kept_terms(SurrogateKind kind) const;
  double prox_scale(SurrogateKind) const { return 1.0; }
  Block linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                      std::size_t i) const;
  Block tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const;
  Block solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const;
  double utility(const StrategyProfile& x, const Sample& s) const { return sum_rate(x, s); }

 private:
  ChannelProcess process_;
  double budget_;
  mimo::DualNewtonOptions opts_;
};

}  // namespace sca::mac
