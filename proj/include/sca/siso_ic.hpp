#pragma once

// Sum-rate maximization over frequency-selective SISO interference channels.
// Rates are in nats. Users transmit on N parallel subchannels under a sum
// power budget.

#include <cstdint>
#include <vector>

#include "sca/driver.hpp"
#include "sca/linalg.hpp"
#include "sca/rng.hpp"
#include "sca/strategy.hpp"

namespace sca::siso {

using linalg::Complex;

/// h(i, j, n): coefficient from transmitter j to receiver i on subchannel n.
struct ChannelSample {
  std::size_t users = 0;
  std::size_t subchannels = 0;
  std::vector<Complex> h;
  std::vector<double> g;       // |h|², same layout
  std::vector<double> sigma2;  // per (receiver, subchannel)

  static ChannelSample zeros(std::size_t users, std::size_t subchannels, double noise = 1.0);
  /// Builds from coefficients; gains are derived.
  static ChannelSample from_coefficients(std::size_t users, std::size_t subchannels,
                                         std::vector<Complex> h, std::vector<double> sigma2);

  std::size_t index(std::size_t i, std::size_t j, std::size_t n) const {
    return (i * users + j) * subchannels + n;
  }
  Complex coef(std::size_t i, std::size_t j, std::size_t n) const { return h[index(i, j, n)]; }
  double gain(std::size_t i, std::size_t j, std::size_t n) const { return g[index(i, j, n)]; }
  double noise(std::size_t i, std::size_t n) const { return sigma2[i * subchannels + n]; }
  /// Overwrites one coefficient and its gain.
  void set(std::size_t i, std::size_t j, std::size_t n, Complex value);
};

/// Uniform power P/N on every subchannel.
StrategyProfile uniform_power(std::size_t users, std::size_t subchannels, double budget);

/// σ²_{i,n} + Σ_{j≠i} |h_{ij,n}|² p_{j,n}, as a users × subchannels array.
linalg::RMatrix interference(const StrategyProfile& p, const ChannelSample& h);

double rate_user(const StrategyProfile& p, const ChannelSample& h, std::size_t i);
double sum_rate(const StrategyProfile& p, const ChannelSample& h);

/// π_{i,n} = Σ_{j≠i} ∂r_j/∂p_{i,n}; every entry is ≤ 0.
RVector pricing(const StrategyProfile& p, const ChannelSample& h, std::size_t i);
/// ∂r_i/∂p_{i,n}.
RVector own_gradient(const StrategyProfile& p, const ChannelSample& h, std::size_t i);
/// Full sample gradient of the sum-rate with respect to each user's powers.
std::vector<RVector> sample_sum_grad(const StrategyProfile& p, const ChannelSample& h);

struct BestResponseInfo {
  double mu = 0.0;
  int iterations = 0;
};

/// Maximizer over the user's power set of
///   weight·r_i(q, p_{−i}) + ⟨linear, q⟩ − (tau/2)‖q − p_i‖²,
/// per subchannel a scalar waterfilling, coupled through the budget
/// multiplier found by bisection.
RVector best_response_linear(const StrategyProfile& p, const ChannelSample& h,
                             const RVector& linear, double weight, double tau, std::size_t i,
                             BestResponseInfo* info = nullptr);

/// Pricing best response with linear term ρ·π_i + (1 − ρ)·f_prev.
RVector best_response(const StrategyProfile& p, const ChannelSample& h, const RVector& f_prev,
                      double rho, double tau, std::size_t i, BestResponseInfo* info = nullptr);

/// Objective of best_response_linear at q.
double best_response_objective(const StrategyProfile& p, const ChannelSample& h,
                               const RVector& linear, double weight, double tau, std::size_t i,
                               const RVector& q);

/// Fixed base draw plus a Gaussian perturbation per iteration:
/// h^t = h + delta·(randn + i·randn), unit noise variance.
class ChannelProcess {
 public:
  ChannelProcess(std::size_t users, std::size_t subchannels, double delta, std::uint64_t base_seed);

  const ChannelSample& base() const { return base_; }
  ChannelSample sample(std::uint64_t seed, long t) const;
  /// Member k of the fixed evaluation set.
  ChannelSample eval_sample(std::uint64_t seed, long k) const;
  double delta() const { return delta_; }

 private:
  ChannelSample perturbed(std::uint64_t seed, Stream stream, long counter) const;

  ChannelSample base_;
  double delta_;
};

/// Adapter for the generic driver. Supports the pricing surrogate (own rate
/// kept, proximal weight τ/2) and full linearization (proximal weight τ).
class Problem {
 public:
  using Sample = ChannelSample;

  Problem(ChannelProcess process, double budget);

  std::size_t num_users() const { return process_.base().users; }
  std::size_t subchannels() const { return process_.base().subchannels; }
  double budget() const { return budget_; }
  const ChannelProcess& process() const { return process_; }

  StrategyProfile initial_point() const;
  Sample sample(std::uint64_t seed, long t) const { return process_.sample(seed, t); }
  KeptTerms kept_terms(SurrogateKind kind) const;
  double prox_scale(SurrogateKind kind) const;
  Block linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                      std::size_t i) const;
  Block tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const;
  Block solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const;
  double utility(const StrategyProfile& x, const Sample& s) const { return sum_rate(x, s); }
  double surrogate_value(const Surrogate& sur, const StrategyProfile& x, const Sample& s,
                         const Block& y) const;

 private:
  ChannelProcess process_;
  double budget_;
};

}  // namespace sca::siso
