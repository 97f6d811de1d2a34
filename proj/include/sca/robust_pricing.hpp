#pragma once

// Deterministic MIMO interference-channel sum-rate maximization when only
// noisy estimates of the price matrices are available. The robust variant
// averages the noisy prices over iterations; the plain variant uses the latest
// estimate directly.

#include <cstdint>

#include "sca/driver.hpp"
#include "sca/mimo_ic.hpp"

namespace sca::robust {

using linalg::CMatrix;

/// exact + delta·herm(G), G with independent standard complex Gaussian
/// entries drawn from (seed, t, user); herm(G) = (G + Gᴴ)/2.
CMatrix make_noisy_price(const CMatrix& exact, double delta, std::uint64_t seed, long t = 0,
                         std::size_t user = 0);

/// Maximizer of r_i(X, Q_{−i}) + ⟨X − Q_i, prices⟩ − τ‖X − Q_i‖².
CMatrix plain_best_response(const StrategyProfile& Q, const mimo::ChannelSample& H, std::size_t i,
                            const CMatrix& prices, double tau,
                            const mimo::DualNewtonOptions& opts = {});

/// Same with the averaged linear term ρ·noisy + (1 − ρ)·f_prev. The own rate
/// keeps unit weight.
CMatrix robust_best_response(const StrategyProfile& Q, const mimo::ChannelSample& H,
                             std::size_t i, const CMatrix& noisy_prices, const CMatrix& f_prev,
                             double rho, double tau, const mimo::DualNewtonOptions& opts = {});

enum class PriceMode { Robust, PlainNoisy, PlainExact };

/// γ from `base` up to `horizon`, with ρ ≡ 1 so that no averaging happens.
StepSchedule without_averaging(const StepSchedule& base, long horizon);

/// Adapter for the generic driver over a fixed channel. Each iteration's
/// "sample" only carries the iteration index that keys the price noise.
class Problem {
 public:
  struct Sample {
    std::uint64_t seed = 0;
    long t = 0;
  };

  Problem(mimo::ChannelSample channel, double budget, double price_delta, PriceMode mode,
          mimo::DualNewtonOptions opts = {});

  std::size_t num_users() const { return channel_.users; }
  const mimo::ChannelSample& channel() const { return channel_; }
  PriceMode mode() const { return mode_; }

  StrategyProfile initial_point() const;
  Sample sample(std::uint64_t seed, long t) const { return {seed, t}; }
  KeptTerms kept_terms(SurrogateKind kind) const;
  double prox_scale(SurrogateKind) const { return 1.0; }
  /// The price estimate seen by user i at this iteration.
  Block linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                      std::size_t i) const;
  Block tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const;
  Block solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const;
  double utility(const StrategyProfile& x, const Sample&) const {
    return mimo::sum_rate(x, channel_);
  }

 private:
  CMatrix price(const StrategyProfile& x, const Sample& s, std::size_t i) const;

  mimo::ChannelSample channel_;
  double budget_;
  double price_delta_;
  PriceMode mode_;
  mimo::DualNewtonOptions opts_;
};

}  // namespace sca::robust
