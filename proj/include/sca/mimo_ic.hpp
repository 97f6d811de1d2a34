#pragma once

// Sum-rate maximization over MIMO interference channels with transmit
// covariance matrices Q_i ⪰ 0, tr Q_i ≤ P_i.

#include <cstdint>
#include <vector>

#include "sca/driver.hpp"
#include "sca/logdet_solver.hpp"
#include "sca/rng.hpp"
#include "sca/strategy.hpp"

namespace sca::mimo {

/// H(i, j): rx_i × tx_j channel from transmitter j to receiver i.
struct ChannelSample {
  std::size_t users = 0;
  std::vector<CMatrix> H;   // row-major over (i, j)
  std::vector<CMatrix> RN;  // per receiver, positive definite

  const CMatrix& h(std::size_t i, std::size_t j) const { return H[i * users + j]; }
  CMatrix& h(std::size_t i, std::size_t j) { return H[i * users + j]; }
};

/// (P/n)·I for every user.
StrategyProfile scaled_identity(std::size_t users, Eigen::Index tx, double budget);

/// R_i = R_{N,i} + Σ_{j≠i} H_ij Q_j H_ijᴴ.
CMatrix interference_covariance(const StrategyProfile& Q, const ChannelSample& H, std::size_t i);

/// logdet(I + H_ii Q_i H_iiᴴ R_i⁻¹), computed as a difference of log-dets.
double rate_user(const StrategyProfile& Q, const ChannelSample& H, std::size_t i);
double sum_rate(const StrategyProfile& Q, const ChannelSample& H);

/// Π_i = Σ_{j≠i} H_jiᴴ[(R_j + H_jj Q_j H_jjᴴ)⁻¹ − R_j⁻¹]H_ji, negative semidefinite.
CMatrix pricing(const StrategyProfile& Q, const ChannelSample& H, std::size_t i);
/// H_iiᴴ(R_i + H_ii Q_i H_iiᴴ)⁻¹H_ii.
CMatrix own_gradient(const StrategyProfile& Q, const ChannelSample& H, std::size_t i);
/// Conjugate gradient of the sum-rate with respect to Q_i.
CMatrix sum_rate_gradient(const StrategyProfile& Q, const ChannelSample& H, std::size_t i);

/// (1 − ρ)F_prev + ρ(Π_i + own gradient).
CMatrix accumulate_F(const CMatrix& F_prev, const StrategyProfile& Q, const ChannelSample& H,
                     double rho, std::size_t i);

/// The log-det problem whose maximizer is user i's best response
///   weight·r_i(X, Q_{−i}) + ⟨A, X − Q_i⟩ − τ‖X − Q_i‖².
LogdetProblem best_response_problem(const StrategyProfile& Q, const ChannelSample& H,
                                    const CMatrix& A, double weight, double tau, std::size_t i);

/// Pricing best response with A = ρΠ_i + (1 − ρ)F_prev and weight ρ.
CMatrix best_response_dual_newton(const StrategyProfile& Q, const ChannelSample& H,
                                  const CMatrix& F_prev, double rho, double tau, std::size_t i,
                                  DualNewtonResult* diagnostics = nullptr,
                                  const DualNewtonOptions& opts = {});

/// [Q_t + (F − μI)/(2τ)]⁺ with the trace multiplier μ.
CMatrix best_response_proximal_gradient(const CMatrix& Q_t, const CMatrix& F, double tau,
                                        double budget);

/// Base draw plus a Gaussian perturbation per iteration, unit noise covariance.
class ChannelProcess {
 public:
  ChannelProcess(std::size_t users, Eigen::Index rx, Eigen::Index tx, double delta,
                 std::uint64_t base_seed);

  const ChannelSample& base() const { return base_; }
  ChannelSample sample(std::uint64_t seed, long t) const;
  ChannelSample eval_sample(std::uint64_t seed, long k) const;
  Eigen::Index rx() const { return rx_; }
  Eigen::Index tx() const { return tx_; }
  double delta() const { return delta_; }

 private:
  ChannelSample perturbed(std::uint64_t seed, Stream stream, long counter) const;

  ChannelSample base_;
  Eigen::Index rx_;
  Eigen::Index tx_;
  double delta_;
};

/// Adapter for the generic driver: pricing (own rate kept, solved by the
/// dual Newton method) or full linearization (closed-form projection).
class Problem {
 public:
  using Sample = ChannelSample;

  Problem(ChannelProcess process, double budget, DualNewtonOptions opts = {});

  std::size_t num_users() const { return process_.base().users; }
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
  double surrogate_value(const Surrogate& sur, const StrategyProfile& x, const Sample& s,
                         const Block& y) const;

 private:
  ChannelProcess process_;
  double budget_;
  DualNewtonOptions opts_;
};

}  // namespace sca::mimo
