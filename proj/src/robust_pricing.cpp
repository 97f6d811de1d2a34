#include "sca/robust_pricing.hpp"

#include <vector>

#include "sca/errors.hpp"
#include "sca/rng.hpp"

namespace sca::robust {

CMatrix make_noisy_price(const CMatrix& exact, double delta, std::uint64_t seed, long t,
                         std::size_t user) {
  if (!(delta >= 0.0)) throw ParameterError("price noise level must be nonnegative");
  if (delta == 0.0) return exact;
  Gaussian draw(seed, Stream::PriceNoise, static_cast<std::uint64_t>(t), user);
  const CMatrix g = draw.matrix(exact.rows(), exact.cols());
  return exact + delta * linalg::hermitize(g);
}

CMatrix plain_best_response(const StrategyProfile& Q, const mimo::ChannelSample& H, std::size_t i,
                            const CMatrix& prices, double tau,
                            const mimo::DualNewtonOptions& opts) {
  return mimo::solve_logdet_dual_newton(mimo::best_response_problem(Q, H, prices, 1.0, tau, i), opts)
      .X;
}

CMatrix robust_best_response(const StrategyProfile& Q, const mimo::ChannelSample& H,
                             std::size_t i, const CMatrix& noisy_prices, const CMatrix& f_prev,
                             double rho, double tau, const mimo::DualNewtonOptions& opts) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("robust best response: rho outside (0, 1]");
  const CMatrix A = rho * noisy_prices + (1.0 - rho) * f_prev;
  return plain_best_response(Q, H, i, A, tau, opts);
}

StepSchedule without_averaging(const StepSchedule& base, long horizon) {
  if (horizon < 1) throw ParameterError("without_averaging: horizon must be >= 1");
  std::vector<double> gamma;
  gamma.reserve(static_cast<std::size_t>(horizon));
  for (long t = 1; t <= horizon; ++t) gamma.push_back(base.gamma(t));
  return StepSchedule::explicit_sequences(std::move(gamma), {1.0});
}

Problem::Problem(mimo::ChannelSample channel, double budget, double price_delta, PriceMode mode,
                 mimo::DualNewtonOptions opts)
    : channel_(std::move(channel)),
      budget_(budget),
      price_delta_(price_delta),
      mode_(mode),
      opts_(opts) {
  if (!(budget > 0.0)) throw ParameterError("power budget must be positive");
  if (!(price_delta >= 0.0)) throw ParameterError("price noise level must be nonnegative");
}

StrategyProfile Problem::initial_point() const {
  return mimo::scaled_identity(num_users(), channel_.h(0, 0).cols(), budget_);
}

KeptTerms Problem::kept_terms(SurrogateKind kind) const {
  if (kind != SurrogateKind::Pricing)
    throw ConfigError("robust pricing only supports the pricing surrogate, got " + to_string(kind));
  return KeptTerms::Own;
}

CMatrix Problem::price(const StrategyProfile& x, const Sample& s, std::size_t i) const {
  const CMatrix exact = mimo::pricing(x, channel_, i);
  if (mode_ == PriceMode::PlainExact) return exact;
  return make_noisy_price(exact, price_delta_, s.seed, s.t, i);
}

Block Problem::linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                             std::size_t i) const {
  kept_terms(kind);
  return Block::covariance(price(x, s, i));
}

Block Problem::tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const {
  return Block::covariance(price(x, s, i));
}

Block Problem::solve(const Surrogate& sur, const StrategyProfile& x, const Sample&) const {
  return Block::covariance(plain_best_response(x, channel_, sur.user, sur.linear.mat,
                                               sur.prox_weight, opts_));
}

}  // namespace sca::robust
