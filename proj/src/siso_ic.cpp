#include "sca/siso_ic.hpp"

#include <algorithm>
#include <cmath>

#include "sca/errors.hpp"

namespace sca::siso {

ChannelSample ChannelSample::zeros(std::size_t users, std::size_t subchannels, double noise) {
  if (users == 0 || subchannels == 0) throw ParameterError("SISO channel needs users and subchannels");
  if (!(noise > 0.0)) throw ParameterError("noise variance must be positive");
  ChannelSample s;
  s.users = users;
  s.subchannels = subchannels;
  s.h.assign(users * users * subchannels, Complex(0.0, 0.0));
  s.g.assign(s.h.size(), 0.0);
  s.sigma2.assign(users * subchannels, noise);
  return s;
}

ChannelSample ChannelSample::from_coefficients(std::size_t users, std::size_t subchannels,
                                               std::vector<Complex> h, std::vector<double> sigma2) {
  if (h.size() != users * users * subchannels || sigma2.size() != users * subchannels)
    throw ContractError("SISO channel: coefficient array has the wrong size");
  for (double v : sigma2)
    if (!(v > 0.0)) throw ParameterError("noise variance must be positive");
  ChannelSample s;
  s.users = users;
  s.subchannels = subchannels;
  s.h = std::move(h);
  s.sigma2 = std::move(sigma2);
  s.g.resize(s.h.size());
  for (std::size_t k = 0; k < s.h.size(); ++k) s.g[k] = std::norm(s.h[k]);
  return s;
}

void ChannelSample::set(std::size_t i, std::size_t j, std::size_t n, Complex value) {
  h[index(i, j, n)] = value;
  g[index(i, j, n)] = std::norm(value);
}

StrategyProfile uniform_power(std::size_t users, std::size_t subchannels, double budget) {
  StrategyProfile p;
  for (std::size_t i = 0; i < users; ++i) {
    p.blocks.push_back(
        Block::power(RVector::Constant(static_cast<Eigen::Index>(subchannels),
                                       budget / static_cast<double>(subchannels))));
    p.budgets.push_back(budget);
  }
  return p;
}

namespace {

void check_shapes(const StrategyProfile& p, const ChannelSample& h) {
  if (p.size() != h.users) throw ContractError("SISO: profile and channel disagree on users");
  for (const Block& b : p.blocks)
    if (b.kind != BlockKind::Power || static_cast<std::size_t>(b.vec.size()) != h.subchannels)
      throw ContractError("SISO: power block has the wrong shape");
}

double power(const StrategyProfile& p, std::size_t i, std::size_t n) {
  return p.blocks[i].vec(static_cast<Eigen::Index>(n));
}

}  // namespace

linalg::RMatrix interference(const StrategyProfile& p, const ChannelSample& h) {
  check_shapes(p, h);
  const std::size_t I = h.users, N = h.subchannels;
  linalg::RMatrix mui(I, N);
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t n = 0; n < N; ++n) {
      double v = h.noise(i, n);
      for (std::size_t j = 0; j < I; ++j)
        if (j != i) v += h.gain(i, j, n) * power(p, j, n);
      mui(i, n) = v;
    }
  return mui;
}

namespace {

double rate_from(const linalg::RMatrix& mui, const StrategyProfile& p, const ChannelSample& h,
                 std::size_t i) {
  double r = 0.0;
  for (std::size_t n = 0; n < h.subchannels; ++n)
    r += std::log1p(h.gain(i, i, n) * power(p, i, n) / mui(i, n));
  return r;
}

}  // namespace

double rate_user(const StrategyProfile& p, const ChannelSample& h, std::size_t i) {
  return rate_from(interference(p, h), p, h, i);
}

double sum_rate(const StrategyProfile& p, const ChannelSample& h) {
  const linalg::RMatrix mui = interference(p, h);
  double total = 0.0;
  for (std::size_t i = 0; i < h.users; ++i) total += rate_from(mui, p, h, i);
  return total;
}

namespace {

RVector pricing_from(const linalg::RMatrix& mui, const StrategyProfile& p, const ChannelSample& h,
                     std::size_t i) {
  RVector pi = RVector::Zero(static_cast<Eigen::Index>(h.subchannels));
  for (std::size_t n = 0; n < h.subchannels; ++n) {
    double v = 0.0;
    for (std::size_t j = 0; j < h.users; ++j) {
      if (j == i) continue;
      // SINR_j / ((1 + SINR_j)·MUI_j) written without forming SINR.
      const double signal = h.gain(j, j, n) * power(p, j, n);
      v -= h.gain(j, i, n) * signal / (mui(j, n) * (mui(j, n) + signal));
    }
    pi(static_cast<Eigen::Index>(n)) = v;
  }
  return pi;
}

RVector own_gradient_from(const linalg::RMatrix& mui, const StrategyProfile& p,
                          const ChannelSample& h, std::size_t i) {
  RVector g(static_cast<Eigen::Index>(h.subchannels));
  for (std::size_t n = 0; n < h.subchannels; ++n)
    g(static_cast<Eigen::Index>(n)) = h.gain(i, i, n) / (mui(i, n) + h.gain(i, i, n) * power(p, i, n));
  return g;
}

}  // namespace

RVector pricing(const StrategyProfile& p, const ChannelSample& h, std::size_t i) {
  return pricing_from(interference(p, h), p, h, i);
}

RVector own_gradient(const StrategyProfile& p, const ChannelSample& h, std::size_t i) {
  return own_gradient_from(interference(p, h), p, h, i);
}

std::vector<RVector> sample_sum_grad(const StrategyProfile& p, const ChannelSample& h) {
  const linalg::RMatrix mui = interference(p, h);
  std::vector<RVector> out;
  out.reserve(h.users);
  for (std::size_t i = 0; i < h.users; ++i)
    out.push_back(pricing_from(mui, p, h, i) + own_gradient_from(mui, p, h, i));
  return out;
}

RVector best_response_linear(const StrategyProfile& p, const ChannelSample& h,
                             const RVector& linear, double weight, double tau, std::size_t i,
                             BestResponseInfo* info) {
  check_shapes(p, h);
  const auto N = static_cast<Eigen::Index>(h.subchannels);
  if (linear.size() != N) throw ContractError("SISO best response: linear term has the wrong size");
  if (!(weight >= 0.0) || !(tau >= 0.0)) throw ParameterError("SISO best response: negative weight");
  if (weight == 0.0 && tau == 0.0)
    throw ParameterError("SISO best response: needs a positive rate weight or proximal weight");

  const linalg::RMatrix mui = interference(p, h);
  const RVector& anchor = p.blocks[i].vec;
  const double budget = p.budgets[i];
  // Own-channel slope |h_ii|²/MUI_i, the analytic limit of SINR/p at p = 0.
  RVector slope(N), offset(N);
  for (Eigen::Index n = 0; n < N; ++n) {
    const auto un = static_cast<std::size_t>(n);
    slope(n) = h.gain(i, i, un) / mui(static_cast<Eigen::Index>(i), n);
    offset(n) = linear(n) + tau * anchor(n);
  }

  RVector q(N);
  auto fill = [&](double mu) {
    double total = 0.0;
    for (Eigen::Index n = 0; n < N; ++n) {
      q(n) = linalg::waterfill_root(weight, slope(n), tau, offset(n) - mu);
      total += q(n);
    }
    return total;
  };

  BestResponseInfo local;
  if (fill(0.0) <= budget) {
    if (info) *info = local;
    return q;
  }

  double lo = 0.0;
  double hi = std::max(0.0, offset.maxCoeff()) + weight * slope.maxCoeff() + tau * budget;
  if (!(hi > 0.0)) hi = 1.0;
  int expansions = 0;
  while (fill(hi) > budget) {
    if (++expansions > 60) throw BracketError("SISO best response: multiplier bracket failed");
    lo = hi;
    hi *= 2.0;
  }
  fill(hi);
  RVector q_hi = q;
  int it = 0;
  for (; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double total = fill(mid);
    if (total > budget) {
      lo = mid;
    } else {
      hi = mid;
      q_hi = q;
      if (budget - total <= 1e-14 * budget) break;
    }
  }
  local.mu = hi;
  local.iterations = it;
  if (info) *info = local;
  return q_hi;
}

RVector best_response(const StrategyProfile& p, const ChannelSample& h, const RVector& f_prev,
                      double rho, double tau, std::size_t i, BestResponseInfo* info) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("SISO best response: rho outside (0, 1]");
  const RVector linear = rho * pricing(p, h, i) + (1.0 - rho) * f_prev;
  return best_response_linear(p, h, linear, rho, tau, i, info);
}

double best_response_objective(const StrategyProfile& p, const ChannelSample& h,
                               const RVector& linear, double weight, double tau, std::size_t i,
                               const RVector& q) {
  StrategyProfile trial = p;
  trial.blocks[i].vec = q;
  const RVector step = q - p.blocks[i].vec;
  return weight * rate_user(trial, h, i) + linear.dot(step) - 0.5 * tau * step.squaredNorm();
}

ChannelProcess::ChannelProcess(std::size_t users, std::size_t subchannels, double delta,
                               std::uint64_t base_seed)
    : base_(ChannelSample::zeros(users, subchannels)), delta_(delta) {
  if (!(delta >= 0.0)) throw ParameterError("channel perturbation level must be nonnegative");
  Gaussian draw(base_seed, Stream::BaseChannel, 0);
  for (std::size_t k = 0; k < base_.h.size(); ++k) {
    base_.h[k] = draw.complex();
    base_.g[k] = std::norm(base_.h[k]);
  }
}

ChannelSample ChannelProcess::perturbed(std::uint64_t seed, Stream stream, long counter) const {
  if (delta_ == 0.0) return base_;
  ChannelSample s = base_;
  Gaussian draw(seed, stream, static_cast<std::uint64_t>(counter));
  for (std::size_t k = 0; k < s.h.size(); ++k) {
    s.h[k] += delta_ * draw.complex();
    s.g[k] = std::norm(s.h[k]);
  }
  return s;
}

ChannelSample ChannelProcess::sample(std::uint64_t seed, long t) const {
  return perturbed(seed, Stream::Perturbation, t);
}

ChannelSample ChannelProcess::eval_sample(std::uint64_t seed, long k) const {
  return perturbed(seed, Stream::Evaluation, k);
}

Problem::Problem(ChannelProcess process, double budget)
    : process_(std::move(process)), budget_(budget) {
  if (!(budget > 0.0)) throw ParameterError("power budget must be positive");
}

StrategyProfile Problem::initial_point() const {
  return uniform_power(num_users(), subchannels(), budget_);
}

KeptTerms Problem::kept_terms(SurrogateKind kind) const {
  switch (kind) {
    case SurrogateKind::ConditionalGradient: return KeptTerms::None;
    case SurrogateKind::Pricing: return KeptTerms::Own;
    default:
      throw ConfigError("SISO interference channel: the sum-rate is not concave per user, " +
                        to_string(kind) + " surrogate is not available");
  }
}

double Problem::prox_scale(SurrogateKind kind) const {
  // The pricing best response uses (τ/2)‖·‖²; full linearization uses τ‖·‖².
  return kind == SurrogateKind::Pricing ? 0.5 : 1.0;
}

Block Problem::linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                             std::size_t i) const {
  const linalg::RMatrix mui = interference(x, s);
  RVector g = pricing_from(mui, x, s, i);
  if (kept_terms(kind) == KeptTerms::None) g += own_gradient_from(mui, x, s, i);
  return Block::power(std::move(g));
}

Block Problem::tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const {
  const linalg::RMatrix mui = interference(x, s);
  return Block::power(pricing_from(mui, x, s, i) + own_gradient_from(mui, x, s, i));
}

Block Problem::solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const {
  if (sur.kept != KeptTerms::Own) throw ConfigError("SISO: unsupported surrogate");
  return Block::power(
      best_response_linear(x, s, sur.linear.vec, sur.rho, 2.0 * sur.prox_weight, sur.user));
}

double Problem::surrogate_value(const Surrogate& sur, const StrategyProfile& x, const Sample& s,
                                const Block& y) const {
  const RVector step = y.vec - x.blocks[sur.user].vec;
  double v = sur.linear.vec.dot(step) - sur.prox_weight * step.squaredNorm();
  if (sur.kept == KeptTerms::Own) {
    StrategyProfile trial = x;
    trial.blocks[sur.user] = y;
    v += sur.rho * rate_user(trial, s, sur.user);
  }
  return v;
}

}  // namespace sca::siso
