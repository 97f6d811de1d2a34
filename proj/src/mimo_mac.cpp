#include "sca/mimo_mac.hpp"

#include <cmath>

#include "sca/errors.hpp"
#include "sca/mimo_ic.hpp"

namespace sca::mac {

namespace {

void check_shapes(const StrategyProfile& Q, const ChannelSample& H) {
  if (Q.size() != H.H.size()) throw ContractError("MAC: profile and channel disagree on users");
  for (std::size_t i = 0; i < Q.size(); ++i)
    if (Q.blocks[i].kind != BlockKind::Covariance || Q.blocks[i].mat.rows() != H.H[i].cols() ||
        H.H[i].rows() != H.RN.rows())
      throw ContractError("MAC: covariance block does not match the channel");
}

CMatrix received_covariance(const StrategyProfile& Q, const ChannelSample& H, std::size_t skip) {
  CMatrix R = H.RN;
  for (std::size_t j = 0; j < Q.size(); ++j)
    if (j != skip) R += H.H[j] * Q.blocks[j].mat * H.H[j].adjoint();
  return linalg::hermitize(R);
}

}  // namespace

double sum_rate(const StrategyProfile& Q, const ChannelSample& H) {
  check_shapes(Q, H);
  Eigen::LLT<CMatrix> llt(received_covariance(Q, H, Q.size()));
  if (llt.info() != Eigen::Success) throw DefinitenessError("MAC covariance is not positive definite");
  double v = 0.0;
  for (Eigen::Index k = 0; k < H.RN.rows(); ++k) v += 2.0 * std::log(llt.matrixLLT()(k, k).real());
  return v;
}

CMatrix gradient(const StrategyProfile& Q, const ChannelSample& H, std::size_t i) {
  check_shapes(Q, H);
  const CMatrix cov = received_covariance(Q, H, Q.size());
  return linalg::hermitize(H.H[i].adjoint() * cov.llt().solve(H.H[i]));
}

CMatrix best_response(const StrategyProfile& Q, const ChannelSample& H, const CMatrix& F_prev,
                      double rho, double tau, std::size_t i, mimo::DualNewtonResult* diagnostics,
                      const mimo::DualNewtonOptions& opts) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("MAC best response: rho outside (0, 1]");
  check_shapes(Q, H);
  mimo::LogdetProblem p;
  p.R = received_covariance(Q, H, i);
  p.H = H.H[i];
  p.A = linalg::hermitize((1.0 - rho) * F_prev);
  p.Xbar = Q.blocks[i].mat;
  p.weight = rho;
  p.tau = tau;
  p.budget = Q.budgets[i];
  mimo::DualNewtonResult res = mimo::solve_logdet_dual_newton(p, opts);
  CMatrix X = res.X;
  if (diagnostics) *diagnostics = std::move(res);
  return X;
}

ChannelProcess::ChannelProcess(std::size_t users, Eigen::Index rx, Eigen::Index tx, double delta,
                               std::uint64_t base_seed)
    : rx_(rx), tx_(tx), delta_(delta) {
  if (users == 0 || rx <= 0 || tx <= 0) throw ParameterError("MAC channel needs users and antennas");
  if (!(delta >= 0.0)) throw ParameterError("channel perturbation level must be nonnegative");
  Gaussian draw(base_seed, Stream::BaseChannel, 0);
  for (std::size_t k = 0; k < users; ++k) base_.H.push_back(draw.matrix(rx, tx));
  base_.RN = CMatrix::Identity(rx, rx);
}

ChannelSample ChannelProcess::perturbed(std::uint64_t seed, Stream stream, long counter) const {
  if (delta_ == 0.0) return base_;
  ChannelSample s = base_;
  Gaussian draw(seed, stream, static_cast<std::uint64_t>(counter));
  for (CMatrix& h : s.H) h += delta_ * draw.matrix(rx_, tx_);
  return s;
}

ChannelSample ChannelProcess::sample(std::uint64_t seed, long t) const {
  return perturbed(seed, Stream::Perturbation, t);
}

ChannelSample ChannelProcess::eval_sample(std::uint64_t seed, long k) const {
  return perturbed(seed, Stream::Evaluation, k);
}

Problem::Problem(ChannelProcess process, double budget, mimo::DualNewtonOptions opts)
    : process_(std::move(process)), budget_(budget), opts_(opts) {
  if (!(budget > 0.0)) throw ParameterError("power budget must be positive");
}

StrategyProfile Problem::initial_point() const {
  return mimo::scaled_identity(num_users(), process_.tx(), budget_);
}

KeptTerms Problem::kept_terms(SurrogateKind kind) const {
  switch (kind) {
    case SurrogateKind::ConditionalGradient: return KeptTerms::None;
    case SurrogateKind::SingleConvex: return KeptTerms::All;
    default:
      throw ConfigError("MIMO MAC: " + to_string(kind) + " surrogate is not available");
  }
}

Block Problem::linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                             std::size_t i) const {
  if (kept_terms(kind) == KeptTerms::None) return Block::covariance(gradient(x, s, i));
  return x.blocks[i].zeros_like();
}

Block Problem::tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const {
  return Block::covariance(gradient(x, s, i));
}

Block Problem::solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const {
  if (sur.kept != KeptTerms::All) throw ConfigError("MAC: unsupported surrogate");
  mimo::LogdetProblem p;
  p.R = received_covariance(x, s, sur.user);
  p.H = s.H[sur.user];
  p.A = linalg::hermitize(sur.linear.mat);
  p.Xbar = x.blocks[sur.user].mat;
  p.weight = sur.rho;
  p.tau = sur.prox_weight;
  p.budget = sur.budget;
  return Block::covariance(mimo::solve_logdet_dual_newton(p, opts_).X);
}

}  // namespace sca::mac
