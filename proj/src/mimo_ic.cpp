#include "sca/mimo_ic.hpp"

#include <cmath>

#include "sca/errors.hpp"

namespace sca::mimo {

namespace {

double logdet_pd(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(linalg::hermitize(m));
  if (llt.info() != Eigen::Success) throw DefinitenessError("covariance is not positive definite");
  double v = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) v += 2.0 * std::log(llt.matrixLLT()(k, k).real());
  return v;
}

CMatrix inverse_pd(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(linalg::hermitize(m));
  if (llt.info() != Eigen::Success) throw DefinitenessError("covariance is not positive definite");
  return linalg::hermitize(llt.solve(CMatrix::Identity(m.rows(), m.cols())));
}

void check_shapes(const StrategyProfile& Q, const ChannelSample& H) {
  if (Q.size() != H.users || H.H.size() != H.users * H.users || H.RN.size() != H.users)
    throw ContractError("MIMO IC: profile and channel disagree on users");
  for (std::size_t i = 0; i < H.users; ++i) {
    const Block& b = Q.blocks[i];
    if (b.kind != BlockKind::Covariance || b.mat.rows() != H.h(i, i).cols())
      throw ContractError("MIMO IC: covariance block does not match the channel");
  }
}

}  // namespace

StrategyProfile scaled_identity(std::size_t users, Eigen::Index tx, double budget) {
  StrategyProfile q;
  for (std::size_t i = 0; i < users; ++i) {
    q.blocks.push_back(Block::covariance(CMatrix::Identity(tx, tx) * (budget / static_cast<double>(tx))));
    q.budgets.push_back(budget);
  }
  return q;
}

CMatrix interference_covariance(const StrategyProfile& Q, const ChannelSample& H, std::size_t i) {
  check_shapes(Q, H);
  CMatrix R = H.RN[i];
  for (std::size_t j = 0; j < H.users; ++j)
    if (j != i) R += H.h(i, j) * Q.blocks[j].mat * H.h(i, j).adjoint();
  return linalg::hermitize(R);
}

double rate_user(const StrategyProfile& Q, const ChannelSample& H, std::size_t i) {
  const CMatrix R = interference_covariance(Q, H, i);
  const CMatrix& Hii = H.h(i, i);
  return logdet_pd(R + Hii * Q.blocks[i].mat * Hii.adjoint()) - logdet_pd(R);
}

double sum_rate(const StrategyProfile& Q, const ChannelSample& H) {
  double total = 0.0;
  for (std::size_t i = 0; i < H.users; ++i) total += rate_user(Q, H, i);
  return total;
}

CMatrix pricing(const StrategyProfile& Q, const ChannelSample& H, std::size_t i) {
  check_shapes(Q, H);
  const Eigen::Index n = Q.blocks[i].mat.rows();
  CMatrix pi = CMatrix::Zero(n, n);
  for (std::size_t j = 0; j < H.users; ++j) {
    if (j == i) continue;
    const CMatrix R = interference_covariance(Q, H, j);
    const CMatrix& Hjj = H.h(j, j);
    const CMatrix diff = inverse_pd(R + Hjj * Q.blocks[j].mat * Hjj.adjoint()) - inverse_pd(R);
    pi += H.h(j, i).adjoint() * diff * H.h(j, i);
  }
  return linalg::hermitize(pi);
}

CMatrix own_gradient(const StrategyProfile& Q, const ChannelSample& H, std::size_t i) {
  const CMatrix R = interference_covariance(Q, H, i);
  const CMatrix& Hii = H.h(i, i);
  return linalg::hermitize(Hii.adjoint() * inverse_pd(R + Hii * Q.blocks[i].mat * Hii.adjoint()) * Hii);
}

CMatrix sum_rate_gradient(const StrategyProfile& Q, const ChannelSample& H, std::size_t i) {
  return pricing(Q, H, i) + own_gradient(Q, H, i);
}

CMatrix accumulate_F(const CMatrix& F_prev, const StrategyProfile& Q, const ChannelSample& H,
                     double rho, std::size_t i) {
  return accumulate_gradient(Block::covariance(F_prev),
                             Block::covariance(sum_rate_gradient(Q, H, i)), rho)
      .mat;
}

LogdetProblem best_response_problem(const StrategyProfile& Q, const ChannelSample& H,
                                    const CMatrix& A, double weight, double tau, std::size_t i) {
  LogdetProblem p;
  p.R = interference_covariance(Q, H, i);
  p.H = H.h(i, i);
  // ⟨A, X − Q_i⟩ differs from ⟨A, X⟩ by a constant, so the linear term is A itself.
  p.A = linalg::hermitize(A);
  p.Xbar = Q.blocks[i].mat;
  p.weight = weight;
  p.tau = tau;
  p.budget = Q.budgets[i];
  return p;
}

CMatrix best_response_dual_newton(const StrategyProfile& Q, const ChannelSample& H,
                                  const CMatrix& F_prev, double rho, double tau, std::size_t i,
                                  DualNewtonResult* diagnostics, const DualNewtonOptions& opts) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("MIMO best response: rho outside (0, 1]");
  const CMatrix A = rho * pricing(Q, H, i) + (1.0 - rho) * F_prev;
  DualNewtonResult res =
      solve_logdet_dual_newton(best_response_problem(Q, H, A, rho, tau, i), opts);
  CMatrix X = res.X;
  if (diagnostics) *diagnostics = std::move(res);
  return X;
}

CMatrix best_response_proximal_gradient(const CMatrix& Q_t, const CMatrix& F, double tau,
                                        double budget) {
  if (!(tau > 0.0)) throw ParameterError("proximal gradient step: tau must be positive");
  return maximize_linear_proximal(Block::covariance(F), Block::covariance(Q_t), tau, budget).mat;
}

ChannelProcess::ChannelProcess(std::size_t users, Eigen::Index rx, Eigen::Index tx, double delta,
                               std::uint64_t base_seed)
    : rx_(rx), tx_(tx), delta_(delta) {
  if (users == 0 || rx <= 0 || tx <= 0) throw ParameterError("MIMO channel needs users and antennas");
  if (!(delta >= 0.0)) throw ParameterError("channel perturbation level must be nonnegative");
  base_.users = users;
  Gaussian draw(base_seed, Stream::BaseChannel, 0);
  for (std::size_t k = 0; k < users * users; ++k) base_.H.push_back(draw.matrix(rx, tx));
  base_.RN.assign(users, CMatrix::Identity(rx, rx));
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

Problem::Problem(ChannelProcess process, double budget, DualNewtonOptions opts)
    : process_(std::move(process)), budget_(budget), opts_(opts) {
  if (!(budget > 0.0)) throw ParameterError("power budget must be positive");
}

StrategyProfile Problem::initial_point() const {
  return scaled_identity(num_users(), process_.tx(), budget_);
}

KeptTerms Problem::kept_terms(SurrogateKind kind) const {
  switch (kind) {
    case SurrogateKind::ConditionalGradient: return KeptTerms::None;
    case SurrogateKind::Pricing: return KeptTerms::Own;
    default:
      throw ConfigError("MIMO interference channel: " + to_string(kind) +
                        " surrogate is not available");
  }
}

Block Problem::linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                             std::size_t i) const {
  if (kept_terms(kind) == KeptTerms::None) return Block::covariance(sum_rate_gradient(x, s, i));
  return Block::covariance(pricing(x, s, i));
}

Block Problem::tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const {
  return Block::covariance(sum_rate_gradient(x, s, i));
}

Block Problem::solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const {
  if (sur.kept != KeptTerms::Own) throw ConfigError("MIMO IC: unsupported surrogate");
  const LogdetProblem p =
      best_response_problem(x, s, sur.linear.mat, sur.rho, sur.prox_weight, sur.user);
  return Block::covariance(solve_logdet_dual_newton(p, opts_).X);
}

double Problem::surrogate_value(const Surrogate& sur, const StrategyProfile& x, const Sample& s,
                                const Block& y) const {
  const CMatrix step = y.mat - x.blocks[sur.user].mat;
  double v = linalg::inner(sur.linear.mat, step) - sur.prox_weight * step.squaredNorm();
  if (sur.kept == KeptTerms::Own) {
    StrategyProfile trial = x;
    trial.blocks[sur.user] = y;
    v += sur.rho * rate_user(trial, s, sur.user);
  }
  return v;
}

}  // namespace sca::mimo
