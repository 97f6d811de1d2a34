#include "sca/toy.hpp"

#include <algorithm>
#include <cmath>

#include "sca/errors.hpp"
#include "sca/rng.hpp"

namespace sca::toy {

DcProblem::DcProblem(double xi_mean, double xi_spread, double start)
    : xi_mean_(xi_mean), xi_spread_(xi_spread), start_(start) {
  if (!(xi_mean >= 0.0) || !(xi_spread >= 0.0)) throw ParameterError("DC toy: negative parameter");
  if (!(std::abs(start) <= 1.0)) throw ParameterError("DC toy: start outside [-1, 1]");
}

StrategyProfile DcProblem::initial_point() const {
  StrategyProfile x;
  x.blocks.push_back(Block::box(RVector::Constant(1, start_)));
  x.budgets.push_back(1.0);
  return x;
}

DcProblem::Sample DcProblem::sample(std::uint64_t seed, long t) const {
  if (xi_spread_ == 0.0) return {xi_mean_};
  Gaussian draw(seed, Stream::Perturbation, static_cast<std::uint64_t>(t));
  return {std::max(0.0, xi_mean_ + xi_spread_ * draw.real())};
}

KeptTerms DcProblem::kept_terms(SurrogateKind kind) const {
  switch (kind) {
    case SurrogateKind::ConditionalGradient: return KeptTerms::None;
    case SurrogateKind::DC: return KeptTerms::ConcavePart;
    default:
      throw ConfigError("DC toy: x⁴ − ξx² is not concave, " + to_string(kind) +
                        " surrogate is not available");
  }
}

Block DcProblem::linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                               std::size_t i) const {
  const double v = x.blocks.at(i).vec(0);
  double g = 4.0 * v * v * v;
  if (kept_terms(kind) == KeptTerms::None) g -= 2.0 * s.xi * v;
  return Block::box(RVector::Constant(1, g));
}

Block DcProblem::tracked_gradient(const StrategyProfile& x, const Sample& s, std::size_t i) const {
  const double v = x.blocks.at(i).vec(0);
  return Block::box(RVector::Constant(1, 4.0 * v * v * v - 2.0 * s.xi * v));
}

Block DcProblem::solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const {
  // Maximize −ρξy² + L(y − x) − c(y − x)² on [−1, 1]: a concave quadratic, so
  // clamping the stationary point is exact.
  const double anchor = x.blocks.at(sur.user).vec(0);
  const double L = sur.linear.vec(0);
  const double curvature = 2.0 * (sur.rho * s.xi + sur.prox_weight);
  double y;
  if (curvature > 0.0)
    y = (L + 2.0 * sur.prox_weight * anchor) / curvature;
  else
    y = L > 0.0 ? 1.0 : (L < 0.0 ? -1.0 : anchor);
  return Block::box(RVector::Constant(1, std::clamp(y, -1.0, 1.0)));
}

double DcProblem::utility(const StrategyProfile& x, const Sample& s) const {
  const double v = x.blocks.at(0).vec(0);
  return v * v * v * v - s.xi * v * v;
}

double DcProblem::surrogate_value(const Surrogate& sur, const StrategyProfile& x, const Sample& s,
                                  const Block& y) const {
  const double step = y.vec(0) - x.blocks.at(sur.user).vec(0);
  double v = sur.linear.vec(0) * step - sur.prox_weight * step * step;
  if (sur.kept == KeptTerms::ConcavePart) v -= sur.rho * s.xi * y.vec(0) * y.vec(0);
  return v;
}

QuadraticProblem::QuadraticProblem(RVector target, double budget, double noise)
    : target_(std::move(target)), budget_(budget), noise_(noise) {
  if (!(budget > 0.0)) throw ParameterError("quadratic toy: budget must be positive");
  if (!(noise >= 0.0)) throw ParameterError("quadratic toy: noise must be nonnegative");
}

RVector QuadraticProblem::optimum() const { return linalg::project_capped_simplex(target_, budget_); }

StrategyProfile QuadraticProblem::initial_point() const {
  StrategyProfile x;
  x.blocks.push_back(Block::power(
      RVector::Constant(target_.size(), budget_ / static_cast<double>(target_.size()))));
  x.budgets.push_back(budget_);
  return x;
}

QuadraticProblem::Sample QuadraticProblem::sample(std::uint64_t seed, long t) const {
  if (noise_ == 0.0) return target_;
  Gaussian draw(seed, Stream::Perturbation, static_cast<std::uint64_t>(t));
  RVector c = target_;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) += noise_ * draw.real();
  return c;
}

KeptTerms QuadraticProblem::kept_terms(SurrogateKind kind) const {
  switch (kind) {
    case SurrogateKind::ConditionalGradient: return KeptTerms::None;
    case SurrogateKind::SingleConvex: return KeptTerms::All;
    default:
      throw ConfigError("quadratic toy: " + to_string(kind) + " surrogate is not available");
  }
}

Block QuadraticProblem::linearization(SurrogateKind kind, const StrategyProfile& x, const Sample& s,
                                      std::size_t i) const {
  if (kept_terms(kind) == KeptTerms::None) return tracked_gradient(x, s, i);
  return x.blocks.at(i).zeros_like();
}

Block QuadraticProblem::tracked_gradient(const StrategyProfile& x, const Sample& s,
                                         std::size_t i) const {
  return Block::power(-2.0 * (x.blocks.at(i).vec - s));
}

Block QuadraticProblem::solve(const Surrogate& sur, const StrategyProfile& x, const Sample& s) const {
  // −(ρ + c)‖y − m‖² up to a constant, so the maximizer is a projection of m.
  const double a = sur.rho + sur.prox_weight;
  if (!(a > 0.0)) throw ParameterError("quadratic toy: degenerate surrogate");
  const RVector m =
      (2.0 * sur.rho * s + sur.linear.vec + 2.0 * sur.prox_weight * x.blocks.at(sur.user).vec) /
      (2.0 * a);
  return Block::power(linalg::project_capped_simplex(m, sur.budget));
}

double QuadraticProblem::utility(const StrategyProfile& x, const Sample& s) const {
  return -(x.blocks.at(0).vec - s).squaredNorm();
}

}  // namespace sca::toy
