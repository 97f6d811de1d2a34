#include "sca/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sca/errors.hpp"

namespace sca {

Block Block::power(RVector p) {
  Block b;
  b.kind = BlockKind::Power;
  b.vec = std::move(p);
  return b;
}

Block Block::covariance(CMatrix q) {
  Block b;
  b.kind = BlockKind::Covariance;
  b.mat = std::move(q);
  return b;
}

Block Block::box(RVector x) {
  Block b;
  b.kind = BlockKind::Box;
  b.vec = std::move(x);
  return b;
}

Block Block::zeros_like() const {
  Block b;
  b.kind = kind;
  if (kind == BlockKind::Covariance)
    b.mat = CMatrix::Zero(mat.rows(), mat.cols());
  else
    b.vec = RVector::Zero(vec.size());
  return b;
}

bool Block::same_shape(const Block& other) const {
  if (kind != other.kind) return false;
  if (kind == BlockKind::Covariance)
    return mat.rows() == other.mat.rows() && mat.cols() == other.mat.cols();
  return vec.size() == other.vec.size();
}

double Block::norm() const { return kind == BlockKind::Covariance ? mat.norm() : vec.norm(); }

Block axpby(double a, const Block& x, double b, const Block& y) {
  if (!x.same_shape(y)) throw ContractError("axpby: block shapes differ");
  Block out;
  out.kind = x.kind;
  if (x.kind == BlockKind::Covariance)
    out.mat = a * x.mat + b * y.mat;
  else
    out.vec = a * x.vec + b * y.vec;
  return out;
}

double inner(const Block& x, const Block& y) {
  if (!x.same_shape(y)) throw ContractError("inner: block shapes differ");
  return x.kind == BlockKind::Covariance ? linalg::inner(x.mat, y.mat) : x.vec.dot(y.vec);
}

std::string feasibility_violation(const Block& b, double budget, const FeasibilityTolerance& tol) {
  const double slack = tol.budget * std::max(1.0, budget);
  switch (b.kind) {
    case BlockKind::Power: {
      if (b.vec.size() && b.vec.minCoeff() < -tol.nonnegative) return "negative power";
      if (!b.vec.allFinite()) return "non-finite power";
      if (b.vec.sum() > budget + slack) return "power budget exceeded";
      return {};
    }
    case BlockKind::Covariance: {
      if (!b.mat.allFinite()) return "non-finite covariance";
      if (!linalg::is_hermitian(b.mat, tol.hermitian)) return "covariance not Hermitian";
      if (b.mat.rows() && linalg::lambda_min(b.mat) < -tol.min_eig) return "covariance not PSD";
      if (b.mat.trace().real() > budget + slack) return "trace budget exceeded";
      return {};
    }
    case BlockKind::Box: {
      if (!b.vec.allFinite()) return "non-finite entry";
      if (b.vec.size() && b.vec.cwiseAbs().maxCoeff() > budget + slack) return "box bound exceeded";
      return {};
    }
  }
  return {};
}

bool is_feasible(const StrategyProfile& x, const FeasibilityTolerance& tol) {
  if (x.blocks.size() != x.budgets.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!feasibility_violation(x.blocks[i], x.budgets[i], tol).empty()) return false;
  return true;
}

void require_feasible(const StrategyProfile& x, const FeasibilityTolerance& tol) {
  if (x.blocks.size() != x.budgets.size())
    throw InvariantViolation("profile has " + std::to_string(x.blocks.size()) + " blocks but " +
                             std::to_string(x.budgets.size()) + " budgets");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::string why = feasibility_violation(x.blocks[i], x.budgets[i], tol);
    if (!why.empty()) throw InvariantViolation("user " + std::to_string(i) + ": " + why);
  }
}

Block project_block(const Block& y, double budget) {
  switch (y.kind) {
    case BlockKind::Power:
      return Block::power(linalg::project_capped_simplex(y.vec, budget));
    case BlockKind::Covariance:
      return Block::covariance(linalg::project_trace_ball(linalg::hermitize(y.mat), budget));
    case BlockKind::Box:
      return Block::box(y.vec.cwiseMax(-budget).cwiseMin(budget));
  }
  return y;
}

Block maximize_linear_proximal(const Block& linear, const Block& anchor, double c, double budget) {
  if (!linear.same_shape(anchor)) throw ContractError("maximize_linear_proximal: shape mismatch");
  if (c < 0.0) throw ParameterError("maximize_linear_proximal: negative proximal weight");
  if (c > 0.0) return project_block(axpby(1.0, anchor, 0.5 / c, linear), budget);

  Block out = linear.zeros_like();
  switch (linear.kind) {
    case BlockKind::Power: {
      if (linear.vec.size() == 0) break;
      Eigen::Index k = 0;
      const double best = linear.vec.maxCoeff(&k);
      if (best > 0.0) out.vec(k) = budget;
      break;
    }
    case BlockKind::Covariance: {
      if (linear.mat.rows() == 0) break;
      const linalg::EigPair eig = linalg::hermitian_eig(linalg::hermitize(linear.mat));
      if (eig.values(0) > 0.0) {
        const CMatrix v = eig.vectors.col(0);
        out.mat = budget * v * v.adjoint();
      }
      break;
    }
    case BlockKind::Box:
      for (Eigen::Index k = 0; k < linear.vec.size(); ++k)
        out.vec(k) = linear.vec(k) > 0.0 ? budget : (linear.vec(k) < 0.0 ? -budget : 0.0);
      break;
  }
  return out;
}

Block accumulate_gradient(const Block& f_prev, const Block& sample_grad, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("accumulate_gradient: rho outside [0, 1]");
  if (!f_prev.same_shape(sample_grad))
    throw ContractError("accumulate_gradient: accumulator and sample gradient shapes differ");
  Block out = axpby(1.0 - rho, f_prev, rho, sample_grad);
  if (out.kind == BlockKind::Covariance) out.mat = linalg::hermitize(out.mat);
  return out;
}

StrategyProfile update_iterate(const StrategyProfile& x_t, const StrategyProfile& x_hat,
                               double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ParameterError("update_iterate: gamma outside (0, 1]");
  if (x_t.size() != x_hat.size()) throw ContractError("update_iterate: user counts differ");
  require_feasible(x_t);
  require_feasible(x_hat);
  StrategyProfile out;
  out.budgets = x_t.budgets;
  out.blocks.reserve(x_t.size());
  for (std::size_t i = 0; i < x_t.size(); ++i) {
    Block b = axpby(1.0 - gamma, x_t.blocks[i], gamma, x_hat.blocks[i]);
    if (b.kind == BlockKind::Covariance) b.mat = linalg::hermitize(b.mat);
    out.blocks.push_back(std::move(b));
  }
  return out;
}

double stationarity_gap(const StrategyProfile& x_t, const StrategyProfile& x_hat) {
  if (x_t.size() != x_hat.size()) throw ContractError("stationarity_gap: user counts differ");
  double gap = 0.0;
  for (std::size_t i = 0; i < x_t.size(); ++i)
    gap = std::max(gap, axpby(1.0, x_hat.blocks[i], -1.0, x_t.blocks[i]).norm());
  return gap;
}

}  // namespace sca
