#include "sca/logdet_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sca/errors.hpp"

namespace sca::mimo {

using linalg::Complex;
using linalg::EigPair;
using linalg::RMatrix;

namespace {

double logdet_pd(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(linalg::hermitize(m));
  if (llt.info() != Eigen::Success) throw DefinitenessError("logdet of a matrix that is not PD");
  const auto diag = llt.matrixLLT().diagonal();
  double v = 0.0;
  for (Eigen::Index k = 0; k < diag.size(); ++k) v += 2.0 * std::log(diag(k).real());
  return v;
}

void check_problem(const LogdetProblem& p) {
  const Eigen::Index n = p.H.cols();
  if (p.R.rows() != p.H.rows() || p.R.cols() != p.H.rows())
    throw ContractError("logdet problem: R does not match H");
  if (p.A.rows() != n || p.A.cols() != n || p.Xbar.rows() != n || p.Xbar.cols() != n)
    throw ContractError("logdet problem: A or anchor does not match H");
  if (!linalg::is_hermitian(p.R) || !linalg::is_hermitian(p.A) || !linalg::is_hermitian(p.Xbar))
    throw ContractError("logdet problem: R, A and the anchor must be Hermitian");
  if (!(p.tau > 0.0)) throw ParameterError("logdet problem: tau must be positive");
  if (!(p.budget > 0.0)) throw ParameterError("logdet problem: budget must be positive");
  if (!(p.weight >= 0.0)) throw ParameterError("logdet problem: weight must be nonnegative");
}

CMatrix embed_top_left(const CMatrix& z, Eigen::Index n) {
  CMatrix out = CMatrix::Zero(n, n);
  out.topLeftCorner(z.rows(), z.cols()) = z;
  return out;
}

}  // namespace

double logdet_objective(const LogdetProblem& p, const CMatrix& X) {
  const CMatrix cov = p.R + p.H * X * p.H.adjoint();
  const CMatrix step = X - p.Xbar;
  return p.weight * (logdet_pd(cov) - logdet_pd(p.R)) + linalg::inner(p.A, X) -
         p.tau * step.squaredNorm();
}

CMatrix logdet_gradient(const LogdetProblem& p, const CMatrix& X) {
  const CMatrix cov = linalg::hermitize(p.R + p.H * X * p.H.adjoint());
  const CMatrix inv_h = cov.llt().solve(p.H);
  return linalg::hermitize(p.weight * p.H.adjoint() * inv_h + p.A - 2.0 * p.tau * (X - p.Xbar));
}

XSolution solve_X_shifted(const CMatrix& Z, const CMatrix& W, double tau, double budget) {
  if (!(tau > 0.0)) throw ParameterError("solve_X: tau must be positive");
  if (!(budget > 0.0)) throw ParameterError("solve_X: budget must be positive");
  if (Z.rows() > W.rows()) throw ContractError("solve_X: multiplier larger than the variable");
  CMatrix M = linalg::hermitize(W);
  M.topLeftCorner(Z.rows(), Z.cols()) -= linalg::hermitize(Z);
  const EigPair eig = linalg::hermitian_eig(linalg::hermitize(M));
  XSolution out;
  out.mu = linalg::waterlevel(eig.values, 2.0 * tau * budget);
  const double mu = out.mu;
  out.X = linalg::spectral_apply(eig, [&](double v) { return std::max(v - mu, 0.0) / (2.0 * tau); });
  // Dividing by a tiny 2τ amplifies roundoff in the waterlevel; pull the
  // trace back onto the budget.
  const double tr = out.X.trace().real();
  if (tr > budget) out.X *= budget / tr;
  return out;
}

XSolution solve_X(const CMatrix& Z, const CMatrix& Xcheck, double tau, double budget) {
  return solve_X_shifted(Z, 2.0 * tau * Xcheck, tau, budget);
}

namespace {

CMatrix y_for_multiplier(const CMatrix& Z, const CMatrix& D1, double weight, double mu) {
  const Eigen::Index n = Z.rows();
  const CMatrix B = mu * CMatrix::Identity(n, n) - Z;
  const linalg::GeneralizedEig ge = linalg::generalized_eig_pd(D1, B);
  RVector level(ge.values.size());
  for (Eigen::Index k = 0; k < level.size(); ++k)
    level(k) = ge.values(k) > 0.0 ? std::max(weight - 1.0 / ge.values(k), 0.0) : 0.0;
  return linalg::hermitize(ge.vectors * level.cast<Complex>().asDiagonal() * ge.vectors.adjoint());
}

}  // namespace

YSolution solve_Y(const CMatrix& Z, const CMatrix& D1, double weight, double budget) {
  if (!(weight > 0.0)) throw ParameterError("solve_Y: weight must be positive");
  if (!(budget > 0.0)) throw ParameterError("solve_Y: budget must be positive");
  if (Z.rows() != D1.rows() || Z.cols() != D1.cols())
    throw ContractError("solve_Y: Z and D1 differ in shape");
  YSolution out;
  const Eigen::Index n = Z.rows();
  if (n == 0) {
    out.Y = CMatrix::Zero(0, 0);
    return out;
  }
  const CMatrix Zh = linalg::hermitize(Z);
  const double zmax = linalg::lambda_max(Zh);
  out.lower = std::max(zmax, 0.0);
  out.upper = std::max(linalg::lambda_max(D1) + zmax / weight, 0.0);

  // μI − Z must be strictly positive definite; step just above λ_max(Z) when
  // the lower end is too close to it (also when λ_max(Z) is a tiny negative).
  double lo = out.lower;
  double nudge = 1e-12 * std::max(1.0, linalg::max_abs(Zh));
  for (int k = 0;; ++k) {
    try {
      y_for_multiplier(Zh, D1, weight, lo);
      break;
    } catch (const DefinitenessError&) {
      if (k > 40) throw;
      lo = out.lower + nudge;
      nudge *= 4.0;
    }
  }
  const double hi = std::max(out.upper, lo);
  linalg::MultiplierOptions opts;
  const linalg::MultiplierResult res = linalg::trace_budget_multiplier(
      [&](double mu) { return y_for_multiplier(Zh, D1, weight, mu); }, budget, lo, hi, opts);
  out.Y = res.matrix;
  out.mu = res.mu;
  out.iterations = res.iterations;
  return out;
}

bool DualNewtonResult::mu_y_in_bracket() const {
  if (rank == 0) return true;
  const double slack = 1e-9 * std::max(1.0, mu_y_upper);
  return mu_y >= mu_y_lower && mu_y <= mu_y_upper + slack;
}

namespace {

// Problem data in the eigenbasis of Hᴴ R⁻¹ H.
struct Rotated {
  CMatrix U;
  Eigen::Index n = 0;
  Eigen::Index n1 = 0;
  CMatrix D1;  // diagonal, positive
  RVector d1;
  CMatrix A;
  CMatrix Xbar;
  CMatrix W;  // 2τ·X̃̄ + Ã
  double weight = 1.0;
  double tau = 1.0;
  double budget = 1.0;
};

Rotated rotate(const LogdetProblem& p, double rank_tol) {
  Rotated r;
  r.n = p.H.cols();
  r.weight = p.weight;
  r.tau = p.tau;
  r.budget = p.budget;
  const CMatrix Rh = linalg::hermitize(p.R);
  Eigen::LLT<CMatrix> llt(Rh);
  if (llt.info() != Eigen::Success || linalg::lambda_min(Rh) <= 0.0)
    throw DefinitenessError("logdet problem: R is not positive definite");
  const CMatrix G = linalg::hermitize(p.H.adjoint() * llt.solve(p.H));
  const EigPair eig = linalg::hermitian_eig(G);
  r.U = eig.vectors;
  const double dmax = eig.values.size() ? eig.values(0) : 0.0;
  if (dmax > 0.0 && p.weight > 0.0)
    for (Eigen::Index k = 0; k < eig.values.size(); ++k)
      if (eig.values(k) > rank_tol * dmax) r.n1 = k + 1;
  r.d1 = eig.values.head(r.n1);
  r.D1 = r.d1.cast<Complex>().asDiagonal();
  r.A = linalg::hermitize(r.U.adjoint() * p.A * r.U);
  r.Xbar = linalg::hermitize(r.U.adjoint() * p.Xbar * r.U);
  r.W = 2.0 * r.tau * r.Xbar + r.A;
  return r;
}

struct DualPoint {
  CMatrix Z;
  EigPair eig_m;  // eigenpairs of W − blkdiag(Z, 0)
  XSolution x;
  YSolution y;
  CMatrix grad;  // Y − X̃₁₁
  double value = 0.0;
};

DualPoint evaluate(const Rotated& r, const CMatrix& Z) {
  DualPoint d;
  d.Z = Z;
  CMatrix M = r.W;
  M.topLeftCorner(r.n1, r.n1) -= Z;
  d.eig_m = linalg::hermitian_eig(linalg::hermitize(M));
  d.x.mu = linalg::waterlevel(d.eig_m.values, 2.0 * r.tau * r.budget);
  const double mu = d.x.mu;
  const double scale = 2.0 * r.tau;
  d.x.X = linalg::spectral_apply(d.eig_m, [&](double v) { return std::max(v - mu, 0.0) / scale; });
  d.y = solve_Y(Z, r.D1, r.weight, r.budget);
  d.grad = linalg::hermitize(d.y.Y - d.x.X.topLeftCorner(r.n1, r.n1));

  const RVector sq = r.d1.cwiseSqrt();
  const CMatrix inner_m = CMatrix::Identity(r.n1, r.n1) +
                          sq.cast<Complex>().asDiagonal() * d.y.Y * sq.cast<Complex>().asDiagonal();
  d.value = r.weight * logdet_pd(inner_m) + linalg::inner(r.A, d.x.X) -
            r.tau * (d.x.X - r.Xbar).squaredNorm() + linalg::inner(Z, d.grad);
  return d;
}

// Directional derivative of X̃₁₁ along a perturbation E of Z.
CMatrix x_block_derivative(const Rotated& r, const DualPoint& d, const RMatrix& divided,
                           const CMatrix& E) {
  const CMatrix dM = -embed_top_left(E, r.n);
  const CMatrix rotated = d.eig_m.vectors.adjoint() * dM * d.eig_m.vectors;
  double dmu = 0.0;
  if (d.x.mu > 0.0) {
    int active = 0;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < r.n; ++k)
      if (d.eig_m.values(k) > d.x.mu) {
        ++active;
        sum += rotated(k, k).real();
      }
    if (active > 0) dmu = sum / active;
  }
  CMatrix inner = rotated.cwiseProduct(divided.cast<Complex>());
  for (Eigen::Index k = 0; k < r.n; ++k)
    if (d.eig_m.values(k) > d.x.mu) inner(k, k) -= dmu;
  const CMatrix dX = d.eig_m.vectors * inner * d.eig_m.vectors.adjoint() / (2.0 * r.tau);
  return dX.topLeftCorner(r.n1, r.n1);
}

// Linearization of Y at fixed budget multiplier, as a map of δ(μI − Z).
struct YDerivative {
  EigPair eig_b;
  RMatrix sqrt_kernel;
  CMatrix Ci;  // (μI − Z)^{-1/2}
  EigPair eig_k;
  RMatrix g_divided;
  CMatrix gK;
  CMatrix D1;

  CMatrix apply(const CMatrix& dB) const {
    const CMatrix rotated = eig_b.vectors.adjoint() * dB * eig_b.vectors;
    const CMatrix dC =
        eig_b.vectors * rotated.cwiseProduct(sqrt_kernel.cast<Complex>()) * eig_b.vectors.adjoint();
    const CMatrix dCi = -Ci * dC * Ci;
    const CMatrix dK = dCi * D1 * Ci + Ci * D1 * dCi;
    const CMatrix dg = linalg::spectral_derivative(eig_k, g_divided, dK);
    return dCi * gK * Ci + Ci * dg * Ci + Ci * gK * dCi;
  }
};

YDerivative y_derivative(const Rotated& r, const DualPoint& d) {
  YDerivative yd;
  const Eigen::Index n1 = r.n1;
  const CMatrix B = linalg::hermitize(d.y.mu * CMatrix::Identity(n1, n1) - d.Z);
  yd.eig_b = linalg::hermitian_eig(B);
  const RVector root = yd.eig_b.values.cwiseMax(0.0).cwiseSqrt();
  yd.sqrt_kernel.resize(n1, n1);
  for (Eigen::Index a = 0; a < n1; ++a)
    for (Eigen::Index b = 0; b < n1; ++b) {
      const double s = root(a) + root(b);
      yd.sqrt_kernel(a, b) = s > 0.0 ? 1.0 / s : 0.0;
    }
  yd.Ci = linalg::spectral_apply(yd.eig_b, [](double v) { return v > 0.0 ? 1.0 / std::sqrt(v) : 0.0; });
  yd.D1 = r.D1;
  yd.eig_k = linalg::hermitian_eig(linalg::hermitize(yd.Ci * r.D1 * yd.Ci));
  const double w = r.weight;
  auto g = [w](double k) { return k > 0.0 ? std::max(w - 1.0 / k, 0.0) : 0.0; };
  auto dg = [w](double k) { return k > 0.0 && w - 1.0 / k > 0.0 ? 1.0 / (k * k) : 0.0; };
  yd.g_divided = linalg::divided_differences(yd.eig_k.values, g, dg);
  yd.gK = linalg::spectral_apply(yd.eig_k, g);
  return yd;
}

RMatrix dual_hessian(const Rotated& r, const DualPoint& d) {
  const Eigen::Index n1 = r.n1;
  const Eigen::Index dim = n1 * n1;
  const double mu = d.x.mu;
  auto f = [mu](double v) { return std::max(v - mu, 0.0); };
  auto df = [mu](double v) { return v > mu ? 1.0 : 0.0; };
  const RMatrix x_divided = linalg::divided_differences(d.eig_m.values, f, df);
  const YDerivative yd = y_derivative(r, d);
  const CMatrix I = CMatrix::Identity(n1, n1);
  const CMatrix y_identity = yd.apply(I);
  const double tr_identity = y_identity.trace().real();
  const bool y_active = d.y.mu > 0.0 && std::abs(tr_identity) > 0.0;

  RMatrix J(dim, dim);
  RVector e = RVector::Zero(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    e.setZero();
    e(k) = 1.0;
    const CMatrix E = linalg::real_to_hermitian(e, n1);
    // δB = δμ·I − E, with δμ keeping tr Y fixed when the budget binds.
    const CMatrix yE = yd.apply(E);
    CMatrix dY = -yE;
    if (y_active) dY += (yE.trace().real() / tr_identity) * y_identity;
    const CMatrix dG = linalg::hermitize(dY - x_block_derivative(r, d, x_divided, E));
    J.col(k) = linalg::conjugate_gradient_to_real(dG);
  }
  return 0.5 * (J + J.transpose());
}

// With D₁ of full size and both trace constraints at the budget, Z + cI for
// c ∈ [−μ_Y, μ_X] has the same dual value and gradient. Splitting the budget
// multiplier evenly keeps both constraints strictly active, away from the
// kink of Y(Z) at μ_Y = 0 where the optimum otherwise sits.
void recentre(const Rotated& r, DualPoint& d) {
  if (r.n1 != r.n) return;
  const double tol = 1e-10 * r.budget;
  if (std::abs(d.x.X.trace().real() - r.budget) > tol ||
      std::abs(d.y.Y.trace().real() - r.budget) > tol)
    return;
  const double c = 0.5 * (d.x.mu - d.y.mu);
  if (std::abs(c) <= 1e-12 * std::max(1.0, d.x.mu + d.y.mu)) return;
  DualPoint shifted = evaluate(r, d.Z + c * CMatrix::Identity(r.n1, r.n1));
  if (linalg::max_abs(shifted.grad) <= linalg::max_abs(d.grad) + 1e-12) d = std::move(shifted);
}

// Dual Hessian when no inner constraint is active, E ↦ (1/w)·P·E·P + E/(2τ)
// with P = D₁⁻¹ + Y, in the coordinates of dual_hessian. Positive definite.
RMatrix augmented_hessian(const Rotated& r, const DualPoint& d) {
  const Eigen::Index n1 = r.n1;
  const Eigen::Index dim = n1 * n1;
  const RVector inv_d1 = r.d1.cwiseInverse();
  const CMatrix P = linalg::hermitize(CMatrix(inv_d1.cast<Complex>().asDiagonal()) + d.y.Y);
  const double w = std::max(r.weight, std::numeric_limits<double>::min());
  RMatrix J(dim, dim);
  RVector e = RVector::Zero(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    e.setZero();
    e(k) = 1.0;
    const CMatrix E = linalg::real_to_hermitian(e, n1);
    J.col(k) = linalg::conjugate_gradient_to_real(
        linalg::hermitize(P * E * P / w + E / (2.0 * r.tau)));
  }
  return 0.5 * (J + J.transpose());
}

double y_kkt(const Rotated& r, const DualPoint& d) {
  if (r.n1 == 0) return 0.0;
  const Eigen::Index n1 = r.n1;
  const CMatrix I = CMatrix::Identity(n1, n1);
  // ∇ logdet(I + D₁Y) = (I + D₁Y)⁻¹D₁ = (D₁⁻¹ + Y)⁻¹.
  const CMatrix grad =
      linalg::hermitize(r.weight * (I + r.D1 * d.y.Y).partialPivLu().solve(r.D1) + d.Z - d.y.mu * I);
  // Y ⪰ 0 with multiplier −grad ⪰ 0 and Y·grad = 0.
  return std::max(linalg::max_abs(d.y.Y * grad), std::max(linalg::lambda_max(grad), 0.0));
}

}  // namespace

// Newton steps tried from the warm start before falling back to
// continuation in τ, which starts at kContinuationTau.
constexpr int kDirectBudget = 8;
constexpr double kContinuationTau = 1e-2;
constexpr double kContinuationFactor = 1e-2;
constexpr double kStageTolerance = 1e-4;

DualNewtonResult solve_logdet_dual_newton(const LogdetProblem& p, const DualNewtonOptions& opts) {
  check_problem(p);
  const Rotated r = rotate(p, opts.rank_tolerance);
  DualNewtonResult out;
  out.rank = static_cast<std::size_t>(r.n1);

  if (r.n1 == 0) {
    const XSolution xs = solve_X_shifted(CMatrix::Zero(0, 0), r.W, r.tau, r.budget);
    out.X = linalg::hermitize(r.U * xs.X * r.U.adjoint());
    out.Z = CMatrix::Zero(0, 0);
    out.mu_x = xs.mu;
    out.converged = true;
    out.primal_value = logdet_objective(p, out.X);
    out.dual_value = out.primal_value;
    out.complementarity = xs.mu * std::abs(xs.X.trace().real() - r.budget);
    return out;
  }

  // Start from Z = −w(D₁⁻¹ + X₀)⁻¹, the negated log-det gradient at X₀, which
  // is dual-optimal when X₀ solves the problem. Candidates for X₀: the
  // anchor's leading block (this Z makes the X-update one proximal-linear
  // step from the anchor) and, with D₁ of full size, the closed-form τ = 0
  // solution given by the Y-update with Z = Ã. The lower dual value wins.
  const RVector inv_d1 = r.d1.cwiseInverse();
  auto start_from = [&](const Rotated& q, const CMatrix& X0) {
    return evaluate(q, linalg::hermitize(-q.weight * linalg::hermitize(
                           CMatrix(inv_d1.cast<Complex>().asDiagonal()) + X0).inverse()));
  };
  auto warm_start = [&](const Rotated& q) {
    DualPoint cur = start_from(q, q.Xbar.topLeftCorner(q.n1, q.n1));
    if (q.n1 == q.n) {
      DualPoint alt = start_from(q, solve_Y(q.A, q.D1, q.weight, q.budget).Y);
      if (alt.value < cur.value) cur = std::move(alt);
    }
    // Far from the solution the dual is strongly nonsmooth and Newton steps
    // get cut back repeatedly; a short accelerated projected-gradient run on
    // the primal brings the start close enough for Newton to take full steps.
    const double L = q.weight * q.d1.maxCoeff() * q.d1.maxCoeff() + 2.0 * q.tau;
    auto grad = [&](const CMatrix& X) {
      CMatrix g = q.A - 2.0 * q.tau * (X - q.Xbar);
      g.topLeftCorner(q.n1, q.n1) +=
          q.weight * linalg::hermitize(CMatrix(inv_d1.cast<Complex>().asDiagonal()) +
                                       X.topLeftCorner(q.n1, q.n1)).inverse();
      return linalg::hermitize(g);
    };
    const CMatrix none = CMatrix::Zero(0, 0);
    CMatrix x = cur.x.X, y = x;
    double t = 1.0;
    for (int k = 0; k < 40; ++k) {
      const CMatrix xn = solve_X_shifted(none, y + grad(y) / L, 0.5, q.budget).X;
      const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = xn + ((t - 1.0) / tn) * (xn - x);
      x = xn;
      t = tn;
    }
    DualPoint warm = start_from(q, x.topLeftCorner(q.n1, q.n1));
    if (warm.value < cur.value) cur = std::move(warm);
    recentre(q, cur);
    return cur;
  };

  // Damped Newton on the dual of q from cur; returns true on convergence.
  int it = 0;
  auto newton = [&](const Rotated& q, DualPoint& cur, double tolerance, int cap = 1 << 30) {
    for (;; ++it) {
      const double res = linalg::max_abs(cur.grad);
      if (res <= tolerance) return true;
      if (it >= opts.max_iterations || it >= cap) return false;

      const RVector g = linalg::conjugate_gradient_to_real(cur.grad);
      const RMatrix J = dual_hessian(q, cur);
      const RMatrix Ja = augmented_hessian(q, cur);
      const double slack = 1e-12 * std::max(1.0, std::abs(cur.value));

      // Damped steps (J + λ·J_aug)s = −g. λ = 0 is the Newton step (minimum
      // norm: the dual is flat along I when both trace constraints bind with
      // D₁ of full size, and J is singular where X̃ = 0); growing λ moves
      // toward the step of the unconstrained inner problems, which always
      // descends.
      bool accepted = false;
      for (const double lambda : {0.0, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1.0, 1e2}) {
        RVector step;
        if (lambda == 0.0) {
          Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(J);
          cod.setThreshold(opts.regularization);
          step = cod.solve(-g);
        } else {
          step = (J + lambda * Ja).ldlt().solve(-g);
        }
        const double slope = g.dot(step);
        if (!(slope < 0.0) || !step.allFinite()) continue;
        const CMatrix dZ = linalg::real_to_hermitian(step, q.n1);
        const int halvings = lambda == 1e2 ? 60 : 4;
        double alpha = 1.0;
        for (int k = 0; k < halvings && !accepted; ++k, alpha *= 0.5) {
          DualPoint trial = evaluate(q, cur.Z + alpha * dZ);
          const bool armijo = trial.value <= cur.value + 1e-4 * alpha * slope;
          const bool residual_drop =
              linalg::max_abs(trial.grad) < res && trial.value <= cur.value + slack;
          if (armijo || residual_drop) {
            cur = std::move(trial);
            accepted = true;
          }
        }
        if (accepted) {
          recentre(q, cur);
          if (lambda > 0.0) ++out.fallback_steps;
          break;
        }
      }
      if (!accepted) return false;
    }
  };

  // For small τ the dual is nearly a max-eigenvalue function: at the
  // solution the X-update sees an eigenvalue cluster of width O(τ), and
  // Newton only takes full steps once Z is that close. When the warm start
  // does not land there within a few steps, follow the solution path down
  // from a larger τ instead, each stage starting near the next one's.
  auto continuation = [&](DualPoint& cur) {
    double tau = kContinuationTau;
    Rotated q = r;
    auto at_tau = [&](double tq) {
      q.tau = tq;
      q.W = 2.0 * tq * q.Xbar + q.A;
    };
    at_tau(tau);
    cur = warm_start(q);
    while (tau > r.tau) {
      if (!newton(q, cur, kStageTolerance)) break;
      tau = tau * kContinuationFactor < r.tau * (1.0 + 1e-9) ? r.tau : tau * kContinuationFactor;
      at_tau(tau);
      cur = evaluate(q, cur.Z);
      recentre(q, cur);
    }
    if (q.tau > r.tau) cur = evaluate(r, cur.Z);
  };
  DualPoint cur = warm_start(r);
  out.converged = newton(r, cur, opts.tolerance, kDirectBudget);
  if (!out.converged && r.tau < kContinuationTau) continuation(cur);
  if (!out.converged) out.converged = newton(r, cur, opts.tolerance);

  out.iterations = it;
  out.Z = cur.Z;
  out.mu_x = cur.x.mu;
  out.mu_y = cur.y.mu;
  out.mu_y_lower = cur.y.lower;
  out.mu_y_upper = cur.y.upper;
  out.residual = linalg::max_abs(cur.grad);
  out.X = linalg::hermitize(r.U * cur.x.X * r.U.adjoint());
  if (const double tr = out.X.trace().real(); tr > r.budget) out.X *= r.budget / tr;
  out.primal_value = logdet_objective(p, out.X);
  out.dual_value = cur.value;
  out.complementarity = std::max(cur.x.mu * std::abs(cur.x.X.trace().real() - r.budget),
                                 cur.y.mu * std::abs(cur.y.Y.trace().real() - r.budget));
  out.y_kkt_residual = y_kkt(r, cur);
  return out;
}

}  // namespace sca::mimo
