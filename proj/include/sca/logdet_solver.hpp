#pragma once

// Regularized log-det maximization shared by the MIMO best responses:
//
//   maximize  w·logdet(R + H X Hᴴ) + ⟨A, X⟩ − τ‖X − X̄‖²_F
//   subject to X ⪰ 0, tr X ≤ P.
//
// In the eigenbasis U of Hᴴ R⁻¹ H = U diag(D₁, 0) Uᴴ the log-det term only
// sees the leading block X̃₁₁. Splitting it off as a copy Y = X̃₁₁ and
// dualizing the copy constraint with a Hermitian multiplier Z gives two
// closed-form inner problems (a shifted PSD projection for X̃ and a
// generalized-eigenvalue waterfilling for Y). The smooth convex dual in Z is
// minimized by Newton's method with a semismooth Jacobian.

#include <cstddef>

#include "sca/linalg.hpp"

namespace sca::mimo {

using linalg::CMatrix;
using linalg::RVector;

struct LogdetProblem {
  CMatrix R;     // m×m, positive definite
  CMatrix H;     // m×n
  CMatrix A;     // n×n Hermitian linear term
  CMatrix Xbar;  // n×n Hermitian proximal anchor
  double weight = 1.0;
  double tau = 1.0;
  double budget = 1.0;
};

/// w·[logdet(R + HXHᴴ) − logdet R] + ⟨A, X⟩ − τ‖X − X̄‖².
double logdet_objective(const LogdetProblem& p, const CMatrix& X);
/// Conjugate gradient w·Hᴴ(R + HXHᴴ)⁻¹H + A − 2τ(X − X̄).
CMatrix logdet_gradient(const LogdetProblem& p, const CMatrix& X);

struct XSolution {
  CMatrix X;
  double mu = 0.0;
};

/// [X̌ − (μ·I + blkdiag(Z, 0))/(2τ)]⁺ with the budget multiplier μ.
XSolution solve_X(const CMatrix& Z, const CMatrix& Xcheck, double tau, double budget);

/// Same family written as [W − blkdiag(Z, 0) − μ·I]⁺/(2τ), W = 2τ·X̌. This
/// form stays accurate when τ is tiny.
XSolution solve_X_shifted(const CMatrix& Z, const CMatrix& W, double tau, double budget);

struct YSolution {
  CMatrix Y;
  double mu = 0.0;
  double lower = 0.0;  // [λ_max(Z)]⁺
  double upper = 0.0;  // [λ_max(D₁) + λ_max(Z)/w]⁺
  int iterations = 0;
};

/// Maximizer of w·logdet(I + D₁Y) + ⟨Z, Y⟩ over Y ⪰ 0, tr Y ≤ P:
/// Y = V[w·I − Σ⁻¹]⁺Vᴴ with (V, Σ) the generalized eigenpairs of
/// (D₁, μI − Z). D₁ must be positive definite.
YSolution solve_Y(const CMatrix& Z, const CMatrix& D1, double weight, double budget);

struct DualNewtonOptions {
  double tolerance = 1e-7;  // on ‖Y − X̃₁₁‖∞
  int max_iterations = 100;
  double rank_tolerance = 1e-10;  // relative cut for the zero block of D
  double regularization = 1e-12;
};

struct DualNewtonResult {
  CMatrix X;
  CMatrix Z;  // multiplier in the rotated coordinates
  std::size_t rank = 0;
  double mu_x = 0.0;
  double mu_y = 0.0;
  double mu_y_lower = 0.0;
  double mu_y_upper = 0.0;
  int iterations = 0;      // Newton iterations
  int fallback_steps = 0;  // gradient steps taken when Newton stalled
  bool converged = false;
  double residual = 0.0;  // ‖Y − X̃₁₁‖∞
  double primal_value = 0.0;
  double dual_value = 0.0;
  double complementarity = 0.0;  // max(μ_X·|tr X̃ − P|, μ_Y·|tr Y − P|)
  double y_kkt_residual = 0.0;   // stationarity of the Y problem on its support

  bool mu_y_in_bracket() const;
};

DualNewtonResult solve_logdet_dual_newton(const LogdetProblem& p,
                                          const DualNewtonOptions& opts = {});

}  // namespace sca::mimo
