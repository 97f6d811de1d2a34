#pragma once

// Hermitian linear-algebra kernels shared by the inner solvers.

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace sca::linalg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Max-abs entry, the ‖·‖∞ used throughout for residuals.
double max_abs(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol = 1e-12);

/// (A + Aᴴ)/2.
CMatrix hermitize(const CMatrix& a);

/// Re tr(Aᴴ B).
double inner(const CMatrix& a, const CMatrix& b);

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// decreasing order; `vectors` is unitary.
struct EigPair {
  CMatrix vectors;
  RVector values;

  CMatrix reconstruct() const;
};

/// Throws ContractError if `a` is not Hermitian to 1e-12 (relative to its
/// scale when larger than one).
EigPair hermitian_eig(const CMatrix& a);

/// Solution of D1·v = σ·B·v normalized so that Vᴴ·B·V = I and
/// Vᴴ·D1·V = diag(σ); σ descending.
struct GeneralizedEig {
  CMatrix vectors;
  RVector values;
};

/// Cholesky reduction B = LLᴴ followed by a standard eigenproblem of
/// L⁻¹·D1·L⁻ᴴ. Throws DefinitenessError when B is not positive definite.
GeneralizedEig generalized_eig_pd(const CMatrix& d1, const CMatrix& b);

/// Nearest positive semidefinite matrix in Frobenius norm.
CMatrix psd_project(const CMatrix& x);

double lambda_max(const CMatrix& a);
double lambda_min(const CMatrix& a);

/// Waterlevel for the shifted family Σ_k [v_k − μ]⁺ ≤ budget: smallest μ ≥ 0
/// satisfying the budget, solved exactly over the sorted breakpoints.
double waterlevel(const RVector& values, double budget);

/// argmin ‖y − v‖ over {y ≥ 0, Σ y ≤ budget}.
RVector project_capped_simplex(const RVector& v, double budget);

/// argmin ‖Y − X‖_F over {Y ⪰ 0, tr Y ≤ budget}; `mu` receives the multiplier.
CMatrix project_trace_ball(const CMatrix& x, double budget, double* mu = nullptr);

struct MultiplierOptions {
  /// Stop once |tr − P| ≤ trace_tol·P. A zero value bisects to floating precision.
  double trace_tol = 1e-12;
  int max_iterations = 200;
  int max_expansions = 60;
};

struct MultiplierResult {
  double mu = 0.0;
  CMatrix matrix;
  double trace = 0.0;
  int iterations = 0;
};

/// Finds 0 ≤ μ* ⊥ tr(family(μ*)) − P ≤ 0 by bisection, for a family whose
/// trace is nonincreasing in μ. The upper end of the bracket is doubled when
/// it does not straddle; BracketError if it never does.
MultiplierResult trace_budget_multiplier(const std::function<CMatrix(double)>& family,
                                         double budget, double lo, double hi,
                                         const MultiplierOptions& opts = {});

/// Unique maximizer over p ≥ 0 of a·log(1+b·p) + d·p − (c/2)·p².
/// ParameterError unless a ≥ 0, b > 0, c > 0.
double wf_scalar(double a, double b, double c, double d);

/// Same maximizer without the argument checks; also accepts b = 0, where the
/// logarithmic term vanishes. Evaluated through the cancellation-free root of
/// the stationarity quadratic.
double waterfill_root(double a, double b, double c, double d);

/// Central-difference check of an analytic gradient. Returns the largest
/// componentwise error |fd_k − g_k| / max(|g_k|, 1e-3·‖g‖∞, 1e-12).
double fd_gradient_check(const std::function<double(const RVector&)>& fn,
                         const RVector& analytic_gradient, const RVector& x, double h);

// Real-composite coordinates of an n×n Hermitian matrix: the n diagonal
// entries, then (Re, Im) of each strictly-upper entry in row-major order.
RVector hermitian_to_real(const CMatrix& a);
CMatrix real_to_hermitian(const RVector& v, Eigen::Index n);

/// Maps a conjugate gradient G = ∇_{Q*} f into the gradient with respect to
/// the real-composite coordinates of Q: (G_kk, 2·Re G_kl, 2·Im G_kl).
RVector conjugate_gradient_to_real(const CMatrix& g);

/// First divided differences of f on the eigenvalues of a Hermitian matrix,
/// the kernel of the Daleckii–Krein derivative formula.
RMatrix divided_differences(const RVector& values, const std::function<double(double)>& f,
                            const std::function<double(double)>& df);

/// Directional derivative of a spectral function: P (F ∘ (Pᴴ E P)) Pᴴ.
CMatrix spectral_derivative(const EigPair& eig, const RMatrix& divided, const CMatrix& direction);

/// Matrix function P f(Λ) Pᴴ.
CMatrix spectral_apply(const EigPair& eig, const std::function<double(double)>& f);

}  // namespace sca::linalg
