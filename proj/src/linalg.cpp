#include "sca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "sca/errors.hpp"

namespace sca::linalg {

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol * std::max(1.0, max_abs(a));
}

CMatrix hermitize(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

double inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace().real();
}

CMatrix EigPair::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

EigPair hermitian_eig(const CMatrix& a) {
  if (!is_hermitian(a)) throw ContractError("hermitian_eig: input is not Hermitian");
  const Eigen::Index n = a.rows();
  EigPair out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(a));
  // Eigen sorts ascending.
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

double lambda_max(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitize(a), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .maxCoeff();
}

double lambda_min(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitize(a), Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

GeneralizedEig generalized_eig_pd(const CMatrix& d1, const CMatrix& b) {
  if (d1.rows() != b.rows() || d1.cols() != b.cols())
    throw ContractError("generalized_eig_pd: dimension mismatch");
  if (!is_hermitian(d1) || !is_hermitian(b))
    throw ContractError("generalized_eig_pd: pencil is not Hermitian");
  GeneralizedEig out;
  if (b.rows() == 0) return out;
  const CMatrix bh = hermitize(b);
  const double scale = std::max(max_abs(bh), std::numeric_limits<double>::min());
  if (lambda_min(bh) <= 1e-12 * scale)
    throw DefinitenessError("generalized_eig_pd: B is not positive definite");
  Eigen::LLT<CMatrix> llt(bh);
  if (llt.info() != Eigen::Success)
    throw DefinitenessError("generalized_eig_pd: Cholesky factorization failed");
  const auto lower = llt.matrixL();
  const CMatrix left = lower.solve(hermitize(d1));
  const CMatrix reduced = hermitize(lower.solve(CMatrix(left.adjoint())));
  const EigPair eig = hermitian_eig(reduced);
  out.values = eig.values;
  out.vectors = llt.matrixU().solve(eig.vectors);
  return out;
}

CMatrix psd_project(const CMatrix& x) {
  const EigPair eig = hermitian_eig(x);
  return spectral_apply(eig, [](double v) { return v > 0.0 ? v : 0.0; });
}

double waterlevel(const RVector& values, double budget) {
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end(), std::greater<>());
  double positive = 0.0;
  for (double x : v) positive += std::max(x, 0.0);
  if (positive <= budget) return 0.0;
  double prefix = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    prefix += v[k];
    const double mu = (prefix - budget) / static_cast<double>(k + 1);
    const double next = k + 1 < v.size() ? v[k + 1] : -std::numeric_limits<double>::infinity();
    if (mu >= next && mu < v[k]) return std::max(mu, 0.0);
  }
  // Only reachable through rounding at a breakpoint.
  return std::max((prefix - budget) / static_cast<double>(v.size()), 0.0);
}

RVector project_capped_simplex(const RVector& v, double budget) {
  const double mu = waterlevel(v, budget);
  return (v.array() - mu).max(0.0).matrix();
}

CMatrix project_trace_ball(const CMatrix& x, double budget, double* mu) {
  const EigPair eig = hermitian_eig(x);
  const double level = waterlevel(eig.values, budget);
  if (mu != nullptr) *mu = level;
  return spectral_apply(eig, [level](double v) { return std::max(v - level, 0.0); });
}

MultiplierResult trace_budget_multiplier(const std::function<CMatrix(double)>& family,
                                         double budget, double lo, double hi,
                                         const MultiplierOptions& opts) {
  if (!(budget > 0.0)) throw ParameterError("trace_budget_multiplier: budget must be positive");
  if (lo < 0.0) lo = 0.0;
  MultiplierResult res;
  auto trace_of = [](const CMatrix& m) { return m.trace().real(); };

  CMatrix lo_matrix = family(lo);
  double lo_trace = trace_of(lo_matrix);
  if (lo_trace <= budget) {
    res.mu = lo;
    res.matrix = std::move(lo_matrix);
    res.trace = lo_trace;
    return res;
  }

  if (hi <= lo) hi = lo > 0.0 ? 2.0 * lo : 1.0;
  CMatrix hi_matrix = family(hi);
  double hi_trace = trace_of(hi_matrix);
  for (int k = 0; hi_trace > budget; ++k) {
    if (k >= opts.max_expansions)
      throw BracketError("trace_budget_multiplier: bracket does not straddle the budget");
    lo = hi;
    hi *= 2.0;
    hi_matrix = family(hi);
    hi_trace = trace_of(hi_matrix);
  }

  // Illinois regula falsi on tr(μ) − P, which is nonincreasing in μ; every
  // third step is a plain bisection so the bracket always shrinks.
  double f_lo = lo_trace - budget;
  double f_hi = hi_trace - budget;
  int side = 0;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    double mid = 0.5 * (lo + hi);
    if (it % 3 != 2 && f_lo > f_hi) {
      const double secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
      if (secant > lo && secant < hi) mid = secant;
    }
    if (!(mid > lo && mid < hi)) break;
    CMatrix m = family(mid);
    const double tr = trace_of(m);
    if (std::abs(tr - budget) <= opts.trace_tol * budget) {
      res.mu = mid;
      res.matrix = std::move(m);
      res.trace = tr;
      res.iterations = it + 1;
      return res;
    }
    if (tr > budget) {
      lo = mid;
      f_lo = tr - budget;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = mid;
      f_hi = tr - budget;
      hi_matrix = std::move(m);
      hi_trace = tr;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  res.mu = hi;
  res.matrix = std::move(hi_matrix);
  res.trace = hi_trace;
  res.iterations = it;
  return res;
}

double waterfill_root(double a, double b, double c, double d) {
  // Stationarity of a·log(1+bp) + dp − (c/2)p²: bc·p² + (c − bd)·p − (d + ab) = 0.
  const double slope_at_zero = a * b + d;
  if (slope_at_zero <= 0.0) return 0.0;
  const double quad = b * c;
  const double lin = c - b * d;
  const double disc = (c + b * d) * (c + b * d) + 4.0 * a * b * b * c;
  const double root = std::sqrt(disc);
  if (lin <= 0.0) return (-lin + root) / (2.0 * quad);
  return 2.0 * slope_at_zero / (lin + root);
}

double wf_scalar(double a, double b, double c, double d) {
  if (!(a >= 0.0)) throw ParameterError("wf_scalar: a must be nonnegative");
  if (!(b > 0.0)) throw ParameterError("wf_scalar: b must be positive");
  if (!(c > 0.0)) throw ParameterError("wf_scalar: c must be positive");
  return waterfill_root(a, b, c, d);
}

double fd_gradient_check(const std::function<double(const RVector&)>& fn,
                         const RVector& analytic_gradient, const RVector& x, double h) {
  if (analytic_gradient.size() != x.size())
    throw ContractError("fd_gradient_check: gradient size mismatch");
  const double scale = analytic_gradient.size() ? analytic_gradient.cwiseAbs().maxCoeff() : 0.0;
  double worst = 0.0;
  RVector probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    probe(k) = x(k) + h;
    const double up = fn(probe);
    probe(k) = x(k) - h;
    const double down = fn(probe);
    probe(k) = x(k);
    const double fd = (up - down) / (2.0 * h);
    const double denom =
        std::max({std::abs(analytic_gradient(k)), 1e-3 * scale, 1e-12});
    worst = std::max(worst, std::abs(fd - analytic_gradient(k)) / denom);
  }
  return worst;
}

RVector hermitian_to_real(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  RVector v(n * n);
  Eigen::Index pos = 0;
  for (Eigen::Index k = 0; k < n; ++k) v(pos++) = a(k, k).real();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) {
      v(pos++) = a(k, l).real();
      v(pos++) = a(k, l).imag();
    }
  return v;
}

CMatrix real_to_hermitian(const RVector& v, Eigen::Index n) {
  if (v.size() != n * n) throw ContractError("real_to_hermitian: size mismatch");
  CMatrix a(n, n);
  Eigen::Index pos = 0;
  for (Eigen::Index k = 0; k < n; ++k) a(k, k) = v(pos++);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) {
      a(k, l) = Complex(v(pos), v(pos + 1));
      a(l, k) = std::conj(a(k, l));
      pos += 2;
    }
  return a;
}

RVector conjugate_gradient_to_real(const CMatrix& g) {
  RVector v = hermitian_to_real(g);
  const Eigen::Index n = g.rows();
  v.tail(n * n - n) *= 2.0;
  return v;
}

RMatrix divided_differences(const RVector& values, const std::function<double(double)>& f,
                            const std::function<double(double)>& df) {
  const Eigen::Index n = values.size();
  RMatrix out(n, n);
  RVector fv(n);
  for (Eigen::Index k = 0; k < n; ++k) fv(k) = f(values(k));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double gap = values(i) - values(j);
      const double tol = 1e-12 * std::max({1.0, std::abs(values(i)), std::abs(values(j))});
      out(i, j) = std::abs(gap) > tol ? (fv(i) - fv(j)) / gap : df(0.5 * (values(i) + values(j)));
    }
  return out;
}

CMatrix spectral_derivative(const EigPair& eig, const RMatrix& divided, const CMatrix& direction) {
  const CMatrix rotated = eig.vectors.adjoint() * direction * eig.vectors;
  const CMatrix scaled = rotated.cwiseProduct(divided.cast<Complex>());
  return eig.vectors * scaled * eig.vectors.adjoint();
}

CMatrix spectral_apply(const EigPair& eig, const std::function<double(double)>& f) {
  RVector mapped(eig.values.size());
  for (Eigen::Index k = 0; k < mapped.size(); ++k) mapped(k) = f(eig.values(k));
  return hermitize(eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint());
}

}  // namespace sca::linalg
