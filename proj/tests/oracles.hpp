#pragma once

// Reference solvers used by the tests. They are deliberately simple (first
// order, sorting-based projections, bisection) and share no numerical code
// with the library beyond Eigen.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline CMatrix herm(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

inline double inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

/// Euclidean projection onto {x ≥ 0, Σx ≤ budget} by sorting.
inline RVector project_capped_simplex(const RVector& v, double budget) {
  RVector clipped = v.cwiseMax(0.0);
  if (clipped.sum() <= budget) return clipped;
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - budget) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

/// Projection onto {X ⪰ 0, tr X ≤ budget}.
inline CMatrix project_psd_trace(const CMatrix& x, double budget) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(x));
  const RVector lam = project_capped_simplex(es.eigenvalues(), budget);
  return herm(es.eigenvectors() * lam.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
}

/// Frank–Wolfe gap max_{S ⪰ 0, tr S ≤ P} ⟨G, S − X⟩; bounds f* − f(X) for a
/// concave f with gradient G at X.
inline double fw_gap(const CMatrix& grad, const CMatrix& x, double budget) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(grad));
  return budget * std::max(es.eigenvalues().maxCoeff(), 0.0) - inner(grad, x);
}

inline double logdet(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(herm(m));
  double v = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) v += 2.0 * std::log(llt.matrixLLT()(k, k).real());
  return v;
}

struct LogdetInstance {
  CMatrix R, H, A, Xbar;
  double weight = 1.0, tau = 1.0, budget = 1.0;

  double value(const CMatrix& X) const {
    return weight * (logdet(R + H * X * H.adjoint()) - logdet(R)) + inner(A, X) -
           tau * (X - Xbar).squaredNorm();
  }
  CMatrix gradient(const CMatrix& X) const {
    const CMatrix C = herm(R + H * X * H.adjoint());
    return herm(weight * H.adjoint() * C.llt().solve(H) + A - 2.0 * tau * (X - Xbar));
  }
};

struct FirstOrderResult {
  CMatrix X;
  double value = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  long iterations = 0;
};

/// Accelerated projected gradient ascent with adaptive restart; stops once
/// the Frank–Wolfe gap certifies the requested accuracy.
inline FirstOrderResult maximize_logdet(const LogdetInstance& p, double gap_tol = 1e-8,
                                        long max_iterations = 2000000) {
  const CMatrix G = herm(p.H.adjoint() * herm(p.R).llt().solve(p.H));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
  const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
  const double L = p.weight * lmax * lmax + 2.0 * p.tau + 1e-12;
  const Eigen::Index n = p.H.cols();
  CMatrix x = CMatrix::Identity(n, n) * (p.budget / static_cast<double>(n));
  CMatrix y = x;
  double t = 1.0;
  double fx = p.value(x);
  FirstOrderResult out;
  for (long k = 0; k < max_iterations; ++k) {
    if (k % 50 == 0) {
      out.gap = fw_gap(p.gradient(x), x, p.budget);
      out.iterations = k;
      if (out.gap <= gap_tol) break;
    }
    const CMatrix xn = project_psd_trace(y + p.gradient(y) / L, p.budget);
    const double fn = p.value(xn);
    if (fn < fx && t > 1.0) {  // restart momentum
      y = x;
      t = 1.0;
      continue;
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = xn + ((t - 1.0) / tn) * (xn - x);
    x = xn;
    fx = fn;
    t = tn;
  }
  out.X = x;
  out.value = fx;
  out.gap = fw_gap(p.gradient(x), x, p.budget);
  return out;
}

/// Concave sum-rate logdet(R_N + Σ H_i Q_i H_iᴴ) over per-user trace sets.
struct MacInstance {
  std::vector<CMatrix> H;
  CMatrix RN;
  double budget = 1.0;

  double value(const std::vector<CMatrix>& Q) const {
    CMatrix C = RN;
    for (std::size_t i = 0; i < H.size(); ++i) C += H[i] * Q[i] * H[i].adjoint();
    return logdet(C);
  }
  std::vector<CMatrix> gradient(const std::vector<CMatrix>& Q) const {
    CMatrix C = RN;
    for (std::size_t i = 0; i < H.size(); ++i) C += H[i] * Q[i] * H[i].adjoint();
    const Eigen::LLT<CMatrix> llt(herm(C));
    std::vector<CMatrix> g;
    for (const CMatrix& h : H) g.push_back(herm(h.adjoint() * llt.solve(h)));
    return g;
  }
};

struct MacResult {
  std::vector<CMatrix> Q;
  double value = 0.0;
  double gap = std::numeric_limits<double>::infinity();
};

inline MacResult maximize_mac(const MacInstance& p, double gap_tol = 1e-10,
                              long max_iterations = 2000000) {
  double L = 0.0;
  for (const CMatrix& h : p.H) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(h.adjoint() * herm(p.RN).llt().solve(h)));
    L += es.eigenvalues().maxCoeff() * es.eigenvalues().maxCoeff();
  }
  L = std::max(L, 1e-12);
  std::vector<CMatrix> x;
  for (const CMatrix& h : p.H)
    x.push_back(CMatrix::Identity(h.cols(), h.cols()) * (p.budget / static_cast<double>(h.cols())));
  std::vector<CMatrix> y = x;
  double t = 1.0, fx = p.value(x);
  MacResult out;
  auto gap_of = [&](const std::vector<CMatrix>& q) {
    const auto g = p.gradient(q);
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) s += fw_gap(g[i], q[i], p.budget);
    return s;
  };
  for (long k = 0; k < max_iterations; ++k) {
    if (k % 50 == 0 && gap_of(x) <= gap_tol) break;
    const auto g = p.gradient(y);
    std::vector<CMatrix> xn(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xn[i] = project_psd_trace(y[i] + g[i] / L, p.budget);
    const double fn = p.value(xn);
    if (fn < fx && t > 1.0) {
      y = x;
      t = 1.0;
      continue;
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = xn[i] + ((t - 1.0) / tn) * (xn[i] - x[i]);
    x = std::move(xn);
    fx = fn;
    t = tn;
  }
  out.Q = x;
  out.value = fx;
  out.gap = gap_of(x);
  return out;
}

/// Maximizer on [0, hi] of a concave scalar function given its (decreasing)
/// derivative, by bisection on the sign of the derivative.
inline double bisect_max(const std::function<double(double)>& df, double hi) {
  if (df(0.0) <= 0.0) return 0.0;
  while (df(hi) > 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (df(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Orthonormal basis of the Hermitian n×n matrices (real inner product).
inline std::vector<CMatrix> hermitian_basis(Eigen::Index n) {
  std::vector<CMatrix> basis;
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a; b < n; ++b) {
      CMatrix e = CMatrix::Zero(n, n);
      if (a == b) {
        e(a, a) = 1.0;
        basis.push_back(e);
        continue;
      }
      e(a, b) = e(b, a) = s;
      basis.push_back(e);
      CMatrix f = CMatrix::Zero(n, n);
      f(a, b) = Complex(0.0, s);
      f(b, a) = Complex(0.0, -s);
      basis.push_back(f);
    }
  return basis;
}

/// Largest relative mismatch between ⟨G, E⟩ and the central difference of f
/// along every basis direction E, relative to max(|⟨G,E⟩|, 1e-3·max_E |⟨G,E⟩|).
inline double fd_hermitian_check(const std::function<double(const CMatrix&)>& f,
                                 const CMatrix& grad, const CMatrix& x, double h = 1e-6) {
  const auto basis = hermitian_basis(x.rows());
  std::vector<double> analytic, numeric;
  double scale = 0.0;
  for (const CMatrix& e : basis) {
    analytic.push_back(inner(grad, e));
    numeric.push_back((f(x + h * e) - f(x - h * e)) / (2.0 * h));
    scale = std::max(scale, std::abs(analytic.back()));
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double denom = std::max({std::abs(analytic[k]), 1e-3 * scale, 1e-12});
    worst = std::max(worst, std::abs(analytic[k] - numeric[k]) / denom);
  }
  return worst;
}

/// Same for a real vector argument.
inline double fd_vector_check(const std::function<double(const RVector&)>& f, const RVector& grad,
                              const RVector& x, double h = 1e-6) {
  const double scale = grad.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    RVector xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    const double fd = (f(xp) - f(xm)) / (2.0 * h);
    const double denom = std::max({std::abs(grad(k)), 1e-3 * scale, 1e-12});
    worst = std::max(worst, std::abs(fd - grad(k)) / denom);
  }
  return worst;
}

/// Standard complex Gaussian matrix, randn + i·randn per entry.
inline CMatrix randn_complex(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

}  // namespace oracle
