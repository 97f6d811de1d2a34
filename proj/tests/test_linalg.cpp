#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sca/errors.hpp"
#include "sca/linalg.hpp"

using namespace sca;
using namespace sca::linalg;

namespace {

CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  return hermitize(oracle::randn_complex(rng, n, n));
}

CMatrix random_pd(std::mt19937_64& rng, Eigen::Index n) {
  const CMatrix g = oracle::randn_complex(rng, n, n);
  return hermitize(g * g.adjoint() + 0.5 * CMatrix::Identity(n, n));
}

CMatrix diag(std::initializer_list<double> d) {
  RVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (double x : d) v(k++) = x;
  return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("hermitian_eig examples") {
  const EigPair id = hermitian_eig(CMatrix::Identity(2, 2));
  CHECK(id.values(0) == doctest::Approx(1.0));
  CHECK(id.values(1) == doctest::Approx(1.0));
  CHECK(max_abs(id.vectors.adjoint() * id.vectors - CMatrix::Identity(2, 2)) < 1e-12);

  const EigPair pm = hermitian_eig(diag({1.0, -1.0}));
  CHECK(pm.values(0) == doctest::Approx(1.0));
  CHECK(pm.values(1) == doctest::Approx(-1.0));

  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const CMatrix a = random_hermitian(rng, 4);
    const EigPair e = hermitian_eig(a);
    CHECK(max_abs(e.reconstruct() - a) <= 1e-9);
    for (Eigen::Index j = 1; j < 4; ++j) CHECK(e.values(j - 1) >= e.values(j));
  }

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(bad), ContractError);
}

TEST_CASE("generalized_eig_pd examples and normalization") {
  CMatrix d1(1, 1), b(1, 1);
  d1(0, 0) = 2.0;
  b(0, 0) = 0.5;
  const GeneralizedEig s = generalized_eig_pd(d1, b);
  CHECK(std::abs(s.vectors(0, 0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.values(0) == doctest::Approx(4.0));

  std::mt19937_64 rng(12);
  const CMatrix same = random_pd(rng, 3);
  const GeneralizedEig ones = generalized_eig_pd(same, same);
  for (Eigen::Index k = 0; k < 3; ++k) CHECK(ones.values(k) == doctest::Approx(1.0).epsilon(1e-10));

  for (Eigen::Index n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const CMatrix d = random_pd(rng, n);
      const CMatrix bb = random_pd(rng, n);
      const GeneralizedEig g = generalized_eig_pd(d, bb);
      const CMatrix& V = g.vectors;
      CHECK(max_abs(V.adjoint() * bb * V - CMatrix::Identity(n, n)) <= 1e-8);
      CHECK(max_abs(d * V - bb * V * g.values.cast<Complex>().asDiagonal()) <= 1e-8);
    }
  }

  CHECK_THROWS_AS(generalized_eig_pd(diag({1.0, 1.0}), diag({1.0, -1.0})), DefinitenessError);
}

TEST_CASE("psd_project examples and projection property") {
  CHECK(max_abs(psd_project(diag({1.0, 2.0})) - diag({1.0, 2.0})) < 1e-12);
  CHECK(max_abs(psd_project(diag({1.0, -1.0})) - diag({1.0, 0.0})) < 1e-12);
  CMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  CMatrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_abs(psd_project(swap) - half) < 1e-12);

  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    const CMatrix x = random_hermitian(rng, 3);
    const CMatrix p = psd_project(x);
    CHECK(max_abs(psd_project(p) - p) < 1e-10);
    CHECK(lambda_min(p) >= -1e-12);
    for (int s = 0; s < 5; ++s) {
      const CMatrix g = oracle::randn_complex(rng, 3, 3);
      const CMatrix S = hermitize(g * g.adjoint());
      CHECK((x - p).norm() <= (x - S).norm() + 1e-12);
    }
  }
}

TEST_CASE("trace_budget_multiplier examples") {
  auto family_for = [](const CMatrix& x) {
    return [x](double mu) { return psd_project(x - mu * CMatrix::Identity(x.rows(), x.cols())); };
  };
  const MultiplierResult interior = trace_budget_multiplier(family_for(diag({1.0, 0.5})), 2.0, 0.0, 1.0);
  CHECK(interior.mu == 0.0);
  CHECK(max_abs(interior.matrix - diag({1.0, 0.5})) < 1e-12);

  const MultiplierResult active = trace_budget_multiplier(family_for(diag({3.0, 1.0})), 2.0, 0.0, 4.0);
  CHECK(active.mu == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(max_abs(active.matrix - diag({2.0, 0.0})) < 1e-9);

  const MultiplierResult zero = trace_budget_multiplier(family_for(CMatrix::Zero(2, 2)), 1.0, 0.0, 1.0);
  CHECK(zero.mu == 0.0);
  CHECK(max_abs(zero.matrix) == 0.0);

  // Complementarity: either μ = 0 with slack or the budget is met.
  std::mt19937_64 rng(14);
  for (int k = 0; k < 50; ++k) {
    const CMatrix x = random_hermitian(rng, 3) * 2.0;
    const MultiplierResult r = trace_budget_multiplier(family_for(x), 1.5, 0.0, 1.0);
    if (r.mu == 0.0)
      CHECK(r.trace <= 1.5 + 1e-12);
    else
      CHECK(std::abs(r.trace - 1.5) <= 1e-10);
  }

  // A family whose trace never drops to the budget.
  auto stuck = [](double) { return CMatrix::Identity(2, 2); };
  MultiplierOptions few;
  few.max_expansions = 3;
  CHECK_THROWS_AS(trace_budget_multiplier(stuck, 1.0, 0.0, 1.0, few), BracketError);
}

TEST_CASE("waterlevel and capped simplex agree with the oracle projection") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    RVector v(5);
    for (Eigen::Index j = 0; j < 5; ++j) v(j) = n(rng);
    const double budget = 0.1 + std::abs(n(rng));
    CHECK((project_capped_simplex(v, budget) - oracle::project_capped_simplex(v, budget))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    const double mu = waterlevel(v, budget);
    CHECK(mu >= 0.0);
    const double used = (v.array() - mu).cwiseMax(0.0).sum();
    CHECK(used <= budget + 1e-12);
    if (mu > 0.0) CHECK(used == doctest::Approx(budget).epsilon(1e-12));
  }

  for (int k = 0; k < 50; ++k) {
    const CMatrix x = random_hermitian(rng, 3) * 2.0;
    double mu = -1.0;
    const CMatrix p = project_trace_ball(x, 1.0, &mu);
    CHECK(max_abs(p - oracle::project_psd_trace(x, 1.0)) <= 1e-10);
    CHECK(mu >= 0.0);
  }
}

TEST_CASE("wf_scalar examples and errors") {
  CHECK(wf_scalar(0.0, 1.0, 1.0, 2.0) == doctest::Approx(2.0));
  CHECK(wf_scalar(0.0, 1.0, 1.0, -3.0) == 0.0);
  CHECK(wf_scalar(1.0, 1.0, 2.0, 0.0) == doctest::Approx(0.5 * (std::sqrt(3.0) - 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(wf_scalar(1.0, 0.0, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(wf_scalar(1.0, 1.0, 0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(wf_scalar(-1.0, 1.0, 1.0, 0.0), ParameterError);
  // b = 0 drops the logarithm.
  CHECK(waterfill_root(3.0, 0.0, 2.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("wf_scalar matches derivative bisection") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> pos(1e-3, 10.0), lin(-10.0, 10.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double a = pos(rng), b = pos(rng), c = pos(rng), d = lin(rng);
    const double ref = oracle::bisect_max(
        [&](double p) { return a * b / (1.0 + b * p) + d - c * p; }, 1.0 + (a * b + std::abs(d)) / c);
    worst = std::max(worst, std::abs(wf_scalar(a, b, c, d) - ref));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("fd_gradient_check examples") {
  std::mt19937_64 rng(17);
  RVector x = RVector::Random(6);
  const double quad = fd_gradient_check([](const RVector& v) { return 0.5 * v.squaredNorm(); }, x, x, 1e-5);
  CHECK(quad <= 1e-8);

  // logdet(R + HQHᴴ) in real-composite coordinates of Q.
  const CMatrix R = random_pd(rng, 3);
  const CMatrix H = oracle::randn_complex(rng, 3, 2);
  const CMatrix G = oracle::randn_complex(rng, 2, 2);
  const CMatrix Q = hermitize(G * G.adjoint()) + CMatrix::Identity(2, 2);
  auto f = [&](const RVector& v) {
    return oracle::logdet(R + H * real_to_hermitian(v, 2) * H.adjoint());
  };
  const CMatrix grad = hermitize(H.adjoint() * (R + H * Q * H.adjoint()).inverse() * H);
  CHECK(fd_gradient_check(f, conjugate_gradient_to_real(grad), hermitian_to_real(Q), 1e-6) <= 1e-5);
}

TEST_CASE("real-composite coordinates round trip") {
  std::mt19937_64 rng(18);
  for (Eigen::Index n = 1; n <= 4; ++n) {
    const CMatrix a = random_hermitian(rng, n);
    const RVector v = hermitian_to_real(a);
    CHECK(v.size() == n * n);
    CHECK(max_abs(real_to_hermitian(v, n) - a) < 1e-15);
    // ⟨G, E⟩ = ∇_real · vec(E) for Hermitian directions.
    const CMatrix g = random_hermitian(rng, n);
    const CMatrix e = random_hermitian(rng, n);
    CHECK(conjugate_gradient_to_real(g).dot(hermitian_to_real(e)) ==
          doctest::Approx(inner(g, e)).epsilon(1e-12));
  }
}

TEST_CASE("spectral derivative matches finite differences") {
  std::mt19937_64 rng(19);
  const CMatrix a = random_hermitian(rng, 3);
  const CMatrix e = random_hermitian(rng, 3);
  auto f = [](double x) { return std::exp(x); };
  auto df = [](double x) { return std::exp(x); };
  const EigPair eig = hermitian_eig(a);
  const CMatrix d = spectral_derivative(eig, divided_differences(eig.values, f, df), e);
  const double h = 1e-6;
  const CMatrix fd = (spectral_apply(hermitian_eig(a + h * e), f) -
                      spectral_apply(hermitian_eig(a - h * e), f)) /
                     (2.0 * h);
  CHECK(max_abs(d - fd) <= 1e-6 * std::max(1.0, max_abs(d)));
}
