#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sca/linalg.hpp"

namespace sca {

using linalg::CMatrix;
using linalg::RVector;

/// Feasible set of one user's block.
///  Power:      p ≥ 0, Σ p ≤ budget
///  Covariance: Q Hermitian PSD, tr Q ≤ budget
///  Box:        |x_k| ≤ budget
enum class BlockKind { Power, Covariance, Box };

/// One user's decision variable. Vector kinds use `vec`, Covariance uses `mat`.
struct Block {
  BlockKind kind = BlockKind::Power;
  RVector vec;
  CMatrix mat;

  static Block power(RVector p);
  static Block covariance(CMatrix q);
  static Block box(RVector x);
  /// Zero block with the same kind and shape.
  Block zeros_like() const;

  bool same_shape(const Block& other) const;
  /// Euclidean / Frobenius norm.
  double norm() const;
};

/// a·x + b·y blockwise. ContractError on shape mismatch.
Block axpby(double a, const Block& x, double b, const Block& y);
/// Real inner product (Re tr(AᴴB) for matrices).
double inner(const Block& x, const Block& y);

struct StrategyProfile {
  std::vector<Block> blocks;
  std::vector<double> budgets;

  std::size_t size() const { return blocks.size(); }
};

struct FeasibilityTolerance {
  double hermitian = 1e-12;
  double min_eig = 1e-9;
  double budget = 1e-9;  // scaled by max(1, P)
  double nonnegative = 1e-12;
};

/// Empty string when feasible, otherwise a description of the first violation.
std::string feasibility_violation(const Block& b, double budget, const FeasibilityTolerance& tol = {});
bool is_feasible(const StrategyProfile& x, const FeasibilityTolerance& tol = {});
/// Throws InvariantViolation naming the user and the violated constraint.
void require_feasible(const StrategyProfile& x, const FeasibilityTolerance& tol = {});

/// Euclidean projection of a block onto its feasible set.
Block project_block(const Block& y, double budget);

/// argmax over the feasible set of ⟨L, y − a⟩ − c‖y − a‖². For c > 0 this is
/// the projection of a + L/(2c); for c = 0 a maximizing vertex is returned
/// (all power on the best positive coordinate, the top eigenvector, or the
/// sign pattern of L).
Block maximize_linear_proximal(const Block& linear, const Block& anchor, double c, double budget);

/// Running averages f_i of the sample gradients, one block per user.
struct GradientAccumulator {
  std::vector<Block> blocks;
  long last_update = -1;
};

/// (1 − rho)·f_prev + rho·sample_grad. ContractError on shape mismatch,
/// ParameterError unless rho ∈ [0, 1].
Block accumulate_gradient(const Block& f_prev, const Block& sample_grad, double rho);

/// x_t + gamma·(x_hat − x_t), blockwise. Both profiles must be feasible.
StrategyProfile update_iterate(const StrategyProfile& x_t, const StrategyProfile& x_hat,
                               double gamma);

/// max_i ‖x̂_i − x_i‖.
double stationarity_gap(const StrategyProfile& x_t, const StrategyProfile& x_hat);

}  // namespace sca
