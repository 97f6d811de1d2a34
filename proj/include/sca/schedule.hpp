#pragma once

#include <string>
#include <vector>

namespace sca {

/// Step-size sequences {γ^t} (iterate averaging, t ≥ 1) and {ρ^t}
/// (gradient averaging, t ≥ 0). Values are in (0, 1].
///
/// The power-law family uses γ^t = scale/(t+2)^α and ρ^t = scale/(t+2)^β for
/// t ≥ 2, clamped to 1, with γ¹ = ρ⁰ = ρ¹ = 1. Explicit sequences may also be
/// supplied; indices past their end repeat the last value.
class StepSchedule {
 public:
  enum class Family { PowerLaw, Explicit };

  static StepSchedule power_law(double alpha, double beta, double scale);
  /// gamma[k] is γ^{k+1}; rho[k] is ρ^k.
  static StepSchedule explicit_sequences(std::vector<double> gamma, std::vector<double> rho);

  double gamma(long t) const;
  double rho(long t) const;

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double scale() const { return scale_; }

  std::string describe() const;

 private:
  StepSchedule() = default;

  Family family_ = Family::PowerLaw;
  double alpha_ = 1.0;
  double beta_ = 1.0;
  double scale_ = 1.0;
  std::vector<double> gamma_seq_;
  std::vector<double> rho_seq_;
};

/// make_schedule_power: ParameterError unless 0 < alpha ≤ 1, beta > 0, scale > 0.
StepSchedule make_schedule_power(double alpha, double beta, double scale);

struct ScheduleReport {
  bool analytic = false;  // power-law: conditions decided in closed form
  bool heuristic = false;  // explicit sequences: numerical proxies only
  bool cond_gamma = false;  // γ^t → 0, Σγ = ∞, Σγ² < ∞
  bool cond_rho = false;    // ρ^t → 0, Σρ = ∞, Σρ² < ∞
  bool cond_ratio = false;  // γ^t/ρ^t → 0
  // The fourth condition involves Lipschitz constants of the sample
  // gradients and cannot be checked from the sequences alone.
  std::string cond_lipschitz = "not checkable: needs limsup ρ^t·Σ_j L_j(ξ^t) = 0";
  std::vector<std::string> messages;

  // Numerical proxies evaluated up to the horizon.
  double gamma_sum = 0.0;
  double gamma_sq_sum = 0.0;
  double rho_sum = 0.0;
  double rho_sq_sum = 0.0;
  double ratio_start = 0.0;
  double ratio_end = 0.0;

  bool valid() const { return cond_gamma && cond_rho && cond_ratio; }
};

ScheduleReport validate_schedule(const StepSchedule& sched, long horizon);

}  // namespace sca
