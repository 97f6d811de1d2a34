#include "sca/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sca/errors.hpp"

namespace sca {

StepSchedule StepSchedule::power_law(double alpha, double beta, double scale) {
  StepSchedule s;
  s.family_ = Family::PowerLaw;
  s.alpha_ = alpha;
  s.beta_ = beta;
  s.scale_ = scale;
  return s;
}

StepSchedule StepSchedule::explicit_sequences(std::vector<double> gamma, std::vector<double> rho) {
  if (gamma.empty() || rho.empty()) throw ParameterError("explicit schedule: empty sequence");
  for (double v : gamma)
    if (!(v > 0.0 && v <= 1.0)) throw ParameterError("explicit schedule: gamma outside (0,1]");
  for (double v : rho)
    if (!(v > 0.0 && v <= 1.0)) throw ParameterError("explicit schedule: rho outside (0,1]");
  StepSchedule s;
  s.family_ = Family::Explicit;
  s.gamma_seq_ = std::move(gamma);
  s.rho_seq_ = std::move(rho);
  return s;
}

double StepSchedule::gamma(long t) const {
  if (t < 1) throw ContractError("gamma is defined for t >= 1");
  if (family_ == Family::Explicit) {
    const auto k = static_cast<std::size_t>(t - 1);
    return k < gamma_seq_.size() ? gamma_seq_[k] : gamma_seq_.back();
  }
  if (t == 1) return 1.0;
  return std::min(1.0, scale_ / std::pow(static_cast<double>(t) + 2.0, alpha_));
}

double StepSchedule::rho(long t) const {
  if (t < 0) throw ContractError("rho is defined for t >= 0");
  if (family_ == Family::Explicit) {
    const auto k = static_cast<std::size_t>(t);
    return k < rho_seq_.size() ? rho_seq_[k] : rho_seq_.back();
  }
  if (t <= 1) return 1.0;
  return std::min(1.0, scale_ / std::pow(static_cast<double>(t) + 2.0, beta_));
}

std::string StepSchedule::describe() const {
  std::ostringstream os;
  if (family_ == Family::PowerLaw)
    os << "power-law(alpha=" << alpha_ << ", beta=" << beta_ << ", scale=" << scale_ << ")";
  else
    os << "explicit(" << gamma_seq_.size() << " gamma, " << rho_seq_.size() << " rho)";
  return os.str();
}

StepSchedule make_schedule_power(double alpha, double beta, double scale) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("alpha must lie in (0, 1]");
  if (!(beta > 0.0)) throw ParameterError("beta must be positive");
  if (!(scale > 0.0)) throw ParameterError("scale must be positive");
  return StepSchedule::power_law(alpha, beta, scale);
}

ScheduleReport validate_schedule(const StepSchedule& sched, long horizon) {
  if (horizon < 1) throw ParameterError("validate_schedule: horizon must be >= 1");
  ScheduleReport r;

  for (long t = 1; t <= horizon; ++t) {
    const double g = sched.gamma(t);
    const double p = sched.rho(t);
    r.gamma_sum += g;
    r.gamma_sq_sum += g * g;
    r.rho_sum += p;
    r.rho_sq_sum += p * p;
  }
  r.ratio_start = sched.gamma(1) / sched.rho(1);
  r.ratio_end = sched.gamma(horizon) / sched.rho(horizon);

  if (sched.family() == StepSchedule::Family::PowerLaw) {
    r.analytic = true;
    const double a = sched.alpha();
    const double b = sched.beta();
    r.cond_gamma = a > 0.5 && a <= 1.0;
    r.cond_rho = b > 0.5 && b <= 1.0;
    r.cond_ratio = b < a;
    if (!r.cond_gamma)
      r.messages.push_back("condition i: alpha must lie in (0.5, 1]");
    if (!r.cond_rho)
      r.messages.push_back(b <= 0.5 ? "condition ii: beta must exceed 0.5"
                                    : "condition ii: beta must not exceed 1");
    if (!r.cond_ratio)
      r.messages.push_back("condition iii: gamma/rho does not vanish (need beta < alpha)");
    return r;
  }

  // Explicit sequences: compare decay rates between the half-horizon and the
  // horizon. t·s_t must not shrink (divergent sum) and t·s_t² must shrink
  // (square-summable). These are proxies, not proofs.
  r.heuristic = true;
  const long mid = std::max(1L, horizon / 2);
  auto decays_ok = [&](auto&& seq) {
    const double at_mid = seq(mid);
    const double at_end = seq(horizon);
    const bool vanishing = at_end < seq(1) || at_end < 1.0;
    const bool divergent = horizon * at_end >= 0.5 * mid * at_mid;
    const bool square_summable = horizon * at_end * at_end <= mid * at_mid * at_mid;
    return vanishing && divergent && square_summable && horizon > 1;
  };
  r.cond_gamma = decays_ok([&](long t) { return sched.gamma(t); });
  r.cond_rho = decays_ok([&](long t) { return sched.rho(t); });
  r.cond_ratio = r.ratio_end < sched.gamma(mid) / sched.rho(mid);
  r.messages.push_back("explicit sequences: conditions assessed by numerical proxies only");
  if (!r.cond_gamma) r.messages.push_back("condition i: proxy failed");
  if (!r.cond_rho) r.messages.push_back("condition ii: proxy failed");
  if (!r.cond_ratio) r.messages.push_back("condition iii: gamma/rho not decreasing");
  return r;
}

}  // namespace sca
