#include "sca/baselines.hpp"

#include "sca/errors.hpp"

namespace sca::baselines {

StepSchedule conditional_gradient_schedule() { return make_schedule_power(0.91, 0.9, 1.0); }

SurrogatePolicy conditional_gradient_policy(double tau) {
  SurrogatePolicy p;
  p.kind = SurrogateKind::ConditionalGradient;
  p.tau = {tau};
  return p;
}

RecursiveStepsize::RecursiveStepsize(double decay) : decay_(decay), values_{1.0} {
  if (!(decay > 0.0 && decay < 1.0)) throw ParameterError("recursive stepsize: decay outside (0, 1)");
}

double RecursiveStepsize::operator()(long t) {
  if (t < 1) throw ContractError("recursive stepsize is defined for t >= 1");
  while (static_cast<long>(values_.size()) < t) {
    const double g = values_.back();
    values_.push_back(g * (1.0 - decay_ * g));
  }
  return values_[static_cast<std::size_t>(t - 1)];
}

StrategyProfile gradient_projection_step(const StrategyProfile& x_t,
                                         const std::vector<Block>& sample_grad, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ParameterError("gradient projection: gamma outside (0, 1]");
  if (sample_grad.size() != x_t.size()) throw ContractError("gradient projection: user count mismatch");
  StrategyProfile out;
  out.budgets = x_t.budgets;
  for (std::size_t i = 0; i < x_t.size(); ++i)
    out.blocks.push_back(project_block(axpby(1.0, x_t.blocks[i], gamma, sample_grad[i]), x_t.budgets[i]));
  return out;
}

}  // namespace sca::baselines
