#include "sca/driver.hpp"

#include <algorithm>

namespace sca {

std::string to_string(SurrogateKind kind) {
  switch (kind) {
    case SurrogateKind::ConditionalGradient: return "conditional-gradient";
    case SurrogateKind::SingleConvex: return "single-convex";
    case SurrogateKind::Pricing: return "pricing";
    case SurrogateKind::DC: return "dc";
  }
  return "unknown";
}

std::string to_string(KeptTerms kept) {
  switch (kept) {
    case KeptTerms::None: return "none";
    case KeptTerms::Own: return "own";
    case KeptTerms::All: return "all";
    case KeptTerms::ConcavePart: return "concave-part";
  }
  return "unknown";
}

double SurrogatePolicy::tau_for(std::size_t user) const {
  if (tau.empty()) return 0.0;
  if (tau.size() == 1) return tau.front();
  if (user >= tau.size()) throw ContractError("SurrogatePolicy: no proximal weight for user");
  return tau[user];
}

double SurrogatePolicy::tau_min() const {
  return tau.empty() ? 0.0 : *std::min_element(tau.begin(), tau.end());
}

}  // namespace sca
