#include "sca/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "sca/baselines.hpp"
#include "sca/errors.hpp"
#include "sca/mimo_ic.hpp"
#include "sca/mimo_mac.hpp"
#include "sca/parallel.hpp"
#include "sca/robust_pricing.hpp"
#include "sca/siso_ic.hpp"

namespace sca::bench {

namespace {

using nlohmann::json;

constexpr ScheduleParams kAveraging{0.61, 0.6, 2.0};

ScheduleParams parse_schedule(const json& j) {
  if (!j.is_object()) throw ConfigError("schedule must be an object with alpha, beta, scale");
  ScheduleParams s = kAveraging;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw ConfigError("schedule." + key + " must be a number");
    if (key == "alpha") s.alpha = value.get<double>();
    else if (key == "beta") s.beta = value.get<double>();
    else if (key == "scale") s.scale = value.get<double>();
    else throw ConfigError("unknown schedule key: " + key);
  }
  return s;
}

AlgorithmSpec parse_algorithm(const json& j) {
  AlgorithmSpec a;
  if (j.is_string()) {
    a.id = j.get<std::string>();
    return a;
  }
  if (!j.is_object()) throw ConfigError("algorithm entries must be strings or objects");
  for (const auto& [key, value] : j.items()) {
    if (key == "id") {
      if (!value.is_string()) throw ConfigError("algorithm id must be a string");
      a.id = value.get<std::string>();
    } else if (key == "tau") {
      if (!value.is_number()) throw ConfigError("algorithm tau must be a number");
      a.tau = value.get<double>();
    } else if (key == "schedule") {
      a.schedule = parse_schedule(value);
    } else {
      throw ConfigError("unknown algorithm key: " + key);
    }
  }
  if (a.id.empty()) throw ConfigError("algorithm entry without id");
  return a;
}

template <class T>
T number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(key + " must be an integer");
    if (v.is_number_unsigned()) return static_cast<T>(v.get<std::uint64_t>());
    const auto x = v.get<std::int64_t>();
    if (x < 0) throw ConfigError(key + " must be nonnegative");
    return static_cast<T>(x);
  } else {
    return v.get<T>();
  }
}

// How one algorithm id maps onto the driver.
struct Plan {
  bool gradient_projection = false;
  SurrogatePolicy policy;
  ScheduleParams schedule = kAveraging;
  bool no_gradient_averaging = false;
  robust::PriceMode mode = robust::PriceMode::Robust;
};

Plan plan_for(const ExperimentConfig& cfg, const AlgorithmSpec& spec) {
  Plan p;
  const bool mac = cfg.problem == ProblemKind::MimoMac;
  const std::string& id = spec.id;
  bool uses_defaults = true;  // global tau and schedule apply
  if (id == "best-response") {
    p.policy.kind = mac ? SurrogateKind::SingleConvex : SurrogateKind::Pricing;
    p.policy.tau = {1e-8};
  } else if (id == "proximal-gradient") {
    p.policy.kind = SurrogateKind::ConditionalGradient;
    p.policy.tau = {0.01};
  } else if (id == "conditional-gradient") {
    p.policy = baselines::conditional_gradient_policy();
    p.schedule = {0.91, 0.9, 1.0};
    uses_defaults = false;
  } else if (id == "gradient-projection") {
    p.gradient_projection = true;
    uses_defaults = false;
  } else if (id == "robust-pricing" || id == "plain-pricing" || id == "plain-exact-pricing") {
    p.policy.kind = SurrogateKind::Pricing;
    p.policy.tau = {1e-8};
    if (id == "robust-pricing") {
      p.mode = robust::PriceMode::Robust;
    } else {
      p.mode = id == "plain-pricing" ? robust::PriceMode::PlainNoisy : robust::PriceMode::PlainExact;
      p.no_gradient_averaging = true;
    }
  }
  if (uses_defaults) {
    if (cfg.tau) p.policy.tau = {*cfg.tau};
    if (cfg.schedule) p.schedule = *cfg.schedule;
  }
  if (spec.tau) p.policy.tau = {*spec.tau};
  if (spec.schedule) p.schedule = *spec.schedule;
  return p;
}

// Mean utility over the evaluation set; per-sample values are computed in
// parallel and summed in index order so the result does not depend on the
// thread count.
template <class Problem, class Sample>
double ergodic(const Problem& problem, const StrategyProfile& x, const std::vector<Sample>& eval,
               int threads) {
  std::vector<double> values(eval.size());
  parallel_for(eval.size(), threads,
               [&](std::size_t k) { values[k] = problem.utility(x, eval[k]); });
  return mean_of(values);
}

template <class Problem, class Sample>
std::vector<Row> run_one(const ExperimentConfig& cfg, const Problem& problem,
                         const std::vector<Sample>& eval, const AlgorithmSpec& spec) {
  const Plan plan = plan_for(cfg, spec);
  std::vector<Row> rows;
  double achievable_sum = 0.0;
  RunOptions opts;
  opts.threads = cfg.threads;
  opts.keep_snapshots = false;
  opts.observer = [&](const IterationRecord& rec, const StrategyProfile& x) {
    if (rec.t == 0) return;
    achievable_sum += rec.objective;
    Row r;
    r.iteration = rec.t;
    r.algorithm = spec.id;
    r.ergodic_sum_rate = ergodic(problem, x, eval, cfg.threads);
    r.achievable_sum_rate = achievable_sum / static_cast<double>(rec.t);
    r.stationarity_gap = rec.gap;
    r.wall_ms = cfg.timing ? rec.wall_ms : 0.0;
    rows.push_back(std::move(r));
  };
  if (plan.gradient_projection) {
    baselines::run_gradient_projection(problem, cfg.seed, cfg.iterations, opts);
    return rows;
  }
  StepSchedule sched =
      make_schedule_power(plan.schedule.alpha, plan.schedule.beta, plan.schedule.scale);
  if (plan.no_gradient_averaging) sched = robust::without_averaging(sched, cfg.iterations);
  run(problem, sched, plan.policy, cfg.seed, cfg.iterations, opts);
  return rows;
}

template <class Process>
auto eval_set(const Process& process, std::uint64_t seed, long count) {
  std::vector<decltype(process.eval_sample(seed, 0))> eval;
  eval.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) eval.push_back(process.eval_sample(seed, k));
  return eval;
}

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::SisoIc: return "siso-ic";
    case ProblemKind::MimoIc: return "mimo-ic";
    case ProblemKind::MimoMac: return "mimo-mac";
    case ProblemKind::RobustMimoIc: return "robust-mimo-ic";
  }
  return "unknown";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  for (ProblemKind k : {ProblemKind::SisoIc, ProblemKind::MimoIc, ProblemKind::MimoMac,
                        ProblemKind::RobustMimoIc})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown problem kind: " + name);
}

std::vector<std::string> algorithms_for(ProblemKind kind) {
  if (kind == ProblemKind::RobustMimoIc)
    return {"robust-pricing", "plain-pricing", "plain-exact-pricing"};
  return {"best-response", "proximal-gradient", "conditional-gradient", "gradient-projection"};
}

double ExperimentConfig::power() const { return std::pow(10.0, snr_db / 10.0); }

void ExperimentConfig::validate() const {
  if (users < 1) throw ConfigError("users must be >= 1");
  if (problem == ProblemKind::SisoIc && subchannels < 1)
    throw ConfigError("subchannels must be >= 1");
  if (problem != ProblemKind::SisoIc && (tx_antennas < 1 || rx_antennas < 1))
    throw ConfigError("antenna counts must be >= 1");
  if (!std::isfinite(snr_db)) throw ConfigError("snr_db must be finite");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be >= 0");
  if (!(price_delta >= 0.0) || !std::isfinite(price_delta))
    throw ConfigError("price_delta must be >= 0");
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (eval_samples < 1) throw ConfigError("eval_samples must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (tau && !(*tau >= 0.0)) throw ConfigError("tau must be >= 0");
  if (algorithms.empty()) throw ConfigError("no algorithm given");
  const auto allowed = algorithms_for(problem);
  std::set<std::string> seen;
  for (const AlgorithmSpec& a : algorithms) {
    if (std::find(allowed.begin(), allowed.end(), a.id) == allowed.end())
      throw ConfigError("algorithm " + a.id + " is not available for " + to_string(problem));
    if (!seen.insert(a.id).second) throw ConfigError("algorithm listed twice: " + a.id);
    if (a.tau && !(*a.tau >= 0.0)) throw ConfigError("tau must be >= 0");
  }
  try {
    for (const AlgorithmSpec& a : algorithms) {
      const Plan p = plan_for(*this, a);
      if (p.gradient_projection) continue;
      make_schedule_power(p.schedule.alpha, p.schedule.beta, p.schedule.scale);
      if (p.policy.kind == SurrogateKind::ConditionalGradient && p.policy.tau_min() == 0.0 &&
          a.id != "conditional-gradient")
        throw ConfigError(a.id + " needs a positive tau");
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  bool have_algorithms = false;
  for (const auto& [key, v] : j.items()) {
    if (key == "problem") {
      if (!v.is_string()) throw ConfigError("problem must be a string");
      c.problem = problem_kind_from_string(v.get<std::string>());
    } else if (key == "users") {
      c.users = number<std::size_t>(v, key);
    } else if (key == "subchannels") {
      c.subchannels = number<std::size_t>(v, key);
    } else if (key == "tx_antennas") {
      c.tx_antennas = number<int>(v, key);
    } else if (key == "rx_antennas") {
      c.rx_antennas = number<int>(v, key);
    } else if (key == "snr_db") {
      c.snr_db = number<double>(v, key);
    } else if (key == "delta") {
      c.delta = number<double>(v, key);
    } else if (key == "price_delta") {
      c.price_delta = number<double>(v, key);
    } else if (key == "algorithm" || key == "algorithms") {
      if (have_algorithms) throw ConfigError("give either algorithm or algorithms");
      have_algorithms = true;
      if (v.is_array()) {
        for (const json& a : v) c.algorithms.push_back(parse_algorithm(a));
      } else {
        c.algorithms.push_back(parse_algorithm(v));
      }
    } else if (key == "schedule") {
      c.schedule = parse_schedule(v);
    } else if (key == "tau") {
      c.tau = number<double>(v, key);
    } else if (key == "seed") {
      c.seed = number<std::uint64_t>(v, key);
    } else if (key == "iterations") {
      c.iterations = number<long>(v, key);
    } else if (key == "eval_samples") {
      c.eval_samples = number<long>(v, key);
    } else if (key == "threads") {
      c.threads = number<int>(v, key);
    } else if (key == "timing") {
      if (!v.is_boolean()) throw ConfigError("timing must be true or false");
      c.timing = v.get<bool>();
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  c.validate();
  return c;
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) throw ParameterError("mean of an empty set");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

std::vector<double> achievable_sum_rate(const std::vector<double>& instantaneous) {
  std::vector<double> out;
  out.reserve(instantaneous.size());
  double s = 0.0;
  for (std::size_t t = 0; t < instantaneous.size(); ++t) {
    s += instantaneous[t];
    out.push_back(s / static_cast<double>(t + 1));
  }
  return out;
}

std::vector<Row> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const double P = cfg.power();
  std::vector<Row> rows;
  auto append = [&](std::vector<Row> part) {
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  };

  switch (cfg.problem) {
    case ProblemKind::SisoIc: {
      siso::ChannelProcess process(cfg.users, cfg.subchannels, cfg.delta, cfg.seed);
      auto eval = eval_set(process, cfg.seed, cfg.eval_samples);
      for (auto& s : eval) {  // rates only need the gains
        s.h.clear();
        s.h.shrink_to_fit();
      }
      const siso::Problem problem(std::move(process), P);
      for (const auto& a : cfg.algorithms) append(run_one(cfg, problem, eval, a));
      break;
    }
    case ProblemKind::MimoIc: {
      mimo::ChannelProcess process(cfg.users, cfg.rx_antennas, cfg.tx_antennas, cfg.delta,
                                   cfg.seed);
      auto eval = eval_set(process, cfg.seed, cfg.eval_samples);
      const mimo::Problem problem(std::move(process), P);
      for (const auto& a : cfg.algorithms) append(run_one(cfg, problem, eval, a));
      break;
    }
    case ProblemKind::MimoMac: {
      mac::ChannelProcess process(cfg.users, cfg.rx_antennas, cfg.tx_antennas, cfg.delta,
                                  cfg.seed);
      auto eval = eval_set(process, cfg.seed, cfg.eval_samples);
      const mac::Problem problem(std::move(process), P);
      for (const auto& a : cfg.algorithms) append(run_one(cfg, problem, eval, a));
      break;
    }
    case ProblemKind::RobustMimoIc: {
      // Fixed channel: the sum-rate is deterministic, so one evaluation
      // sample suffices whatever eval_samples says.
      const mimo::ChannelProcess process(cfg.users, cfg.rx_antennas, cfg.tx_antennas, 0.0,
                                         cfg.seed);
      const std::vector<robust::Problem::Sample> eval{{cfg.seed, 0}};
      for (const auto& a : cfg.algorithms) {
        const Plan plan = plan_for(cfg, a);
        const robust::Problem problem(process.base(), P, cfg.price_delta, plan.mode);
        append(run_one(cfg, problem, eval, a));
      }
      break;
    }
  }
  return rows;
}

std::string csv_header() {
  return "iteration,algorithm,ergodic_sum_rate,achievable_sum_rate,stationarity_gap,wall_ms";
}

std::string csv_row(const Row& r, bool timing) {
  char buf[256];
  std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%.10g,", r.ergodic_sum_rate,
                r.achievable_sum_rate, r.stationarity_gap);
  std::string line = std::to_string(r.iteration) + "," + r.algorithm + buf;
  if (timing) {
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    line += buf;
  } else {
    line += "0";
  }
  return line;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows, bool timing) {
  out << csv_header() << '\n';
  for (const Row& r : rows) out << csv_row(r, timing) << '\n';
}

}  // namespace sca::bench
