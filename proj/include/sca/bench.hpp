#pragma once

// Experiment harness: configuration, ergodic and achievable sum-rate metrics
// and CSV output.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sca/driver.hpp"

namespace sca::bench {

enum class ProblemKind { SisoIc, MimoIc, MimoMac, RobustMimoIc };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

struct ScheduleParams {
  double alpha = 0.61;
  double beta = 0.6;
  double scale = 2.0;
};

struct AlgorithmSpec {
  std::string id;
  std::optional<double> tau;
  std::optional<ScheduleParams> schedule;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::SisoIc;
  std::size_t users = 5;
  std::size_t subchannels = 16;
  int tx_antennas = 2;
  int rx_antennas = 2;
  double snr_db = 10.0;
  double delta = 0.2;        // channel perturbation level
  double price_delta = 0.05;  // price estimation noise (robust-mimo-ic)
  std::vector<AlgorithmSpec> algorithms;
  std::optional<ScheduleParams> schedule;  // default for averaging algorithms
  std::optional<double> tau;
  std::uint64_t seed = 1;
  long iterations = 100;
  long eval_samples = 1000;
  int threads = 1;
  bool timing = true;  // false writes wall_ms as 0 for byte-identical output

  /// Linear transmit power for unit noise variance.
  double power() const;
  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

/// Parses the JSON experiment description. Throws ConfigError.
ExperimentConfig config_from_json(const std::string& text);

/// Algorithm ids accepted for a problem kind.
std::vector<std::string> algorithms_for(ProblemKind kind);

struct Row {
  long iteration = 0;
  std::string algorithm;
  double ergodic_sum_rate = 0.0;
  double achievable_sum_rate = 0.0;
  double stationarity_gap = 0.0;
  double wall_ms = 0.0;
};

/// Mean of the instantaneous utilities over an evaluation set.
double mean_of(const std::vector<double>& values);

/// (1/t)·Σ_{m≤t} inst[m−1] for each t.
std::vector<double> achievable_sum_rate(const std::vector<double>& instantaneous);

/// Runs every configured algorithm; rows are ordered by algorithm then
/// iteration (1..T).
std::vector<Row> run_experiment(const ExperimentConfig& cfg);

std::string csv_header();
std::string csv_row(const Row& row, bool timing);
void write_csv(std::ostream& out, const std::vector<Row>& rows, bool timing);

}  // namespace sca::bench
