#pragma once

#include <cstdint>
#include <random>

#include "sca/linalg.hpp"

namespace sca {

/// Independent random streams. Each draw site seeds a fresh engine from
/// (seed, stream, counter, sub), so results do not depend on evaluation order
/// or thread scheduling.
enum class Stream : std::uint64_t {
  BaseChannel = 0,
  Perturbation = 1,
  Evaluation = 2,
  PriceNoise = 3,
  Auxiliary = 4,
};

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream, std::uint64_t counter,
                            std::uint64_t sub = 0);

/// Standard normal draws; complex entries take an independent standard normal
/// for the real and for the imaginary part.
class Gaussian {
 public:
  Gaussian(std::uint64_t seed, Stream stream, std::uint64_t counter, std::uint64_t sub = 0)
      : engine_(make_engine(seed, stream, counter, sub)) {}

  double real() { return normal_(engine_); }
  linalg::Complex complex() {
    const double re = normal_(engine_);
    return {re, normal_(engine_)};
  }
  linalg::CMatrix matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace sca
