#include "sca/rng.hpp"

namespace sca {

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream, std::uint64_t counter,
                            std::uint64_t sub) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  const auto s = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{lo(seed), hi(seed), lo(s), lo(counter), hi(counter), lo(sub), hi(sub)};
  return std::mt19937_64(seq);
}

linalg::CMatrix Gaussian::matrix(Eigen::Index rows, Eigen::Index cols) {
  linalg::CMatrix m(rows, cols);
  // Column-major fill keeps the draw order fixed.
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = complex();
  return m;
}

}  // namespace sca
