#pragma once

#include <cstdint>
#include <random>

namespace geomdet {

inline constexpr std::uint64_t default_seed = 0x5EED;

// A seeded random stream. Parallel work derives one stream per fixed-size
// work block as root ^ block, so draws never depend on the thread count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
  }

  static RngStream for_block(std::uint64_t root, std::uint64_t block) {
    return RngStream(root ^ block);
  }

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }

  double standard_normal() { return normal_(engine_); }

  // Zero-mean Laplace with density exp(-|x|/scale) / (2 scale).
  double laplace(double scale) {
    const double magnitude = scale * exponential_(engine_);
    return (engine_() & 1u) ? magnitude : -magnitude;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace geomdet
