#pragma once

#include <random>
#include <string>
#include <vector>

#include "geomdet/channel.hpp"

namespace fixtures {

using namespace geomdet;

inline Alphabet three_symbols() { return Alphabet({"x1", "x2", "x3"}); }

// The six-observation table of Pr{X | Y}, one row per symbol.
inline const std::vector<double>& table_posteriors() {
  static const std::vector<double> t = {
      0.34, 0.33, 0.33, 0.335, 0.335, 0.33,   //
      0.33, 0.34, 0.33, 0.335, 0.33,  0.335,  //
      0.33, 0.33, 0.34, 0.33,  0.335, 0.335,
  };
  return t;
}

// Forward channel rebuilt under a uniform observation marginal of 1/6.
inline DiscreteChannel table_channel() {
  const std::vector<double> marginal(6, 1.0 / 6.0);
  return discrete_from_posterior_table(three_symbols(), {"a", "b", "c", "d", "e", "f"},
                                       table_posteriors(), marginal);
}

inline DiscreteChannel uniform_table_channel() {
  return DiscreteChannel{three_symbols(), {"u", "v"}, std::vector<double>(6, 0.5)};
}

inline AwgnChannel awgn(double sigma2) {
  return AwgnChannel{Alphabet({"0", "1", "-1"}), {0.0, 1.0, -1.0}, sigma2};
}

inline LaplaceChannel laplace(double lambda) {
  return LaplaceChannel{Alphabet({"0", "1", "-1"}), {0.0, 1.0, -1.0}, lambda};
}

// Strictly positive random N x K channel.
inline DiscreteChannel random_discrete(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::string> labels, obs;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  for (std::size_t c = 0; c < k; ++c) obs.push_back("o" + std::to_string(c));
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> t(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t c = 0; c < k; ++c) row += (t[i * k + c] = u(rng));
    for (std::size_t c = 0; c < k; ++c) t[i * k + c] /= row;
  }
  return DiscreteChannel{Alphabet(labels), obs, t};
}

}  // namespace fixtures
