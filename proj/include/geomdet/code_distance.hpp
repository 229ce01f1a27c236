#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geomdet/channel.hpp"
#include "geomdet/parallel.hpp"
#include "geomdet/rng.hpp"
#include "geomdet/sequence.hpp"

namespace geomdet {

// d_s(x_i, x_j) = E[ ||M_R(Y) - x_j||^2 | X = x_i ]: expected squared
// distance from the embedded observation of a sent symbol i to vertex j.
// The prior only shapes the embedding; Y is drawn from the channel row i.

struct ExactEstimator {};
struct MonteCarloEstimator {
  std::size_t samples = 100'000;
  std::uint64_t seed = default_seed;
};
struct QuadratureEstimator {
  std::size_t points = 256;
};
using Estimator = std::variant<ExactEstimator, MonteCarloEstimator, QuadratureEstimator>;

inline constexpr std::size_t min_mc_samples = 1000;
inline constexpr std::size_t min_quadrature_points = 64;

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t rejected = 0;  // erased draws, excluded from the mean
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |Q(points) - Q(points / 2)|
  std::size_t points = 0;
};

// Half-width of the truncated integration domain around the sent symbol.
struct QuadratureDomain {
  double gaussian_sigmas = 8.0;
  double laplace_scales = 25.0;
};

double symbol_distance_exact(const DiscreteChannel& channel, const Prior& prior,
                             std::size_t i, std::size_t j);

McEstimate symbol_distance_mc(const Channel& channel, const Prior& prior,
                              std::size_t i, std::size_t j, std::size_t samples,
                              std::uint64_t seed, Execution exec = Execution::parallel);

// Composite Gauss-Legendre over the truncated domain, split at every symbol
// value for the Laplace channel (the integrand has kinks there). Throws
// EstimatorError if the truncated mass exceeds tol::truncation_mass.
QuadratureResult symbol_distance_quadrature(const Channel& channel, const Prior& prior,
                                            std::size_t i, std::size_t j,
                                            std::size_t points,
                                            QuadratureDomain domain = {});

struct EstimatorInfo {
  std::string method;  // "exact", "monte_carlo" or "quadrature"
  std::size_t samples_or_points = 0;
  std::optional<std::uint64_t> seed;
};

EstimatorInfo describe(const Estimator& estimator);

struct SymbolDistanceTable {
  std::size_t n = 0;
  std::vector<double> values;           // n x n row-major, row = sent symbol
  std::vector<double> standard_errors;  // zero for deterministic estimators
  EstimatorInfo info;

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double error_at(std::size_t i, std::size_t j) const {
    return standard_errors[i * n + j];
  }
};

SymbolDistanceTable symbol_distance_table(const Channel& channel, const Prior& prior,
                                          const Estimator& estimator,
                                          Execution exec = Execution::parallel);

// Pairs (i, j) with d_s(i, i) > d_s(i, j). Reported, never thrown.
std::vector<std::pair<std::size_t, std::size_t>> self_distance_violations(
    const SymbolDistanceTable& table);

struct CodewordDistance {
  Codeword sent;
  Codeword candidate;
  double value = 0.0;
  double standard_error = 0.0;
  std::vector<double> decomposition;  // d_s per position
};

// d_v(c1, c2) as the sum of per-position d_s. Monte Carlo positions use
// independent streams seeded seed ^ ((position + 1) << 32).
CodewordDistance codeword_distance(const Channel& channel, const Prior& prior,
                                   const Codeword& c1, const Codeword& c2,
                                   const Estimator& estimator,
                                   Execution exec = Execution::parallel);

// Direct Monte Carlo of E[ ||M(Y) - M(c2)||^2 | X = c1 ] in R^(N M), drawing
// whole sequences. Independent of the per-position decomposition.
McEstimate codeword_distance_joint_mc(const Channel& channel, const Prior& prior,
                                      const Codeword& c1, const Codeword& c2,
                                      std::size_t samples, std::uint64_t seed,
                                      Execution exec = Execution::parallel);

struct CodebookTable {
  std::vector<Codeword> codebook;
  std::vector<double> values;  // K x K row-major, row = sent codeword
  std::vector<double> standard_errors;
  std::pair<std::size_t, std::size_t> min_pair;
  double min_value = 0.0;
  EstimatorInfo info;

  std::size_t size() const { return codebook.size(); }
  double at(std::size_t a, std::size_t b) const { return values[a * codebook.size() + b]; }
};

// Pairwise d_v over a codebook from one symbol table, plus the smallest
// off-diagonal entry (first in row-major order on ties).
CodebookTable codebook_table(const Channel& channel, const Prior& prior,
                             const std::vector<Codeword>& codebook,
                             const Estimator& estimator,
                             Execution exec = Execution::parallel);

namespace kernels {

// Block-parallel sample mean and standard error. make_draw() is called once
// per block and returns a sampler owning its scratch space; the sampler
// returns nullopt for a rejected draw. Blocks use RngStream::for_block(seed, b)
// and their moments are merged in block order.
using Draw = std::function<std::optional<double>(RngStream&)>;

McEstimate monte_carlo_mean(std::size_t samples, std::uint64_t seed, Execution exec,
                            const std::function<Draw()>& make_draw);

}  // namespace kernels

}  // namespace geomdet
