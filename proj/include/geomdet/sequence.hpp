#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geomdet/channel.hpp"
#include "geomdet/embedding.hpp"
#include "geomdet/parallel.hpp"

namespace geomdet {

// Alphabet indices of M transmitted symbols.
using Codeword = std::vector<std::size_t>;

// Observations of M channel uses.
using SequenceObservation = std::vector<Observation>;

inline constexpr std::uint64_t default_enumeration_cap = 1'000'000;

// A point of R^(N M): M consecutive blocks of N coordinates, each block on
// the zero-sum hyperplane.
class StackedPoint {
 public:
  StackedPoint(std::size_t block_size, std::vector<double> coords);

  std::size_t block_size() const { return block_size_; }
  std::size_t blocks() const { return coords_.size() / block_size_; }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> block(std::size_t m) const {
    return std::span<const double>(coords_).subspan(m * block_size_, block_size_);
  }

 private:
  std::size_t block_size_;
  std::vector<double> coords_;
};

double squared_distance(const StackedPoint& a, const StackedPoint& b);

StackedPoint embed_codeword(const Alphabet& alphabet, const Codeword& codeword);

// Concatenated per-use embeddings. ErasureError carries the offending
// position.
StackedPoint embed_sequence(const Channel& channel, const Prior& prior,
                            const SequenceObservation& seq);

// N^M, or EnumerationCapError if it exceeds cap.
std::uint64_t codebook_size(std::size_t n, std::size_t m,
                            std::uint64_t cap = default_enumeration_cap);

// Posterior of one codeword: softmax over all N^M codewords of the negated
// stacked squared distance. The normalization runs as a block-parallel
// log-sum-exp.
double sequence_posterior(const Channel& channel, const Prior& prior,
                          const SequenceObservation& seq, const Codeword& codeword,
                          Execution exec = Execution::parallel,
                          std::uint64_t cap = default_enumeration_cap);

// Sum of the M per-use embeddings. Requires a uniform prior; throws
// std::invalid_argument otherwise.
EmbeddedPoint aggregate_repetition(const Channel& channel, const Prior& prior,
                                   const SequenceObservation& seq);

// Posterior of the repeated symbol from the distance between the aggregate
// point and each simplex vertex (uniform prior).
Posterior repetition_posterior(const Channel& channel,
                               const SequenceObservation& seq);

// Same with caller-supplied symbol points; used to show that the result
// depends on the vertices having equal norms.
Posterior repetition_posterior(const Channel& channel,
                               const SequenceObservation& seq,
                               std::span<const EmbeddedPoint> symbol_points);

namespace kernels {

// log sum_c exp(-(offset(c) - floor)) over all codewords c, where
// offset(c) = sum_m table[m][c_m] and floor = sum_m min_k table[m][k].
// table is M x N row-major. Returns the log of the sum (without floor).
double codebook_log_partition(std::span<const double> table, std::size_t n,
                              std::size_t m, Execution exec);

}  // namespace kernels

}  // namespace geomdet
