#include "geomdet/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "geomdet/error.hpp"
#include "geomdet/tolerances.hpp"

namespace geomdet {

StackedPoint::StackedPoint(std::size_t block_size, std::vector<double> coords)
    : block_size_(block_size), coords_(std::move(coords)) {
  if (block_size_ == 0 || coords_.empty() || coords_.size() % block_size_ != 0)
    throw std::invalid_argument("stacked point size is not a multiple of N");
  for (std::size_t m = 0; m < blocks(); ++m) {
    auto b = block(m);
    // Each block must be a hyperplane point.
    EmbeddedPoint(std::vector<double>(b.begin(), b.end()));
  }
}

double squared_distance(const StackedPoint& a, const StackedPoint& b) {
  return squared_distance(a.coords(), b.coords());
}

StackedPoint embed_codeword(const Alphabet& alphabet, const Codeword& codeword) {
  if (codeword.empty()) throw std::invalid_argument("empty codeword");
  const std::size_t n = alphabet.size();
  std::vector<double> coords;
  coords.reserve(n * codeword.size());
  for (std::size_t c : codeword) {
    const EmbeddedPoint x = embed_symbol(n, c);
    coords.insert(coords.end(), x.coords().begin(), x.coords().end());
  }
  return StackedPoint(n, std::move(coords));
}

StackedPoint embed_sequence(const Channel& channel, const Prior& prior,
                            const SequenceObservation& seq) {
  if (seq.empty()) throw std::invalid_argument("empty observation sequence");
  const std::size_t n = symbol_count(channel);
  std::vector<double> coords;
  coords.reserve(n * seq.size());
  for (std::size_t m = 0; m < seq.size(); ++m) {
    try {
      const EmbeddedPoint y = embed_channel_observation(channel, prior, seq[m]);
      coords.insert(coords.end(), y.coords().begin(), y.coords().end());
    } catch (const ErasureError& e) {
      throw ErasureError("position " + std::to_string(m + 1) + ": " + e.what(), m);
    }
  }
  return StackedPoint(n, std::move(coords));
}

std::uint64_t codebook_size(std::size_t n, std::size_t m, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (size > cap / n)
      throw EnumerationCapError("codebook of " + std::to_string(n) + "^" +
                                std::to_string(m) + " codewords exceeds the cap of " +
                                std::to_string(cap));
    size *= n;
  }
  return size;
}

double sequence_posterior(const Channel& channel, const Prior& prior,
                          const SequenceObservation& seq, const Codeword& codeword,
                          Execution exec, std::uint64_t cap) {
  if (codeword.size() != seq.size())
    throw std::invalid_argument("codeword and observation lengths differ");
  const std::size_t n = symbol_count(channel);
  const std::size_t m = seq.size();
  codebook_size(n, m, cap);
  for (std::size_t c : codeword)
    if (c >= n) throw std::out_of_range("codeword symbol index out of range");

  const StackedPoint y = embed_sequence(channel, prior, seq);
  const auto vertices = simplex_vertices(n);
  // Per-position offsets ||y_m - x_k||^2 - ||y_m||^2; the dropped terms are
  // common to every codeword.
  std::vector<double> table(m * n);
  for (std::size_t pos = 0; pos < m; ++pos)
    distance_offsets_into(y.block(pos), vertices,
                          std::span<double>(table).subspan(pos * n, n));

  double floor = 0.0;
  double target = 0.0;
  for (std::size_t pos = 0; pos < m; ++pos) {
    auto row = std::span<const double>(table).subspan(pos * n, n);
    floor += *std::min_element(row.begin(), row.end());
    target += row[codeword[pos]];
  }
  const double log_partition = kernels::codebook_log_partition(table, n, m, exec);
  return std::exp(-(target - floor) - log_partition);
}

EmbeddedPoint aggregate_repetition(const Channel& channel, const Prior& prior,
                                   const SequenceObservation& seq) {
  if (seq.empty()) throw std::invalid_argument("empty observation sequence");
  if (!prior.is_uniform())
    throw std::invalid_argument(
        "repetition aggregation requires equally likely symbols");
  const std::size_t n = symbol_count(channel);
  std::vector<double> sum(n, 0.0);
  std::vector<double> loglik(n);
  std::vector<double> point(n);
  for (std::size_t m = 0; m < seq.size(); ++m) {
    try {
      log_likelihoods_into(channel, seq[m], loglik);
      embed_log_posterior_into(loglik, point);
    } catch (const ErasureError& e) {
      throw ErasureError("position " + std::to_string(m + 1) + ": " + e.what(), m);
    }
    for (std::size_t i = 0; i < n; ++i) sum[i] += point[i];
  }
  return EmbeddedPoint(std::move(sum));
}

Posterior repetition_posterior(const Channel& channel,
                               const SequenceObservation& seq,
                               std::span<const EmbeddedPoint> symbol_points) {
  const std::size_t n = symbol_count(channel);
  if (symbol_points.size() != n)
    throw std::invalid_argument("need one point per symbol");
  const EmbeddedPoint total = aggregate_repetition(channel, Prior::uniform(n), seq);
  return posterior_from_distances(total, symbol_points);
}

Posterior repetition_posterior(const Channel& channel,
                               const SequenceObservation& seq) {
  const auto vertices = simplex_vertices(symbol_count(channel));
  return repetition_posterior(channel, seq, vertices);
}

}  // namespace geomdet
