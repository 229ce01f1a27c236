#include "geomdet/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "geomdet/error.hpp"
#include "geomdet/tolerances.hpp"

namespace geomdet {

namespace {

std::atomic<double> residual_watermark{0.0};

void record_residual(double residual) {
  double seen = residual_watermark.load(std::memory_order_relaxed);
  while (residual > seen &&
         !residual_watermark.compare_exchange_weak(seen, residual,
                                                   std::memory_order_relaxed)) {
  }
}

void check_dimension(std::size_t a, std::size_t b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

void softmax_negated(std::span<double> values) {
  const double low = *std::min_element(values.begin(), values.end());
  double total = 0.0;
  for (double& v : values) {
    v = std::exp(low - v);
    total += v;
  }
  for (double& v : values) v /= total;
}

}  // namespace

EmbeddedPoint::EmbeddedPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("empty point");
  double sum = 0.0;
  double scale = 1.0;
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
    sum += c;
    scale = std::max(scale, std::abs(c));
  }
  record_residual(std::abs(sum));
  if (std::abs(sum) > tol::hyperplane * scale)
    throw HyperplaneError("point is not on the zero-sum hyperplane (sum " +
                          std::to_string(sum) + ")");
}

double hyperplane_residual_watermark() {
  return residual_watermark.load(std::memory_order_relaxed);
}

void reset_hyperplane_residual_watermark() { residual_watermark.store(0.0); }

double reconstruction_weight(double distance) {
  return std::exp(-distance * distance);
}

EmbeddedPoint embed_symbol(std::size_t n, std::size_t i) {
  if (n < 2) throw std::invalid_argument("alphabet needs at least two symbols");
  if (i >= n) throw std::out_of_range("symbol index out of range");
  const double nd = static_cast<double>(n);
  std::vector<double> coords(n, -1.0 / (2.0 * nd * nd));
  coords[i] = (nd - 1.0) / (2.0 * nd * nd);
  return EmbeddedPoint(std::move(coords));
}

EmbeddedPoint embed_symbol(const Alphabet& alphabet, std::size_t i) {
  return embed_symbol(alphabet.size(), i);
}

std::vector<EmbeddedPoint> simplex_vertices(std::size_t n) {
  std::vector<EmbeddedPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(embed_symbol(n, i));
  return out;
}

double simplex_vertex_norm(std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::sqrt((nd - 1.0) / nd) / (2.0 * nd);
}

double simplex_edge_length(std::size_t n) {
  return std::sqrt(2.0) / (2.0 * static_cast<double>(n));
}

void embed_log_posterior_into(std::span<const double> log_posterior,
                              std::span<double> out) {
  check_dimension(log_posterior.size(), out.size());
  const std::size_t n = log_posterior.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = log_posterior[i];
    if (std::isnan(v) || v == INFINITY)
      throw std::invalid_argument("log-likelihood entry is not finite");
    if (v == -INFINITY)
      throw ErasureError("symbol " + std::to_string(i + 1) +
                         " has zero posterior probability; observations that "
                         "rule a symbol out have no embedding");
    mean += v;
  }
  mean /= static_cast<double>(n);
  const double nd = static_cast<double>(n);
  double centre = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = nd * (log_posterior[i] - mean);
    centre += out[i];
  }
  // Re-centre to remove rounding drift off the hyperplane.
  centre /= nd;
  for (double& v : out) v -= centre;
}

EmbeddedPoint embed_observation_from_likelihoods(std::span<const double> loglik) {
  std::vector<double> coords(loglik.size());
  embed_log_posterior_into(loglik, coords);
  return EmbeddedPoint(std::move(coords));
}

EmbeddedPoint embed_observation(const Posterior& posterior) {
  std::vector<double> logs(posterior.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (!(posterior[i] > 0.0))
      throw ErasureError("posterior of symbol " + std::to_string(i + 1) +
                         " is zero; observations that rule a symbol out have "
                         "no embedding");
    logs[i] = std::log(posterior[i]);
  }
  return embed_observation_from_likelihoods(logs);
}

EmbeddedPoint embed_channel_observation(const Channel& channel, const Prior& prior,
                                        const Observation& observation) {
  std::vector<double> logs = log_likelihoods(channel, observation);
  check_dimension(prior.size(), logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] += std::log(prior[i]);
  return embed_observation_from_likelihoods(logs);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  check_dimension(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(const EmbeddedPoint& a, const EmbeddedPoint& b) {
  return std::sqrt(squared_distance(a.coords(), b.coords()));
}

void distance_offsets_into(std::span<const double> y,
                           std::span<const EmbeddedPoint> candidates,
                           std::span<double> out) {
  check_dimension(candidates.size(), out.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto x = candidates[k].coords();
    check_dimension(y.size(), x.size());
    double dot = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dot += y[i] * x[i];
      norm2 += x[i] * x[i];
    }
    out[k] = norm2 - 2.0 * dot;
  }
}

Posterior posterior_from_distances(const EmbeddedPoint& y,
                                   std::span<const EmbeddedPoint> candidates) {
  std::vector<double> offsets(candidates.size());
  distance_offsets_into(y.coords(), candidates, offsets);
  softmax_negated(offsets);
  return Posterior(std::move(offsets));
}

Posterior reconstruct_posterior(const EmbeddedPoint& y) {
  return posterior_from_distances(y, simplex_vertices(y.dimension()));
}

}  // namespace geomdet
