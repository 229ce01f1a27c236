#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geomdet/channel.hpp"

namespace geomdet {

// A point of the hyperplane P = { p in R^N : sum_i p_i = 0 }, stored in
// ambient coordinates. Construction checks membership.
class EmbeddedPoint {
 public:
  explicit EmbeddedPoint(std::vector<double> coords);

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const EmbeddedPoint&, const EmbeddedPoint&) = default;

 private:
  std::vector<double> coords_;
};

// Largest |sum of coords| seen by any EmbeddedPoint constructed so far in
// this process (absolute, not scaled).
double hyperplane_residual_watermark();
void reset_hyperplane_residual_watermark();

// The reconstruction function f(d) = exp(-d^2).
double reconstruction_weight(double distance);

// Vertex i of the regular simplex: (1/2N) e_i - (1/2N^2) sum_j e_j.
EmbeddedPoint embed_symbol(std::size_t n, std::size_t i);
EmbeddedPoint embed_symbol(const Alphabet& alphabet, std::size_t i);
std::vector<EmbeddedPoint> simplex_vertices(std::size_t n);

// Closed forms for the simplex: every vertex norm and every edge length.
double simplex_vertex_norm(std::size_t n);
double simplex_edge_length(std::size_t n);

// coords_i = N log p_i - sum_j log p_j, evaluated as N (log p_i - mean log p).
// Throws ErasureError if any p_i is zero.
EmbeddedPoint embed_observation(const Posterior& posterior);

// Same map from log-likelihoods (equal priors) or any unnormalized
// log-posterior: additive constants cancel. Throws std::invalid_argument on a
// NaN or +inf entry and ErasureError on -inf.
EmbeddedPoint embed_observation_from_likelihoods(std::span<const double> loglik);

// Writes the embedding of an unnormalized log-posterior into out without
// allocating; same errors as above.
void embed_log_posterior_into(std::span<const double> log_posterior,
                              std::span<double> out);

// Embedding of a channel observation under a prior, computed from
// log prior + log-likelihood so that tiny posteriors never underflow.
EmbeddedPoint embed_channel_observation(const Channel& channel, const Prior& prior,
                                        const Observation& observation);

double distance(const EmbeddedPoint& a, const EmbeddedPoint& b);
double squared_distance(std::span<const double> a, std::span<const double> b);

// ||y - x_k||^2 - ||y||^2 for every candidate x_k. The dropped ||y||^2 is
// common to all candidates, so softmax and argmin over these offsets match
// softmax and argmin over the squared distances.
void distance_offsets_into(std::span<const double> y,
                           std::span<const EmbeddedPoint> candidates,
                           std::span<double> out);

// Softmax over k of -||y - x_k||^2 for arbitrary candidate points.
Posterior posterior_from_distances(const EmbeddedPoint& y,
                                   std::span<const EmbeddedPoint> candidates);

// Softmax over the simplex vertices; inverts embed_observation exactly.
Posterior reconstruct_posterior(const EmbeddedPoint& y);

}  // namespace geomdet
