#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "geomdet/rng.hpp"

namespace geomdet {

// Ordered set of N >= 2 distinct input-symbol labels. Index i (0-based here,
// printed as x{i+1}) is the canonical enumeration used by every embedding.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
};

// Strictly positive probability vector summing to 1.
class Prior {
 public:
  explicit Prior(std::vector<double> probabilities);
  static Prior uniform(std::size_t n);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }
  bool is_uniform() const;

 private:
  std::vector<double> p_;
};

// Probability vector over the alphabet. Components may be zero when it is a
// computed result; see posterior() for when zeros are an error.
class Posterior {
 public:
  Posterior() = default;
  explicit Posterior(std::vector<double> probabilities)
      : p_(std::move(probabilities)) {}

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }
  std::size_t argmax() const;

 private:
  std::vector<double> p_;
};

struct DiscreteChannel {
  Alphabet alphabet;
  std::vector<std::string> observations;
  std::vector<double> transition;  // N x K row-major, Pr{Y = y_k | X = x_i}

  std::size_t observation_count() const { return observations.size(); }
  double probability(std::size_t i, std::size_t k) const {
    return transition[i * observations.size() + k];
  }
  std::optional<std::size_t> find_observation(const std::string& label) const;
};

// Y = X + Gaussian noise of the given variance.
struct AwgnChannel {
  Alphabet alphabet;
  std::vector<double> values;
  double noise_variance;
};

// Y = X + Laplace noise with density exp(-|n|/scale) / (2 scale).
struct LaplaceChannel {
  Alphabet alphabet;
  std::vector<double> values;
  double scale;
};

using Channel = std::variant<DiscreteChannel, AwgnChannel, LaplaceChannel>;

// An observation is a label index for discrete channels and a real number for
// the additive channels.
using Observation = std::variant<std::size_t, double>;

const Alphabet& alphabet_of(const Channel& channel);
std::size_t symbol_count(const Channel& channel);
// "discrete", "awgn" or "laplace".
std::string family_name(const Channel& channel);
// sigma^2 for AWGN, lambda for Laplace, nullopt for discrete.
std::optional<double> noise_parameter(const Channel& channel);

// Builds the forward channel from a table of Pr{X = x_i | Y = y_k} and the
// observation marginal Pr{Y = y_k}, via Pr{y|x} = Pr{x|y} Pr{y} / Pr{x}.
DiscreteChannel discrete_from_posterior_table(
    Alphabet alphabet, std::vector<std::string> observations,
    std::span<const double> posterior_table,  // N x K row-major
    std::span<const double> observation_marginal);

// log Pr{Y = y | X = x_i} for every i (log-densities for additive channels).
// Throws UnknownObservationError for an out-of-range discrete observation.
std::vector<double> log_likelihoods(const Channel& channel,
                                    const Observation& observation);

// Writes the same values into out (size N) without allocating.
void log_likelihoods_into(const Channel& channel, const Observation& observation,
                          std::span<double> out);

// Bayes posterior, evaluated in the log domain with max subtraction. Throws
// ErasureError if any component is exactly zero.
Posterior posterior(const Channel& channel, const Prior& prior,
                    const Observation& observation);

// Draws Y ~ Pr{Y | X = x_symbol}.
Observation sample(const Channel& channel, std::size_t symbol, RngStream& rng);

struct Violation {
  std::string message;
};

// Checks every channel invariant; never throws.
std::vector<Violation> validate(const Channel& channel);

// Parses a textual observation: a label for discrete channels, a decimal for
// additive ones.
Observation parse_observation(const Channel& channel, const std::string& text);
std::string format_observation(const Channel& channel,
                               const Observation& observation);

}  // namespace geomdet
