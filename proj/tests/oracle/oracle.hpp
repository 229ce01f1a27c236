#pragma once

// Test-only reference computations. Nothing here calls into the library's
// likelihood, embedding or softmax code: posteriors come straight from the
// channel parameters in long double, embeddings from the literal log-quotient
// formula.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <variant>
#include <vector>

#include "geomdet/channel.hpp"

namespace oracle {

using geomdet::AwgnChannel;
using geomdet::Channel;
using geomdet::DiscreteChannel;
using geomdet::LaplaceChannel;
using geomdet::Observation;

// Unnormalized log of prior_i * Pr{y | x_i}, in long double.
inline std::vector<long double> log_joint(const Channel& channel,
                                          const std::vector<double>& prior,
                                          const Observation& y) {
  std::vector<long double> out;
  if (const auto* d = std::get_if<DiscreteChannel>(&channel)) {
    const std::size_t k = std::get<std::size_t>(y);
    const std::size_t cols = d->observations.size();
    for (std::size_t i = 0; i < prior.size(); ++i)
      out.push_back(std::log(static_cast<long double>(prior[i])) +
                    std::log(static_cast<long double>(d->transition[i * cols + k])));
  } else if (const auto* a = std::get_if<AwgnChannel>(&channel)) {
    const long double v = std::get<double>(y);
    for (std::size_t i = 0; i < prior.size(); ++i) {
      const long double diff = v - a->values[i];
      out.push_back(std::log(static_cast<long double>(prior[i])) -
                    diff * diff / (2.0L * a->noise_variance));
    }
  } else {
    const auto& l = std::get<LaplaceChannel>(channel);
    const long double v = std::get<double>(y);
    for (std::size_t i = 0; i < prior.size(); ++i)
      out.push_back(std::log(static_cast<long double>(prior[i])) -
                    std::fabs(v - static_cast<long double>(l.values[i])) / l.scale);
  }
  return out;
}

inline std::vector<double> normalize_logs(const std::vector<long double>& logs) {
  const long double top = *std::max_element(logs.begin(), logs.end());
  long double total = 0;
  std::vector<long double> w;
  for (long double v : logs) {
    w.push_back(std::exp(v - top));
    total += w.back();
  }
  std::vector<double> out;
  for (long double v : w) out.push_back(static_cast<double>(v / total));
  return out;
}

// Direct Bayes posterior.
inline std::vector<double> bayes_posterior(const Channel& channel,
                                           const std::vector<double>& prior,
                                           const Observation& y) {
  return normalize_logs(log_joint(channel, prior, y));
}

// Posterior of a repeated symbol: uniform prior, product of per-use
// likelihoods.
inline std::vector<double> repetition_bayes(const Channel& channel, std::size_t n,
                                            const std::vector<Observation>& seq) {
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  std::vector<long double> total(n, 0.0L);
  for (const auto& y : seq) {
    const auto l = log_joint(channel, uniform, y);
    for (std::size_t i = 0; i < n; ++i) total[i] += l[i];
  }
  return normalize_logs(total);
}

// The literal log-quotient map log(p_i^N / prod_j p_j).
inline std::vector<double> log_quotient_embedding(const std::vector<double>& p) {
  const std::size_t n = p.size();
  long double log_product = 0;
  for (double v : p) log_product += std::log(static_cast<long double>(v));
  std::vector<double> out;
  for (double v : p)
    out.push_back(static_cast<double>(static_cast<long double>(n) *
                                          std::log(static_cast<long double>(v)) -
                                      log_product));
  return out;
}

inline std::vector<double> dirichlet(std::size_t n, std::mt19937_64& rng,
                                     double alpha = 1.0) {
  std::gamma_distribution<double> g(alpha, 1.0);
  std::vector<double> p(n);
  double total = 0;
  for (double& v : p) {
    do v = g(rng);
    while (v <= 0.0);
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace oracle
