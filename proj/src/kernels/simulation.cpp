#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "geomdet/detection.hpp"
#include "geomdet/error.hpp"
#include "geomdet/rng.hpp"
#include "geomdet/tolerances.hpp"

namespace geomdet {

namespace {

struct BlockCounts {
  std::vector<SymbolErrorCounts> per_symbol;
  std::uint64_t agreement = 0;
};

std::size_t draw_symbol(std::span<const double> cumulative, RngStream& rng) {
  const double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i)
    if (u < cumulative[i]) return i;
  return cumulative.size() - 1;
}

}  // namespace

SimulationReport simulate_error_rate(const Channel& channel, const Prior& prior,
                                     std::size_t repetitions, std::uint64_t trials,
                                     std::uint64_t seed, Execution exec) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  if (repetitions == 0) throw std::invalid_argument("need at least one channel use");
  const std::size_t n = symbol_count(channel);
  if (prior.size() != n) throw std::invalid_argument("prior size does not match");
  if (repetitions > 1 && !prior.is_uniform())
    throw std::invalid_argument(
        "repetition decoding requires equally likely symbols");

  std::vector<double> cumulative(n);
  std::vector<double> log_prior(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += prior[i];
    cumulative[i] = acc;
    log_prior[i] = std::log(prior[i]);
  }
  const auto vertices = simplex_vertices(n);

  const std::size_t blocks = block_count(trials, default_block_size);
  std::vector<BlockCounts> results(blocks);

  for_each_block(exec, blocks, [&](std::size_t b) {
    RngStream rng = RngStream::for_block(seed, b);
    BlockCounts& out = results[b];
    out.per_symbol.assign(n, {});
    std::vector<double> loglik(n), point(n), aggregate(n), bayes(n), offsets(n);
    const std::uint64_t begin = b * default_block_size;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + default_block_size);

    for (std::uint64_t t = begin; t < end; ++t) {
      const std::size_t sent = draw_symbol(cumulative, rng);
      SymbolErrorCounts& counts = out.per_symbol[sent];
      ++counts.sent;

      std::fill(aggregate.begin(), aggregate.end(), 0.0);
      std::copy(log_prior.begin(), log_prior.end(), bayes.begin());
      bool erased = false;
      for (std::size_t m = 0; m < repetitions; ++m) {
        const Observation y = sample(channel, sent, rng);
        log_likelihoods_into(channel, y, loglik);
        for (std::size_t i = 0; i < n; ++i) bayes[i] += loglik[i];
        if (erased) continue;
        // With a single use the prior enters the embedding; with repetitions
        // it is uniform and cancels.
        if (repetitions == 1)
          for (std::size_t i = 0; i < n; ++i) loglik[i] += log_prior[i];
        try {
          embed_log_posterior_into(loglik, point);
        } catch (const ErasureError&) {
          erased = true;
          continue;
        }
        for (std::size_t i = 0; i < n; ++i) aggregate[i] += point[i];
      }
      if (erased) {
        ++counts.erasures;
        continue;
      }

      // Geometric path: nearest simplex vertex, lowest index on ties.
      distance_offsets_into(aggregate, vertices, offsets);
      const double nearest = *std::min_element(offsets.begin(), offsets.end());
      double scale = 1.0;
      for (double v : aggregate) scale = std::max(scale, std::abs(v));
      std::size_t geometric = 0;
      while (offsets[geometric] - nearest > tol::tie_relative * scale) ++geometric;
      if (geometric != sent) ++counts.errors;

      // Bayes path: the geometric choice must attain the maximum log-posterior.
      const double top = *std::max_element(bayes.begin(), bayes.end());
      const double slack = tol::tie_relative * std::max(1.0, std::abs(top));
      if (bayes[geometric] >= top - slack) ++out.agreement;
    }
  });

  SimulationReport report;
  report.repetitions = repetitions;
  report.trials = trials;
  report.seed = seed;
  report.per_symbol.assign(n, {});
  for (const BlockCounts& r : results) {
    report.agreement += r.agreement;
    for (std::size_t i = 0; i < n; ++i) {
      report.per_symbol[i].sent += r.per_symbol[i].sent;
      report.per_symbol[i].errors += r.per_symbol[i].errors;
      report.per_symbol[i].erasures += r.per_symbol[i].erasures;
    }
  }
  return report;
}

}  // namespace geomdet
