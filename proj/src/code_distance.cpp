#include "geomdet/code_distance.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <memory>
#include <cmath>
#include <stdexcept>
#include <string>

#include "geomdet/embedding.hpp"
#include "geomdet/error.hpp"
#include "geomdet/tolerances.hpp"

namespace geomdet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr unsigned gauss_order = 8;

void check_index(std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("symbol index out of range");
}

std::vector<double> log_prior_of(const Prior& prior) {
  std::vector<double> out(prior.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::log(prior[i]);
  return out;
}

// Squared distance from the embedded observation y to vertex j, reusing the
// caller's buffers. Returns nullopt on erasure.
class SquaredDistanceToVertex {
 public:
  SquaredDistanceToVertex(const Channel& channel, const Prior& prior)
      : channel_(channel),
        log_prior_(log_prior_of(prior)),
        vertices_(simplex_vertices(symbol_count(channel))),
        loglik_(log_prior_.size()),
        point_(log_prior_.size()) {}

  std::optional<double> operator()(const Observation& y, std::size_t j) {
    log_likelihoods_into(channel_, y, loglik_);
    for (std::size_t i = 0; i < loglik_.size(); ++i) loglik_[i] += log_prior_[i];
    try {
      embed_log_posterior_into(loglik_, point_);
    } catch (const ErasureError&) {
      return std::nullopt;
    }
    return squared_distance(point_, vertices_[j].coords());
  }

 private:
  const Channel& channel_;
  std::vector<double> log_prior_;
  std::vector<EmbeddedPoint> vertices_;
  std::vector<double> loglik_;
  std::vector<double> point_;
};

struct Additive {
  std::vector<double> values;
  bool gaussian;
  double parameter;  // sigma^2 or lambda
};

Additive additive_view(const Channel& channel) {
  if (const auto* a = std::get_if<AwgnChannel>(&channel))
    return {a->values, true, a->noise_variance};
  if (const auto* l = std::get_if<LaplaceChannel>(&channel))
    return {l->values, false, l->scale};
  throw EstimatorError("quadrature needs an additive (awgn or laplace) channel");
}

double density(const Additive& a, double centre, double y) {
  if (a.gaussian) {
    const double d = y - centre;
    return std::exp(-d * d / (2.0 * a.parameter)) / std::sqrt(2.0 * M_PI * a.parameter);
  }
  return std::exp(-std::abs(y - centre) / a.parameter) / (2.0 * a.parameter);
}

// Integral over [lo, hi] split at breaks, with about `panels` panels in total
// distributed by segment length.
template <class F>
double composite_gauss(F&& f, double lo, double hi, const std::vector<double>& breaks,
                       std::size_t panels) {
  std::vector<double> edges{lo};
  for (double b : breaks)
    if (b > lo && b < hi) edges.push_back(b);
  edges.push_back(hi);
  const double width = hi - lo;

  double total = 0.0;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double a = edges[s];
    const double b = edges[s + 1];
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(panels) * (b - a) / width)));
    const double h = (b - a) / static_cast<double>(count);
    for (std::size_t p = 0; p < count; ++p) {
      const double left = a + h * static_cast<double>(p);
      const double right = (p + 1 == count) ? b : left + h;
      total += boost::math::quadrature::gauss<double, gauss_order>::integrate(f, left, right);
    }
  }
  return total;
}

}  // namespace

double symbol_distance_exact(const DiscreteChannel& channel, const Prior& prior,
                             std::size_t i, std::size_t j) {
  const std::size_t n = channel.alphabet.size();
  check_index(n, i);
  check_index(n, j);
  const Channel wrapped = channel;
  const EmbeddedPoint vertex = embed_symbol(n, j);
  double total = 0.0;
  for (std::size_t k = 0; k < channel.observation_count(); ++k) {
    const EmbeddedPoint y = embed_channel_observation(wrapped, prior, Observation{k});
    total += channel.probability(i, k) * squared_distance(y.coords(), vertex.coords());
  }
  return total;
}

McEstimate symbol_distance_mc(const Channel& channel, const Prior& prior,
                              std::size_t i, std::size_t j, std::size_t samples,
                              std::uint64_t seed, Execution exec) {
  const std::size_t n = symbol_count(channel);
  check_index(n, i);
  check_index(n, j);
  if (samples < min_mc_samples)
    throw EstimatorError("Monte Carlo needs at least " + std::to_string(min_mc_samples) +
                         " samples");
  return kernels::monte_carlo_mean(samples, seed, exec, [&]() -> kernels::Draw {
    auto to_vertex = std::make_shared<SquaredDistanceToVertex>(channel, prior);
    return [&channel, to_vertex, i, j](RngStream& rng) {
      return (*to_vertex)(sample(channel, i, rng), j);
    };
  });
}

QuadratureResult symbol_distance_quadrature(const Channel& channel, const Prior& prior,
                                            std::size_t i, std::size_t j,
                                            std::size_t points, QuadratureDomain domain) {
  const Additive a = additive_view(channel);
  check_index(a.values.size(), i);
  check_index(a.values.size(), j);
  if (points < min_quadrature_points)
    throw EstimatorError("quadrature needs at least " +
                         std::to_string(min_quadrature_points) + " points");

  const double centre = a.values[i];
  double half_width = 0.0;
  double lost_mass = 0.0;
  if (a.gaussian) {
    const double sigma = std::sqrt(a.parameter);
    half_width = domain.gaussian_sigmas * sigma;
    lost_mass = std::erfc(domain.gaussian_sigmas / std::sqrt(2.0));
  } else {
    half_width = domain.laplace_scales * a.parameter;
    lost_mass = std::exp(-domain.laplace_scales);
  }
  if (lost_mass > tol::truncation_mass)
    throw EstimatorError("truncated domain drops probability mass " +
                         std::to_string(lost_mass));

  // The Gaussian integrand is smooth; the Laplace one has kinks at every
  // symbol value.
  std::vector<double> breaks;
  if (!a.gaussian) {
    breaks = a.values;
    std::sort(breaks.begin(), breaks.end());
  }

  SquaredDistanceToVertex to_vertex(channel, prior);
  auto integrand = [&](double y) {
    const std::optional<double> d2 = to_vertex(Observation{y}, j);
    if (!d2) throw ErasureError("observation with zero posterior inside the domain");
    return density(a, centre, y) * *d2;
  };
  const double lo = centre - half_width;
  const double hi = centre + half_width;
  const std::size_t panels = std::max<std::size_t>(2, points / gauss_order);

  QuadratureResult out;
  out.value = composite_gauss(integrand, lo, hi, breaks, panels);
  out.error_estimate =
      std::abs(out.value - composite_gauss(integrand, lo, hi, breaks, panels / 2));
  out.points = panels * gauss_order;
  return out;
}

EstimatorInfo describe(const Estimator& estimator) {
  return std::visit(
      overloaded{
          [](const ExactEstimator&) { return EstimatorInfo{"exact", 0, std::nullopt}; },
          [](const MonteCarloEstimator& e) {
            return EstimatorInfo{"monte_carlo", e.samples, e.seed};
          },
          [](const QuadratureEstimator& e) {
            return EstimatorInfo{"quadrature", e.points, std::nullopt};
          },
      },
      estimator);
}

namespace {

// One d_s entry and its standard error under the chosen estimator.
std::pair<double, double> estimate_symbol_distance(const Channel& channel,
                                                   const Prior& prior, std::size_t i,
                                                   std::size_t j,
                                                   const Estimator& estimator,
                                                   std::uint64_t seed_lane,
                                                   Execution exec) {
  return std::visit(
      overloaded{
          [&](const ExactEstimator&) -> std::pair<double, double> {
            const auto* d = std::get_if<DiscreteChannel>(&channel);
            if (d == nullptr)
              throw EstimatorError("the exact estimator needs a discrete channel");
            return {symbol_distance_exact(*d, prior, i, j), 0.0};
          },
          [&](const MonteCarloEstimator& e) -> std::pair<double, double> {
            const McEstimate m =
                symbol_distance_mc(channel, prior, i, j, e.samples, e.seed ^ seed_lane, exec);
            return {m.mean, m.standard_error};
          },
          [&](const QuadratureEstimator& e) -> std::pair<double, double> {
            return {symbol_distance_quadrature(channel, prior, i, j, e.points).value, 0.0};
          },
      },
      estimator);
}

}  // namespace

SymbolDistanceTable symbol_distance_table(const Channel& channel, const Prior& prior,
                                          const Estimator& estimator, Execution exec) {
  SymbolDistanceTable table;
  table.n = symbol_count(channel);
  table.values.resize(table.n * table.n);
  table.standard_errors.resize(table.n * table.n);
  table.info = describe(estimator);
  for (std::size_t i = 0; i < table.n; ++i)
    for (std::size_t j = 0; j < table.n; ++j) {
      // Every row draws from the same stream (common random numbers across j).
      const auto [v, se] =
          estimate_symbol_distance(channel, prior, i, j, estimator, 0, exec);
      table.values[i * table.n + j] = v;
      table.standard_errors[i * table.n + j] = se;
    }
  return table;
}

std::vector<std::pair<std::size_t, std::size_t>> self_distance_violations(
    const SymbolDistanceTable& table) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < table.n; ++i)
    for (std::size_t j = 0; j < table.n; ++j)
      if (j != i && table.at(i, i) > table.at(i, j)) out.emplace_back(i, j);
  return out;
}

namespace {

void check_codewords(std::size_t n, const Codeword& c1, const Codeword& c2) {
  if (c1.empty() || c1.size() != c2.size())
    throw std::invalid_argument("codewords must be non-empty and of equal length");
  for (std::size_t c : c1) check_index(n, c);
  for (std::size_t c : c2) check_index(n, c);
}

}  // namespace

CodewordDistance codeword_distance(const Channel& channel, const Prior& prior,
                                   const Codeword& c1, const Codeword& c2,
                                   const Estimator& estimator, Execution exec) {
  check_codewords(symbol_count(channel), c1, c2);
  CodewordDistance out{c1, c2, 0.0, 0.0, {}};
  double variance = 0.0;
  for (std::size_t pos = 0; pos < c1.size(); ++pos) {
    try {
      const auto [v, se] = estimate_symbol_distance(
          channel, prior, c1[pos], c2[pos], estimator,
          static_cast<std::uint64_t>(pos + 1) << 32, exec);
      out.decomposition.push_back(v);
      variance += se * se;
    } catch (const EstimatorError& e) {
      throw EstimatorError("position " + std::to_string(pos + 1) + ": " + e.what());
    }
  }
  for (double v : out.decomposition) out.value += v;
  out.standard_error = std::sqrt(variance);
  return out;
}

McEstimate codeword_distance_joint_mc(const Channel& channel, const Prior& prior,
                                      const Codeword& c1, const Codeword& c2,
                                      std::size_t samples, std::uint64_t seed,
                                      Execution exec) {
  const std::size_t n = symbol_count(channel);
  check_codewords(n, c1, c2);
  if (samples < min_mc_samples)
    throw EstimatorError("Monte Carlo needs at least " + std::to_string(min_mc_samples) +
                         " samples");
  const StackedPoint target = embed_codeword(alphabet_of(channel), c2);
  const std::vector<double> log_prior = log_prior_of(prior);
  const std::size_t m = c1.size();

  return kernels::monte_carlo_mean(samples, seed, exec, [&]() -> kernels::Draw {
    // Whole stacked observation embedding for one draw of the sequence.
    auto stacked = std::make_shared<std::vector<double>>(n * m);
    auto loglik = std::make_shared<std::vector<double>>(n);
    return [&, stacked, loglik](RngStream& rng) -> std::optional<double> {
      for (std::size_t pos = 0; pos < m; ++pos) {
        log_likelihoods_into(channel, sample(channel, c1[pos], rng), *loglik);
        for (std::size_t i = 0; i < n; ++i) (*loglik)[i] += log_prior[i];
        try {
          embed_log_posterior_into(*loglik,
                                   std::span<double>(*stacked).subspan(pos * n, n));
        } catch (const ErasureError&) {
          return std::nullopt;
        }
      }
      return squared_distance(*stacked, target.coords());
    };
  });
}

CodebookTable codebook_table(const Channel& channel, const Prior& prior,
                             const std::vector<Codeword>& codebook,
                             const Estimator& estimator, Execution exec) {
  if (codebook.size() < 2)
    throw std::invalid_argument("a codebook table needs at least two codewords");
  const std::size_t n = symbol_count(channel);
  for (const Codeword& c : codebook) check_codewords(n, codebook.front(), c);

  const SymbolDistanceTable symbols = symbol_distance_table(channel, prior, estimator, exec);
  const std::size_t k = codebook.size();
  CodebookTable out;
  out.codebook = codebook;
  out.values.resize(k * k);
  out.standard_errors.resize(k * k);
  out.info = symbols.info;
  out.min_value = INFINITY;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      double v = 0.0;
      double var = 0.0;
      for (std::size_t pos = 0; pos < codebook[a].size(); ++pos) {
        v += symbols.at(codebook[a][pos], codebook[b][pos]);
        const double se = symbols.error_at(codebook[a][pos], codebook[b][pos]);
        var += se * se;
      }
      out.values[a * k + b] = v;
      out.standard_errors[a * k + b] = std::sqrt(var);
      if (a != b && v < out.min_value) {
        out.min_value = v;
        out.min_pair = {a, b};
      }
    }
  return out;
}

}  // namespace geomdet
