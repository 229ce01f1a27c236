#include "geomdet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "geomdet/error.hpp"
#include "geomdet/tolerances.hpp"

namespace geomdet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string cell(std::size_t i, std::size_t k) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")";
}

double as_real(const Observation& observation) {
  if (const double* y = std::get_if<double>(&observation)) return *y;
  throw std::invalid_argument("additive channel expects a real observation");
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2)
    throw std::invalid_argument("alphabet needs at least two symbols");
  std::set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate symbol label '" + l + "'");
}

std::optional<std::size_t> Alphabet::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

Prior::Prior(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  if (p_.size() < 2) throw std::invalid_argument("prior needs at least two entries");
  for (double v : p_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(
          "prior entries must be strictly positive (a zero prior forces a zero "
          "posterior)");
  const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(total - 1.0) > tol::prior_sum)
    throw std::invalid_argument("prior must sum to 1");
}

Prior Prior::uniform(std::size_t n) {
  return Prior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool Prior::is_uniform() const {
  return std::all_of(p_.begin(), p_.end(),
                     [&](double v) { return v == p_.front(); });
}

std::size_t Posterior::argmax() const {
  return static_cast<std::size_t>(std::max_element(p_.begin(), p_.end()) -
                                  p_.begin());
}

std::optional<std::size_t> DiscreteChannel::find_observation(
    const std::string& label) const {
  auto it = std::find(observations.begin(), observations.end(), label);
  if (it == observations.end()) return std::nullopt;
  return static_cast<std::size_t>(it - observations.begin());
}

const Alphabet& alphabet_of(const Channel& channel) {
  return std::visit([](const auto& c) -> const Alphabet& { return c.alphabet; },
                    channel);
}

std::size_t symbol_count(const Channel& channel) {
  return alphabet_of(channel).size();
}

std::string family_name(const Channel& channel) {
  return std::visit(overloaded{
                        [](const DiscreteChannel&) { return std::string("discrete"); },
                        [](const AwgnChannel&) { return std::string("awgn"); },
                        [](const LaplaceChannel&) { return std::string("laplace"); },
                    },
                    channel);
}

std::optional<double> noise_parameter(const Channel& channel) {
  return std::visit(
      overloaded{
          [](const DiscreteChannel&) -> std::optional<double> { return std::nullopt; },
          [](const AwgnChannel& c) -> std::optional<double> { return c.noise_variance; },
          [](const LaplaceChannel& c) -> std::optional<double> { return c.scale; },
      },
      channel);
}

DiscreteChannel discrete_from_posterior_table(
    Alphabet alphabet, std::vector<std::string> observations,
    std::span<const double> posterior_table,
    std::span<const double> observation_marginal) {
  const std::size_t n = alphabet.size();
  const std::size_t k = observations.size();
  if (posterior_table.size() != n * k || observation_marginal.size() != k)
    throw std::invalid_argument("posterior table shape does not match");

  // Pr{x_i} = sum_k Pr{x_i|y_k} Pr{y_k}
  std::vector<double> symbol_marginal(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < k; ++c)
      symbol_marginal[i] += posterior_table[i * k + c] * observation_marginal[c];

  std::vector<double> transition(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < k; ++c)
      transition[i * k + c] =
          posterior_table[i * k + c] * observation_marginal[c] / symbol_marginal[i];
  return DiscreteChannel{std::move(alphabet), std::move(observations),
                         std::move(transition)};
}

void log_likelihoods_into(const Channel& channel, const Observation& observation,
                          std::span<double> out) {
  std::visit(
      overloaded{
          [&](const DiscreteChannel& c) {
            const std::size_t* k = std::get_if<std::size_t>(&observation);
            if (k == nullptr || *k >= c.observation_count())
              throw UnknownObservationError("observation is not in the channel's list");
            for (std::size_t i = 0; i < out.size(); ++i)
              out[i] = std::log(c.probability(i, *k));
          },
          [&](const AwgnChannel& c) {
            const double y = as_real(observation);
            const double norm = -0.5 * std::log(2.0 * M_PI * c.noise_variance);
            for (std::size_t i = 0; i < out.size(); ++i) {
              const double d = y - c.values[i];
              out[i] = norm - d * d / (2.0 * c.noise_variance);
            }
          },
          [&](const LaplaceChannel& c) {
            const double y = as_real(observation);
            const double norm = -std::log(2.0 * c.scale);
            for (std::size_t i = 0; i < out.size(); ++i)
              out[i] = norm - std::abs(y - c.values[i]) / c.scale;
          },
      },
      channel);
}

std::vector<double> log_likelihoods(const Channel& channel,
                                    const Observation& observation) {
  std::vector<double> out(symbol_count(channel));
  log_likelihoods_into(channel, observation, out);
  return out;
}

Posterior posterior(const Channel& channel, const Prior& prior,
                    const Observation& observation) {
  std::vector<double> logp = log_likelihoods(channel, observation);
  if (prior.size() != logp.size())
    throw std::invalid_argument("prior size does not match the alphabet");
  for (std::size_t i = 0; i < logp.size(); ++i) logp[i] += std::log(prior[i]);

  const double top = *std::max_element(logp.begin(), logp.end());
  if (!std::isfinite(top))
    throw ErasureError("observation has zero probability under every symbol");
  double total = 0.0;
  for (double& v : logp) {
    v = std::exp(v - top);
    total += v;
  }
  for (std::size_t i = 0; i < logp.size(); ++i) {
    logp[i] /= total;
    if (logp[i] == 0.0)
      throw ErasureError("posterior of symbol " + std::to_string(i + 1) +
                         " is zero; the embedding needs every posterior to be "
                         "strictly positive");
  }
  return Posterior(std::move(logp));
}

Observation sample(const Channel& channel, std::size_t symbol, RngStream& rng) {
  if (symbol >= symbol_count(channel))
    throw std::out_of_range("symbol index out of range");
  return std::visit(
      overloaded{
          [&](const DiscreteChannel& c) -> Observation {
            const double u = rng.uniform();
            double cumulative = 0.0;
            const std::size_t k = c.observation_count();
            for (std::size_t col = 0; col + 1 < k; ++col) {
              cumulative += c.probability(symbol, col);
              if (u < cumulative) return col;
            }
            return k - 1;
          },
          [&](const AwgnChannel& c) -> Observation {
            return c.values[symbol] +
                   std::sqrt(c.noise_variance) * rng.standard_normal();
          },
          [&](const LaplaceChannel& c) -> Observation {
            return c.values[symbol] + rng.laplace(c.scale);
          },
      },
      channel);
}

std::vector<Violation> validate(const Channel& channel) {
  std::vector<Violation> out;
  std::visit(
      overloaded{
          [&](const DiscreteChannel& c) {
            const std::size_t n = c.alphabet.size();
            const std::size_t k = c.observation_count();
            if (k == 0) out.push_back({"discrete channel has no observations"});
            std::set<std::string> seen;
            for (const auto& o : c.observations)
              if (!seen.insert(o).second)
                out.push_back({"duplicate observation label '" + o + "'"});
            if (c.transition.size() != n * k) {
              out.push_back({"transition matrix has " +
                             std::to_string(c.transition.size()) +
                             " entries, expected " + std::to_string(n * k)});
              return;
            }
            for (std::size_t i = 0; i < n; ++i) {
              double row = 0.0;
              for (std::size_t col = 0; col < k; ++col) {
                const double p = c.probability(i, col);
                row += p;
                if (!std::isfinite(p) || p < 0.0)
                  out.push_back({"invalid probability at " + cell(i, col)});
                else if (p == 0.0)
                  out.push_back({"erasure-like entry at " + cell(i, col) +
                                 ": an observation that rules a symbol out has "
                                 "no embedding"});
              }
              if (std::abs(row - 1.0) > tol::row_sum) {
                std::ostringstream msg;
                msg << "row " << i + 1 << " sums to " << row;
                out.push_back({msg.str()});
              }
            }
          },
          [&](const AwgnChannel& c) {
            if (!(c.noise_variance > 0.0) || !std::isfinite(c.noise_variance))
              out.push_back({"noise variance must be positive"});
            if (c.values.size() != c.alphabet.size())
              out.push_back({"symbol value count does not match the alphabet"});
            for (double v : c.values)
              if (!std::isfinite(v)) out.push_back({"non-finite symbol value"});
          },
          [&](const LaplaceChannel& c) {
            if (!(c.scale > 0.0) || !std::isfinite(c.scale))
              out.push_back({"Laplace scale must be positive"});
            if (c.values.size() != c.alphabet.size())
              out.push_back({"symbol value count does not match the alphabet"});
            for (double v : c.values)
              if (!std::isfinite(v)) out.push_back({"non-finite symbol value"});
          },
      },
      channel);
  return out;
}

Observation parse_observation(const Channel& channel, const std::string& text) {
  if (const auto* d = std::get_if<DiscreteChannel>(&channel)) {
    auto k = d->find_observation(text);
    if (!k) throw UnknownObservationError("unknown observation '" + text + "'");
    return *k;
  }
  std::size_t used = 0;
  double y = 0.0;
  try {
    y = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(y))
    throw std::invalid_argument("expected a real observation, got '" + text + "'");
  return y;
}

std::string format_observation(const Channel& channel,
                               const Observation& observation) {
  if (const auto* d = std::get_if<DiscreteChannel>(&channel))
    return d->observations.at(std::get<std::size_t>(observation));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", std::get<double>(observation));
  return buf;
}

}  // namespace geomdet
