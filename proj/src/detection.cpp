#include "geomdet/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geomdet/error.hpp"
#include "geomdet/tolerances.hpp"

namespace geomdet {

namespace {

double tie_scale(std::span<const double> y) {
  double scale = 1.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  return tol::tie_relative * scale;
}

}  // namespace

Decision decide_point(const EmbeddedPoint& y) {
  const std::size_t n = y.dimension();
  const auto vertices = simplex_vertices(n);
  std::vector<double> offsets(n);
  distance_offsets_into(y.coords(), vertices, offsets);

  Decision d;
  d.chosen = static_cast<std::size_t>(
      std::min_element(offsets.begin(), offsets.end()) - offsets.begin());
  const double slack = tie_scale(y.coords());
  for (std::size_t k = 0; k < n; ++k)
    if (offsets[k] - offsets[d.chosen] <= slack) d.tied.push_back(k);
  // min_element returns the first minimum, but a tied index may sit below it.
  d.chosen = d.tied.front();
  d.tie = d.tied.size() > 1;

  if (!d.tie) {
    std::size_t second = d.chosen == 0 ? 1 : 0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != d.chosen && offsets[k] < offsets[second]) second = k;
    d.margin = std::max(0.0, distance(y, vertices[second]) -
                                 distance(y, vertices[d.chosen]));
  }
  d.posterior = posterior_from_distances(y, vertices);
  return d;
}

Decision decide(const Channel& channel, const Prior& prior,
                const Observation& observation) {
  return decide_point(embed_channel_observation(channel, prior, observation));
}

SequenceDecision decide_sequence(const Channel& channel, const Prior& prior,
                                 const SequenceObservation& seq,
                                 std::uint64_t cap) {
  const std::size_t n = symbol_count(channel);
  const std::size_t m = seq.size();
  const std::uint64_t total = codebook_size(n, m, cap);
  const StackedPoint y = embed_sequence(channel, prior, seq);
  const auto vertices = simplex_vertices(n);
  std::vector<double> table(m * n);
  for (std::size_t pos = 0; pos < m; ++pos)
    distance_offsets_into(y.block(pos), vertices,
                          std::span<double>(table).subspan(pos * n, n));
  const double slack = tie_scale(y.coords());

  SequenceDecision best;
  double best_offset = INFINITY;
  Codeword digits(m, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    double offset = 0.0;
    for (std::size_t pos = 0; pos < m; ++pos) offset += table[pos * n + digits[pos]];
    if (offset < best_offset - slack) {
      best_offset = offset;
      best.codeword = digits;
      best.tie = false;
    } else if (offset <= best_offset + slack) {
      best.tie = true;
    }
    for (std::size_t pos = m; pos-- > 0;) {
      if (++digits[pos] < n) break;
      digits[pos] = 0;
    }
  }
  return best;
}

Decision decide_repetition(const Channel& channel, const SequenceObservation& seq) {
  const std::size_t n = symbol_count(channel);
  return decide_point(aggregate_repetition(channel, Prior::uniform(n), seq));
}

std::vector<RegionEntry> decision_regions(const DiscreteChannel& channel,
                                          const Prior& prior) {
  const Channel wrapped = channel;
  std::vector<RegionEntry> out;
  for (std::size_t k = 0; k < channel.observation_count(); ++k)
    out.push_back({channel.observations[k], decide(wrapped, prior, Observation{k})});
  return out;
}

std::uint64_t SimulationReport::erasures() const {
  std::uint64_t e = 0;
  for (const auto& s : per_symbol) e += s.erasures;
  return e;
}

double SimulationReport::symbol_error_rate(std::size_t i) const {
  const auto& s = per_symbol.at(i);
  const std::uint64_t decodable = s.sent - s.erasures;
  return decodable == 0 ? 0.0
                        : static_cast<double>(s.errors) / static_cast<double>(decodable);
}

double SimulationReport::average_error_rate() const {
  std::uint64_t errors = 0;
  for (const auto& s : per_symbol) errors += s.errors;
  const std::uint64_t d = decoded();
  return d == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(d);
}

}  // namespace geomdet
