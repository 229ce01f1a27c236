#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geomdet/channel.hpp"
#include "geomdet/embedding.hpp"
#include "geomdet/parallel.hpp"
#include "geomdet/sequence.hpp"

namespace geomdet {

// MAP decision: the symbol whose simplex vertex is nearest the embedded
// observation. Ties go to the lowest index and are flagged.
struct Decision {
  std::size_t chosen = 0;
  Posterior posterior;
  double margin = 0.0;  // second-nearest minus nearest distance; 0 iff tie
  bool tie = false;
  std::vector<std::size_t> tied;  // every index tied for nearest, ascending
};

Decision decide_point(const EmbeddedPoint& y);

Decision decide(const Channel& channel, const Prior& prior,
                const Observation& observation);

struct SequenceDecision {
  Codeword codeword;
  bool tie = false;
};

// Enumerates all N^M codewords and keeps the one nearest in R^(N M); ties go
// to the lexicographically smallest codeword.
SequenceDecision decide_sequence(const Channel& channel, const Prior& prior,
                                 const SequenceObservation& seq,
                                 std::uint64_t cap = default_enumeration_cap);

// Nearest vertex to the aggregate of M repeated-symbol observations.
Decision decide_repetition(const Channel& channel, const SequenceObservation& seq);

struct RegionEntry {
  std::string observation;
  Decision decision;
};

std::vector<RegionEntry> decision_regions(const DiscreteChannel& channel,
                                          const Prior& prior);

struct SymbolErrorCounts {
  std::uint64_t sent = 0;
  std::uint64_t errors = 0;
  std::uint64_t erasures = 0;
};

struct SimulationReport {
  std::size_t repetitions = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SymbolErrorCounts> per_symbol;
  // Decodable trials where the geometric decision was also a Bayes MAP
  // decision.
  std::uint64_t agreement = 0;

  std::uint64_t erasures() const;
  std::uint64_t decoded() const { return trials - erasures(); }
  double symbol_error_rate(std::size_t i) const;
  double average_error_rate() const;
  bool decoders_agree() const { return agreement == decoded(); }
};

// Sends symbols drawn from the prior, M channel uses each, and decodes every
// trial twice: geometrically (nearest vertex to the aggregate point) and by
// a direct log-domain Bayes product. M > 1 requires a uniform prior.
SimulationReport simulate_error_rate(const Channel& channel, const Prior& prior,
                                     std::size_t repetitions, std::uint64_t trials,
                                     std::uint64_t seed,
                                     Execution exec = Execution::parallel);

}  // namespace geomdet
