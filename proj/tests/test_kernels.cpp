#include <doctest.h>

#include <random>
#include <stdexcept>

#include "geomdet/code_distance.hpp"
#include "geomdet/detection.hpp"
#include "geomdet/parallel.hpp"
#include "geomdet/sequence.hpp"
#include "oracle/fixtures.hpp"

using namespace geomdet;

namespace {

bool same_report(const SimulationReport& a, const SimulationReport& b) {
  if (a.agreement != b.agreement || a.per_symbol.size() != b.per_symbol.size()) return false;
  for (std::size_t i = 0; i < a.per_symbol.size(); ++i)
    if (a.per_symbol[i].sent != b.per_symbol[i].sent ||
        a.per_symbol[i].errors != b.per_symbol[i].errors ||
        a.per_symbol[i].erasures != b.per_symbol[i].erasures)
      return false;
  return true;
}

struct WorkerGuard {
  int saved = worker_count();
  ~WorkerGuard() { set_worker_count(saved); }
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("simulation is identical serially, in parallel and across thread counts") {
  WorkerGuard guard;
  const Channel channels[] = {fixtures::table_channel(), fixtures::awgn(1.0), fixtures::laplace(1.0)};
  for (const auto& ch : channels) {
    const auto ref = simulate_error_rate(ch, Prior::uniform(3), 3, 30000, 77, Execution::serial);
    for (int w : {1, 2, 3, 4}) {
      set_worker_count(w);
      CHECK(same_report(ref, simulate_error_rate(ch, Prior::uniform(3), 3, 30000, 77, Execution::parallel)));
    }
  }
}

TEST_CASE("monte carlo estimates are bit-identical") {
  WorkerGuard guard;
  const auto ch = fixtures::awgn(0.7);
  const auto ref = symbol_distance_mc(ch, Prior::uniform(3), 0, 1, 50000, 3, Execution::serial);
  const auto jref = codeword_distance_joint_mc(ch, Prior::uniform(3), {0, 1, 2}, {1, 1, 0}, 20000, 4,
                                               Execution::serial);
  for (int w : {1, 2, 4}) {
    set_worker_count(w);
    const auto par = symbol_distance_mc(ch, Prior::uniform(3), 0, 1, 50000, 3, Execution::parallel);
    CHECK(par.mean == ref.mean);
    CHECK(par.standard_error == ref.standard_error);
    const auto jpar = codeword_distance_joint_mc(ch, Prior::uniform(3), {0, 1, 2}, {1, 1, 0}, 20000, 4,
                                                 Execution::parallel);
    CHECK(jpar.mean == jref.mean);
  }
}

TEST_CASE("codebook enumeration is bit-identical") {
  WorkerGuard guard;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0, 1);
  const SequenceObservation seq = {g(rng), g(rng), g(rng), g(rng), g(rng), g(rng), g(rng), g(rng), g(rng)};
  const Codeword c = {0, 1, 2, 0, 1, 2, 0, 1, 2};
  const double ref = sequence_posterior(fixtures::awgn(1.0), Prior::uniform(3), seq, c, Execution::serial);
  for (int w : {1, 2, 4}) {
    set_worker_count(w);
    CHECK(sequence_posterior(fixtures::awgn(1.0), Prior::uniform(3), seq, c, Execution::parallel) == ref);
  }
}

TEST_CASE("exceptions from blocks propagate") {
  CHECK_THROWS_AS(for_each_block(Execution::parallel, 8,
                                 [](std::size_t b) {
                                   if (b == 5) throw std::runtime_error("block");
                                 }),
                  std::runtime_error);
}

}  // TEST_SUITE
