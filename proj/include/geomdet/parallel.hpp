#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace geomdet {

// Selects the OpenMP kernel or the serial reference loop. Both visit the
// same fixed blocks with the same per-block seeds and reduce in block order,
// so their results are bit-identical.
enum class Execution { serial, parallel };

inline constexpr std::size_t default_block_size = 4096;

// Number of OpenMP workers a parallel kernel will use.
int worker_count();
void set_worker_count(int workers);

inline std::size_t block_count(std::size_t total, std::size_t block_size) {
  return (total + block_size - 1) / block_size;
}

// Sum in a fixed binary-tree order, independent of how the partials were
// produced.
double pairwise_sum(std::span<const double> values);

// Calls fn(b) for every b in [0, blocks). Under Execution::parallel the calls
// are spread over OpenMP threads; the first exception (lowest block index) is
// rethrown after the loop.
template <class BlockFn>
void for_each_block(Execution exec, std::size_t blocks, BlockFn&& fn) {
  if (exec == Execution::serial) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::vector<std::exception_ptr> failures(blocks);
  const auto n = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < n; ++b) {
    try {
      fn(static_cast<std::size_t>(b));
    } catch (...) {
      failures[static_cast<std::size_t>(b)] = std::current_exception();
    }
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
}

}  // namespace geomdet
