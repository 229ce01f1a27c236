#include <algorithm>
#include <cmath>
#include <vector>

#include "geomdet/parallel.hpp"
#include "geomdet/sequence.hpp"

namespace geomdet::kernels {

double codebook_log_partition(std::span<const double> table, std::size_t n,
                              std::size_t m, Execution exec) {
  // Subtract each row's minimum so every exponent is <= 0.
  std::vector<double> shifted(table.begin(), table.end());
  for (std::size_t pos = 0; pos < m; ++pos) {
    auto row = std::span<double>(shifted).subspan(pos * n, n);
    const double low = *std::min_element(row.begin(), row.end());
    for (double& v : row) v -= low;
  }

  std::size_t total = 1;
  for (std::size_t pos = 0; pos < m; ++pos) total *= n;
  const std::size_t blocks = block_count(total, default_block_size);
  std::vector<double> partial(blocks, 0.0);

  for_each_block(exec, blocks, [&](std::size_t b) {
    const std::size_t begin = b * default_block_size;
    const std::size_t end = std::min(total, begin + default_block_size);
    // Odometer over codeword digits, position 0 most significant.
    std::vector<std::size_t> digits(m);
    std::size_t rest = begin;
    for (std::size_t pos = m; pos-- > 0;) {
      digits[pos] = rest % n;
      rest /= n;
    }
    double acc = 0.0;
    for (std::size_t c = begin; c < end; ++c) {
      double offset = 0.0;
      for (std::size_t pos = 0; pos < m; ++pos) offset += shifted[pos * n + digits[pos]];
      acc += std::exp(-offset);
      for (std::size_t pos = m; pos-- > 0;) {
        if (++digits[pos] < n) break;
        digits[pos] = 0;
      }
    }
    partial[b] = acc;
  });
  return std::log(pairwise_sum(partial));
}

}  // namespace geomdet::kernels
