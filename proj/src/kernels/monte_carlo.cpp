#include <algorithm>
#include <cmath>
#include <vector>

#include "geomdet/code_distance.hpp"

namespace geomdet::kernels {

namespace {

// Welford moments of one block.
struct BlockMoments {
  std::uint64_t count = 0;
  std::uint64_t rejected = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

void merge(BlockMoments& into, const BlockMoments& b) {
  if (b.count == 0) {
    into.rejected += b.rejected;
    return;
  }
  const double na = static_cast<double>(into.count);
  const double nb = static_cast<double>(b.count);
  const double delta = b.mean - into.mean;
  const double total = na + nb;
  into.mean += delta * nb / total;
  into.m2 += b.m2 + delta * delta * na * nb / total;
  into.count += b.count;
  into.rejected += b.rejected;
}

}  // namespace

McEstimate monte_carlo_mean(std::size_t samples, std::uint64_t seed, Execution exec,
                            const std::function<Draw()>& make_draw) {
  const std::size_t blocks = block_count(samples, default_block_size);
  std::vector<BlockMoments> partial(blocks);

  for_each_block(exec, blocks, [&](std::size_t b) {
    RngStream rng = RngStream::for_block(seed, b);
    const Draw draw = make_draw();
    BlockMoments& m = partial[b];
    const std::size_t begin = b * default_block_size;
    const std::size_t end = std::min(samples, begin + default_block_size);
    for (std::size_t s = begin; s < end; ++s) {
      const std::optional<double> v = draw(rng);
      if (!v) {
        ++m.rejected;
        continue;
      }
      ++m.count;
      const double delta = *v - m.mean;
      m.mean += delta / static_cast<double>(m.count);
      m.m2 += delta * (*v - m.mean);
    }
  });

  BlockMoments total;
  for (const BlockMoments& m : partial) merge(total, m);

  McEstimate out;
  out.mean = total.mean;
  out.samples = total.count;
  out.seed = seed;
  out.rejected = total.rejected;
  if (total.count > 1) {
    const double variance = total.m2 / static_cast<double>(total.count - 1);
    out.standard_error = std::sqrt(variance / static_cast<double>(total.count));
  }
  return out;
}

}  // namespace geomdet::kernels
