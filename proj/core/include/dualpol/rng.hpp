#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace dualpol {

/// Philox4x32-10 counter-based generator. Stateless: each 128-bit counter
/// block maps to four independent 32-bit words under a 64-bit key, so
/// replicates and events can be indexed directly and merged in any order
/// with identical results.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                            const std::array<std::uint32_t, 2>& key);
};

/// One uniform double in [0, 1) per (seed, stream, index) triple.
double uniform_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Sequential generator walking a (seed, stream) counter lane.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform in [0, 1), 53-bit resolution.
  double next_double();
  /// Standard normal via Box-Muller.
  double next_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Sample an index from the cumulative distribution `cdf` (last entry ~1)
/// given a uniform u in [0,1).
std::size_t sample_cdf(const std::vector<double>& cdf, double u);

}  // namespace dualpol
