#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cbandit {

using Rng = std::mt19937_64;

// Counter-based seed derivation: replication r always gets the same stream,
// no matter which thread runs it or in which order.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline Rng make_stream_rng(std::uint64_t master, std::uint64_t stream) {
  return Rng(derive_stream_seed(master, stream));
}

// Uniform double in [0,1) from the top 53 bits. Avoids the
// implementation-defined behaviour of std::uniform_real_distribution so
// streams are reproducible across standard libraries.
inline double next_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double next_uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * next_unit(rng);
}

// Draw an index from a cumulative distribution (cdf.back() == 1).
inline int sample_cdf(Rng& rng, const std::vector<double>& cdf) {
  const double u = next_unit(rng);
  for (std::size_t i = 0; i + 1 < cdf.size(); ++i) {
    if (u < cdf[i]) return static_cast<int>(i);
  }
  return static_cast<int>(cdf.size()) - 1;
}

}  // namespace cbandit
