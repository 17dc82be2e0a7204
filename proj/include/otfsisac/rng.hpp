#pragma once

#include <cstdint>
#include <random>

#include "otfsisac/types.hpp"

namespace otfsisac {

// splitmix64 finalizer, used to hash (seed, point, frame) into stream ids.
uint64_t mix64(uint64_t z);

// Stream id for one simulated frame: mix64 folded over the three coordinates.
// Any change to this formula changes every published result.
uint64_t derive_stream(uint64_t seed, uint64_t point_index, uint64_t frame_index);

/// Deterministic per-frame random stream. One instance owns every draw a frame
/// makes (channel realization, data bits, noise) in a fixed order, so results
/// are identical for any thread count and any frame execution order.
class Rng {
 public:
  explicit Rng(uint64_t stream_id) : eng_(stream_id) {}

  // Uniform on (0, 1], 53-bit resolution.
  double u01();

  // One Box-Muller pair of independent N(0, 1) draws. No caching: every call
  // consumes exactly two engine words.
  void gauss_pair(double& a, double& b);

  // CN(0, var): real and imaginary parts N(0, var / 2).
  cplx cnormal(double var);

  // Data bit. 64 bits are consumed LSB-first per engine word.
  int bit();

 private:
  std::mt19937_64 eng_;
  uint64_t bit_word_ = 0;
  int bits_left_ = 0;
};

}  // namespace otfsisac
