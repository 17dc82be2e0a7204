#include "otfsisac/rng.hpp"

#include <cmath>

namespace otfsisac {

uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t derive_stream(uint64_t seed, uint64_t point_index, uint64_t frame_index) {
  return mix64(mix64(mix64(seed) ^ point_index) ^ frame_index);
}

double Rng::u01() {
  // (x >> 11) is uniform on [0, 2^53); +1 shifts the support to (0, 1].
  return double((eng_() >> 11) + 1) * 0x1.0p-53;
}

void Rng::gauss_pair(double& a, double& b) {
  const double u1 = u01();
  const double u2 = u01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * kPi * u2;
  a = r * std::cos(ang);
  b = r * std::sin(ang);
}

cplx Rng::cnormal(double var) {
  double a, b;
  gauss_pair(a, b);
  const double s = std::sqrt(var * 0.5);
  return cplx(a * s, b * s);
}

int Rng::bit() {
  if (bits_left_ == 0) {
    bit_word_ = eng_();
    bits_left_ = 64;
  }
  const int out = int(bit_word_ & 1u);
  bit_word_ >>= 1;
  --bits_left_;
  return out;
}

}  // namespace otfsisac
