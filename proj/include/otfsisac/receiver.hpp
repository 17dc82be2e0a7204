#pragma once

#include <cstdint>
#include <vector>

#include "otfsisac/channel.hpp"
#include "otfsisac/frame.hpp"
#include "otfsisac/types.hpp"

namespace otfsisac {

// Symbol energy is 1, so N0 = 1 / (bits_per_symbol * 10^(ebno_db / 10)).
double ebno_to_n0(double ebno_db, int bits_per_symbol = kBitsPerSymbol);

// Linear MMSE equalizer G = (A A^H + N0 I)^-1 A with A = H * expander, formed
// once and reused. Solved by Cholesky; a non-positive-definite normal matrix
// (possible only at N0 = 0 with a rank-deficient A) raises std::runtime_error.
CMat mmse_matrix(const DdChannel& chan, const SpreadingPlan& plan, double n0);

struct DetectionResult {
  CVec symbols;               // equalized soft symbols, G^H y
  std::vector<uint8_t> bits;  // hard decisions
};

DetectionResult detect(const CMat& g, const CVec& y);

// std::length_error when the vectors disagree in size.
uint64_t count_bit_errors(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b);

}  // namespace otfsisac
