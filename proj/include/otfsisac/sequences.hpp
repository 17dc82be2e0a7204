#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "otfsisac/types.hpp"

namespace otfsisac {

enum class SequenceFamily { Hadamard, ZadoffChu, Gold };

const char* to_string(SequenceFamily f);
SequenceFamily family_from_string(const std::string& s);  // std::invalid_argument on unknown name

/// One spreading sequence: unit-norm complex chips plus its family coordinates.
struct Sequence {
  SequenceFamily family = SequenceFamily::Hadamard;
  int family_index = 0;
  CVec chips;

  int length() const { return int(chips.size()); }
};

// Row `index` of the order-`order` Sylvester-Hadamard matrix, scaled to unit
// norm. Row 0 is the all-ones sequence. `order` must be a power of two and
// 0 <= index < order.
Sequence gen_hadamard(int order, int index);

// Root-`root` Zadoff-Chu sequence of length `length`, cyclically advanced by
// `shift` chips, scaled to unit norm. Requires gcd(root, length) == 1 and
// 0 <= shift < length. length == 1 degenerates to the single chip 1.
Sequence gen_zadoff_chu(int length, int root, int shift);

/// Generator polynomial pair for a Gold set. Bit k of a mask is the
/// coefficient of x^k, including the leading x^degree term and the constant.
struct GoldPair {
  uint32_t poly_a = 0;
  uint32_t poly_b = 0;
};

// Fixed per-degree generator pairs, degrees 4..12. Degrees not divisible by 4
// are classical preferred pairs; degrees 4, 8, 12 have no preferred pairs, so
// a fixed primitive pair is used and the resulting set is Gold-like. Either
// way both polynomials are re-verified maximal at generation time.
GoldPair default_gold_pair(int degree);

// True when the LFSR driven by `poly` has full period 2^degree - 1.
bool is_maximal_lfsr(uint32_t poly, int degree);

// Binary m-sequence (period 2^degree - 1) from an all-ones LFSR seed.
std::vector<uint8_t> lfsr_sequence(uint32_t poly, int degree);

// Gold set member: 0 and 1 are the two m-sequences; 2 + k is their XOR with
// the second sequence cyclically advanced by k chips. Bits map 0 -> +1,
// 1 -> -1; chips repeat from the start to reach target_length (0 keeps the
// natural length 2^degree - 1); the result is scaled to unit norm.
Sequence gen_gold(int degree, const GoldPair& pair, int index, int target_length = 0);
Sequence gen_gold(int degree, int index, int target_length = 0);

// Number of distinct members a family offers at this spreading length.
int family_capacity(SequenceFamily family, int length);

/// First n_mult members of a family at a given length, one per column.
struct SequenceMatrix {
  SequenceFamily family = SequenceFamily::Hadamard;
  CMat cols;

  int length() const { return int(cols.rows()); }
  int n_mult() const { return int(cols.cols()); }
};

// Members 0..n_mult-1 of `family` at spreading length `length`. Throws
// std::out_of_range naming the capacity when n_mult exceeds it, and
// std::invalid_argument for lengths the family cannot produce.
SequenceMatrix build_sequence_matrix(SequenceFamily family, int length, int n_mult);

// CSV dump, one row per (member, chip): member,chip,re,im.
void write_sequence_csv(const SequenceMatrix& m, std::ostream& os);

}  // namespace otfsisac
