#include "otfsisac/sequences.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace otfsisac {

const char* to_string(SequenceFamily f) {
  switch (f) {
    case SequenceFamily::Hadamard: return "hadamard";
    case SequenceFamily::ZadoffChu: return "zc";
    case SequenceFamily::Gold: return "gold";
  }
  return "?";
}

SequenceFamily family_from_string(const std::string& s) {
  if (s == "hadamard" || s == "had") return SequenceFamily::Hadamard;
  if (s == "zc" || s == "zadoff_chu" || s == "zadoff-chu") return SequenceFamily::ZadoffChu;
  if (s == "gold") return SequenceFamily::Gold;
  throw std::invalid_argument("unknown sequence family: " + s);
}

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

Sequence gen_hadamard(int order, int index) {
  if (!is_pow2(order)) throw std::invalid_argument("hadamard order must be a power of two");
  if (index < 0 || index >= order)
    throw std::out_of_range("hadamard index out of range; capacity is " + std::to_string(order));
  Sequence s;
  s.family = SequenceFamily::Hadamard;
  s.family_index = index;
  s.chips.resize(order);
  const double scale = 1.0 / std::sqrt(double(order));
  for (int j = 0; j < order; ++j) {
    const bool neg = std::popcount(unsigned(index) & unsigned(j)) & 1;
    s.chips[j] = cplx(neg ? -scale : scale, 0.0);
  }
  return s;
}

Sequence gen_zadoff_chu(int length, int root, int shift) {
  if (length < 1) throw std::invalid_argument("zc length must be >= 1");
  if (root < 1) throw std::invalid_argument("zc root must be >= 1");
  if (std::gcd(root, length) != 1)
    throw std::invalid_argument("zc root must be coprime with the length");
  if (shift < 0 || shift >= length)
    throw std::out_of_range("zc shift out of range; capacity is " + std::to_string(length));
  Sequence s;
  s.family = SequenceFamily::ZadoffChu;
  s.family_index = shift;
  s.chips.resize(length);
  const double scale = 1.0 / std::sqrt(double(length));
  const int delta = (length % 2 == 0) ? 0 : 1;  // even lengths use n^2, odd n(n+1)
  for (int n = 0; n < length; ++n) {
    const int64_t m = (int64_t(n) + shift) % length;
    const double ang = -kPi * double(root) * double(m) * double(m + delta) / double(length);
    s.chips[n] = cplx(std::cos(ang), std::sin(ang)) * scale;
  }
  return s;
}

GoldPair default_gold_pair(int degree) {
  // Octal masks, verified maximal (full LFSR period) at generation time.
  switch (degree) {
    case 4: return {023, 031};
    case 5: return {045, 075};
    case 6: return {0103, 0147};
    case 7: return {0211, 0217};
    case 8: return {0435, 0551};
    case 9: return {01021, 01131};
    case 10: return {02011, 02415};
    case 11: return {04005, 04445};
    case 12: return {010123, 010151};
    default:
      throw std::invalid_argument("no generator pair for gold degree " + std::to_string(degree));
  }
}

std::vector<uint8_t> lfsr_sequence(uint32_t poly, int degree) {
  if (degree < 2 || degree > 20) throw std::invalid_argument("lfsr degree out of range");
  if (!(poly & 1u) || !(poly >> degree == 1u))
    throw std::invalid_argument("lfsr polynomial must have constant and leading terms");
  const int len = (1 << degree) - 1;
  std::vector<uint8_t> s(size_t(len) + size_t(degree), 1);  // all-ones seed
  for (int t = 0; t + degree < len + degree; ++t) {
    uint8_t nb = 0;
    for (int k = 0; k < degree; ++k)
      if ((poly >> k) & 1u) nb ^= s[size_t(t + k)];
    if (t + degree < int(s.size())) s[size_t(t + degree)] = nb;
  }
  s.resize(size_t(len));
  return s;
}

bool is_maximal_lfsr(uint32_t poly, int degree) {
  const int len = (1 << degree) - 1;
  // Walk the state register; maximal iff the seed state first recurs after len steps.
  uint32_t state = uint32_t(len);  // all ones
  const uint32_t seed = state;
  for (int t = 1; t <= len; ++t) {
    uint8_t nb = 0;
    for (int k = 0; k < degree; ++k)
      if ((poly >> k) & 1u) nb ^= uint8_t((state >> k) & 1u);
    state = (state >> 1) | (uint32_t(nb) << (degree - 1));
    if (state == seed) return t == len;
  }
  return false;
}

Sequence gen_gold(int degree, const GoldPair& pair, int index, int target_length) {
  if (degree < 4 || degree > 12) throw std::invalid_argument("gold degree must be in 4..12");
  if (!is_maximal_lfsr(pair.poly_a, degree) || !is_maximal_lfsr(pair.poly_b, degree))
    throw std::invalid_argument("gold generator polynomial is not maximal");
  const int len = (1 << degree) - 1;
  const int capacity = (1 << degree) + 1;
  if (index < 0 || index >= capacity)
    throw std::out_of_range("gold index out of range; capacity is " + std::to_string(capacity));
  if (target_length == 0) target_length = len;
  if (target_length < len || target_length >= 2 * len)
    throw std::invalid_argument("gold target length must be in [2^degree - 1, 2^(degree+1) - 2)");

  const std::vector<uint8_t> u = lfsr_sequence(pair.poly_a, degree);
  const std::vector<uint8_t> v = lfsr_sequence(pair.poly_b, degree);
  std::vector<uint8_t> bits(static_cast<size_t>(len));
  if (index == 0) {
    bits = u;
  } else if (index == 1) {
    bits = v;
  } else {
    const int k = index - 2;
    for (int i = 0; i < len; ++i) bits[size_t(i)] = uint8_t(u[size_t(i)] ^ v[size_t((i + k) % len)]);
  }

  Sequence s;
  s.family = SequenceFamily::Gold;
  s.family_index = index;
  s.chips.resize(target_length);
  const double scale = 1.0 / std::sqrt(double(target_length));
  for (int i = 0; i < target_length; ++i) {
    const uint8_t b = bits[size_t(i % len)];  // pad repeats the first chips
    s.chips[i] = cplx(b ? -scale : scale, 0.0);
  }
  return s;
}

Sequence gen_gold(int degree, int index, int target_length) {
  return gen_gold(degree, default_gold_pair(degree), index, target_length);
}

namespace {

// Largest degree whose natural Gold length fits the spreading length.
int gold_degree_for_length(int length) {
  int deg = 0;
  while ((1 << (deg + 1)) - 1 <= length && deg < 20) ++deg;
  return deg;
}

}  // namespace

int family_capacity(SequenceFamily family, int length) {
  if (length < 1) throw std::invalid_argument("spreading length must be >= 1");
  switch (family) {
    case SequenceFamily::Hadamard:
      if (!is_pow2(length))
        throw std::invalid_argument("hadamard spreading length must be a power of two");
      return length;
    case SequenceFamily::ZadoffChu:
      return length;  // cyclic shifts of the root-1 sequence
    case SequenceFamily::Gold: {
      const int deg = gold_degree_for_length(length);
      if (deg < 5)
        throw std::invalid_argument(
            "gold spreading needs length >= 31 (generator degree >= 5)");
      return (1 << deg) + 1;
    }
  }
  throw std::invalid_argument("unknown sequence family");
}

SequenceMatrix build_sequence_matrix(SequenceFamily family, int length, int n_mult) {
  const int capacity = family_capacity(family, length);
  if (n_mult < 1) throw std::invalid_argument("n_mult must be >= 1");
  if (n_mult > capacity)
    throw std::out_of_range("n_mult " + std::to_string(n_mult) + " exceeds " +
                            std::string(to_string(family)) + " capacity " +
                            std::to_string(capacity) + " at length " + std::to_string(length));
  SequenceMatrix m;
  m.family = family;
  m.cols.resize(length, n_mult);
  for (int j = 0; j < n_mult; ++j) {
    Sequence s;
    switch (family) {
      case SequenceFamily::Hadamard: s = gen_hadamard(length, j); break;
      case SequenceFamily::ZadoffChu: s = gen_zadoff_chu(length, 1, j); break;
      case SequenceFamily::Gold: s = gen_gold(gold_degree_for_length(length), j, length); break;
    }
    m.cols.col(j) = s.chips;
  }
  return m;
}

void write_sequence_csv(const SequenceMatrix& m, std::ostream& os) {
  os << "member,chip,re,im\n";
  char buf[96];
  for (int j = 0; j < m.n_mult(); ++j) {
    for (int i = 0; i < m.length(); ++i) {
      const cplx c = m.cols(i, j);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", j, i, c.real(), c.imag());
      os << buf;
    }
  }
}

}  // namespace otfsisac
