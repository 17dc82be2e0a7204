#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "otfsisac/sequences.hpp"

using namespace otfsisac;

namespace {

// Independent Sylvester construction: H_{2n} = [[H, H], [H, -H]] from H_1 = [1].
Eigen::MatrixXd sylvester(int order) {
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < order) {
    Eigen::MatrixXd next(2 * h.rows(), 2 * h.cols());
    next << h, h, h, -h;
    h = next;
  }
  return h;
}

}  // namespace

TEST_CASE("hadamard matches the sylvester recursion") {
  const Eigen::MatrixXd oracle = sylvester(16);
  for (int idx = 0; idx < 16; ++idx) {
    const Sequence s = gen_hadamard(16, idx);
    REQUIRE(s.chips.size() == 16);
    for (int j = 0; j < 16; ++j) {
      CHECK(s.chips[j].real() * 4.0 == doctest::Approx(oracle(idx, j)).epsilon(1e-15));
      CHECK(s.chips[j].imag() == 0.0);
    }
  }
}

TEST_CASE("hadamard member zero is the all-ones row") {
  const Sequence s = gen_hadamard(64, 0);
  for (const cplx& c : s.chips) CHECK(c == cplx(0.125, 0.0));
}

TEST_CASE("hadamard rejects non-power-of-two orders and bad indices") {
  CHECK_THROWS_AS(gen_hadamard(12, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_hadamard(16, 16), std::out_of_range);
  CHECK_THROWS_AS(gen_hadamard(16, -1), std::out_of_range);
}

TEST_CASE("zadoff-chu frozen chips at length 4, root 1") {
  const Sequence s = gen_zadoff_chu(4, 1, 0);
  const double r = 0.35355339059327379;  // cos(pi/4) / 2
  CHECK(std::abs(s.chips[0] - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(s.chips[1] - cplx(r, -r)) < 1e-15);
  CHECK(std::abs(s.chips[2] - cplx(-0.5, 0.0)) < 1e-15);
  CHECK(std::abs(s.chips[3] - cplx(r, -r)) < 1e-15);
}

TEST_CASE("zadoff-chu odd length uses the n(n+1) exponent") {
  const Sequence s = gen_zadoff_chu(3, 1, 0);
  // chip 1 = exp(-j pi 1*2/3)/sqrt(3)
  CHECK(std::abs(s.chips[1] - cplx(-0.28867513459481275, -0.5)) < 1e-14);
}

TEST_CASE("zadoff-chu is constant modulus and shift-orthogonal") {
  for (int len : {16, 63}) {
    const SequenceMatrix m = build_sequence_matrix(SequenceFamily::ZadoffChu, len, len);
    const double mod = 1.0 / std::sqrt(double(len));
    for (int k = 0; k < len; ++k)
      for (int j = 0; j < len; ++j) CHECK(std::abs(m.cols(j, k)) == doctest::Approx(mod).epsilon(1e-12));
    const CMat gram = m.cols.adjoint() * m.cols;
    CHECK((gram - CMat::Identity(len, len)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("zadoff-chu degenerate and invalid parameters") {
  const Sequence s = gen_zadoff_chu(1, 1, 0);
  REQUIRE(s.chips.size() == 1);
  CHECK(s.chips[0] == cplx(1.0, 0.0));
  CHECK_THROWS_AS(gen_zadoff_chu(4, 2, 0), std::invalid_argument);  // gcd(2,4) != 1
  CHECK_THROWS_AS(gen_zadoff_chu(4, 1, 4), std::out_of_range);
}

TEST_CASE("lfsr maximality check accepts and rejects correctly") {
  CHECK(is_maximal_lfsr(045, 5));
  CHECK(is_maximal_lfsr(0103, 6));
  // x^5+x^4+x^3+x^2+x+1 is reducible, so its register cannot reach full period.
  CHECK_FALSE(is_maximal_lfsr(077, 5));
}

TEST_CASE("gold members zero and one are the generating m-sequences") {
  const GoldPair pair = default_gold_pair(5);
  const auto u = lfsr_sequence(pair.poly_a, 5);
  const auto v = lfsr_sequence(pair.poly_b, 5);
  const Sequence g0 = gen_gold(5, 0, 31);
  const Sequence g1 = gen_gold(5, 1, 31);
  const double a = 1.0 / std::sqrt(31.0);
  for (int i = 0; i < 31; ++i) {
    CHECK(g0.chips[i].real() == doctest::Approx(u[size_t(i)] ? -a : a));
    CHECK(g1.chips[i].real() == doctest::Approx(v[size_t(i)] ? -a : a));
  }
  // Member 2+k is u xor a k-shifted v.
  const Sequence g4 = gen_gold(5, 4, 31);
  for (int i = 0; i < 31; ++i) {
    const int bit = u[size_t(i)] ^ v[size_t((i + 2) % 31)];
    CHECK(g4.chips[i].real() == doctest::Approx(bit ? -a : a));
  }
}

TEST_CASE("gold cross-correlations are three-valued at degree 5") {
  // Preferred pair at odd degree: values {-t, t-2, -1} with t = 1 + 2^((n+1)/2) = 9.
  const int len = 31;
  std::vector<std::vector<int>> codes;
  for (int idx = 0; idx < 33; ++idx) {
    const Sequence s = gen_gold(5, idx, len);
    std::vector<int> bits(len);
    for (int i = 0; i < len; ++i) bits[size_t(i)] = s.chips[i].real() > 0 ? 1 : -1;
    codes.push_back(bits);
  }
  for (size_t a = 0; a < codes.size(); ++a)
    for (size_t b = a + 1; b < codes.size(); ++b)
      for (int lag = 0; lag < len; ++lag) {
        int corr = 0;
        for (int i = 0; i < len; ++i) corr += codes[a][size_t(i)] * codes[b][size_t((i + lag) % len)];
        const bool ok = corr == -9 || corr == 7 || corr == -1;
        REQUIRE(ok);
      }
}

TEST_CASE("gold padding repeats the leading chips") {
  const Sequence base = gen_gold(5, 7, 31);
  const Sequence padded = gen_gold(5, 7, 32);
  // Same sign pattern, renormalized to the padded length.
  const double ratio = std::sqrt(31.0 / 32.0);
  for (int i = 0; i < 31; ++i)
    CHECK(padded.chips[i].real() == doctest::Approx(base.chips[i].real() * ratio));
  CHECK(padded.chips[31].real() == doctest::Approx(base.chips[0].real() * ratio));
}

TEST_CASE("gold parameter validation") {
  CHECK_THROWS_AS(gen_gold(5, 33, 31), std::out_of_range);            // capacity 2^5 + 1
  CHECK_THROWS_AS(gen_gold(5, 0, 62), std::invalid_argument);          // >= 2 * 31 needs degree 6
  CHECK_THROWS_AS(gen_gold(3, 0, 7), std::invalid_argument);           // no table entry
  CHECK_THROWS_AS(gen_gold(5, GoldPair{044, 075}, 0, 31), std::invalid_argument);  // even poly
}

TEST_CASE("family capacities") {
  CHECK(family_capacity(SequenceFamily::Hadamard, 64) == 64);
  CHECK(family_capacity(SequenceFamily::ZadoffChu, 63) == 63);
  CHECK(family_capacity(SequenceFamily::Gold, 63) == 65);    // 2^6 + 1
  CHECK(family_capacity(SequenceFamily::Gold, 4096) == 4097);  // degree 12, padded
  CHECK_THROWS_AS(family_capacity(SequenceFamily::Hadamard, 12), std::invalid_argument);
  CHECK_THROWS_WITH_AS(family_capacity(SequenceFamily::Gold, 16), doctest::Contains(">= 31"),
                       std::invalid_argument);
}

TEST_CASE("sequence matrix columns are unit norm for every family") {
  for (auto [family, len] : {std::pair{SequenceFamily::Hadamard, 64},
                             std::pair{SequenceFamily::ZadoffChu, 63},
                             std::pair{SequenceFamily::Gold, 64}}) {
    const SequenceMatrix m = build_sequence_matrix(family, len, 8);
    REQUIRE(m.cols.rows() == len);
    REQUIRE(m.cols.cols() == 8);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(m.cols.col(k).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("sequence matrix rejects over-capacity requests by name") {
  CHECK_THROWS_WITH_AS(build_sequence_matrix(SequenceFamily::Hadamard, 16, 17),
                       doctest::Contains("16"), std::out_of_range);
}

TEST_CASE("sequence csv dump has the documented header") {
  const SequenceMatrix m = build_sequence_matrix(SequenceFamily::Hadamard, 4, 2);
  std::ostringstream ss;
  write_sequence_csv(m, ss);
  const std::string text = ss.str();
  CHECK(text.rfind("member,chip,re,im\n", 0) == 0);
  // 2 members x 4 chips plus the header.
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}
