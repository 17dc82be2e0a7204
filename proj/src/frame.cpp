#include "otfsisac/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace otfsisac {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::PureOtfs: return "otfs";
    case Scheme::DelayCdma: return "dl_cdma";
    case Scheme::DopplerCdma: return "dp_cdma";
    case Scheme::DelayDopplerCdma: return "dd_cdma";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "otfs") return Scheme::PureOtfs;
  if (s == "dl_cdma") return Scheme::DelayCdma;
  if (s == "dp_cdma") return Scheme::DopplerCdma;
  if (s == "dd_cdma") return Scheme::DelayDopplerCdma;
  throw std::invalid_argument("unknown scheme: " + s);
}

CVec map_bits_qpsk(const std::vector<uint8_t>& bits) {
  if (bits.size() % 2 != 0) throw std::length_error("qpsk needs an even bit count");
  const double a = 1.0 / std::sqrt(2.0);
  CVec s(bits.size() / 2);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double re = bits[size_t(2 * k)] ? -a : a;
    const double im = bits[size_t(2 * k + 1)] ? -a : a;
    s[k] = cplx(re, im);
  }
  return s;
}

std::vector<uint8_t> demap_qpsk(const CVec& symbols) {
  std::vector<uint8_t> bits(size_t(symbols.size()) * 2);
  for (Eigen::Index k = 0; k < symbols.size(); ++k) {
    bits[size_t(2 * k)] = symbols[k].real() < 0.0 ? 1 : 0;
    bits[size_t(2 * k + 1)] = symbols[k].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

CVec vectorize(const CMat& grid) {
  CVec v(grid.size());
  Eigen::Index i = 0;
  for (Eigen::Index n = 0; n < grid.cols(); ++n)
    for (Eigen::Index m = 0; m < grid.rows(); ++m) v[i++] = grid(m, n);
  return v;
}

CMat devectorize(const CVec& v, int M, int N) {
  if (v.size() != Eigen::Index(M) * N) throw std::length_error("vector does not fill the grid");
  CMat g(M, N);
  Eigen::Index i = 0;
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < M; ++m) g(m, n) = v[i++];
  return g;
}

int spreading_length(const GridConfig& grid, Scheme scheme) {
  switch (scheme) {
    case Scheme::PureOtfs: return 0;
    case Scheme::DelayCdma: return grid.M;
    case Scheme::DopplerCdma: return grid.N;
    case Scheme::DelayDopplerCdma: return grid.size();
  }
  throw std::invalid_argument("unknown scheme");
}

int symbols_per_frame(const GridConfig& grid, Scheme scheme, int n_mult) {
  switch (scheme) {
    case Scheme::PureOtfs: return grid.size();
    case Scheme::DelayCdma: return grid.N * n_mult;
    case Scheme::DopplerCdma: return grid.M * n_mult;
    case Scheme::DelayDopplerCdma: return n_mult;
  }
  throw std::invalid_argument("unknown scheme");
}

SpreadingPlan build_spreading_plan(const GridConfig& grid, Scheme scheme,
                                   const SequenceMatrix* seq) {
  validate_grid(grid);
  SpreadingPlan plan;
  plan.scheme = scheme;
  plan.grid = grid;
  const int M = grid.M;
  const int N = grid.N;
  const int MN = grid.size();

  if (scheme == Scheme::PureOtfs) {
    if (seq != nullptr) throw std::invalid_argument("pure OTFS takes no sequence matrix");
    plan.n_mult = 0;
    plan.n_s = MN;
    plan.expander = CMat::Identity(MN, MN);
    return plan;
  }

  if (seq == nullptr) throw std::invalid_argument("CDMA schemes need a sequence matrix");
  const int want = spreading_length(grid, scheme);
  if (seq->length() != want)
    throw std::invalid_argument("sequence length " + std::to_string(seq->length()) +
                                " does not match spreading length " + std::to_string(want));
  const int k = seq->n_mult();
  if (k > want)
    throw std::out_of_range("n_mult " + std::to_string(k) + " exceeds the spreading axis size " +
                            std::to_string(want));
  plan.n_mult = k;
  plan.n_s = symbols_per_frame(grid, scheme, k);
  plan.expander = CMat::Zero(MN, plan.n_s);

  switch (scheme) {
    case Scheme::DelayCdma:
      // Symbol (n, j) rides sequence j along the delay axis of Doppler bin n.
      for (int n = 0; n < N; ++n)
        for (int j = 0; j < k; ++j)
          for (int m = 0; m < M; ++m)
            plan.expander(n * M + m, n * k + j) = seq->cols(m, j);
      break;
    case Scheme::DopplerCdma:
      // Symbol (m, j) rides sequence j along the Doppler axis of delay bin m.
      for (int m = 0; m < M; ++m)
        for (int j = 0; j < k; ++j)
          for (int n = 0; n < N; ++n)
            plan.expander(n * M + m, m * k + j) = seq->cols(n, j);
      break;
    case Scheme::DelayDopplerCdma:
      // Symbol j rides sequence j across the whole vectorized grid.
      plan.expander = seq->cols;
      break;
    default:
      throw std::invalid_argument("unknown scheme");
  }
  return plan;
}

SpreadingPlan make_plan(const GridConfig& grid, Scheme scheme, SequenceFamily family,
                        int n_mult) {
  if (scheme == Scheme::PureOtfs) return build_spreading_plan(grid, scheme, nullptr);
  const int len = spreading_length(grid, scheme);
  const SequenceMatrix seq = build_sequence_matrix(family, len, n_mult);
  return build_spreading_plan(grid, scheme, &seq);
}

DdFrame spread(const SpreadingPlan& plan, const CVec& s) {
  if (s.size() != plan.n_s) throw std::length_error("symbol count does not match the plan");
  DdFrame f;
  f.M = plan.grid.M;
  f.N = plan.grid.N;
  f.vec = plan.expander * s;
  f.grid = devectorize(f.vec, f.M, f.N);
  return f;
}

}  // namespace otfsisac
