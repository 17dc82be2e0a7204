#include "otfsisac/receiver.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "otfsisac/parallel.hpp"

namespace otfsisac {

double ebno_to_n0(double ebno_db, int bits_per_symbol) {
  if (bits_per_symbol < 1) throw std::domain_error("bits per symbol must be >= 1");
  return 1.0 / (double(bits_per_symbol) * std::pow(10.0, ebno_db / 10.0));
}

CMat mmse_matrix(const DdChannel& chan, const SpreadingPlan& plan, double n0) {
  if (n0 < 0.0) throw std::domain_error("noise power must be >= 0");
  const Eigen::Index mn = plan.expander.rows();
  const Eigen::Index ns = plan.expander.cols();
  if (mn != Eigen::Index(chan.M()) * chan.N())
    throw std::length_error("plan and channel grids disagree");

  CMat a(mn, ns);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < int(ns); ++j) a.col(j) = chan.apply(plan.expander.col(j));

  CMat normal = a * a.adjoint();
  normal.diagonal().array() += n0;
  const Eigen::LLT<CMat> llt(normal);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("mmse normal matrix is not positive definite");
  return llt.solve(a);
}

DetectionResult detect(const CMat& g, const CVec& y) {
  if (g.rows() != y.size()) throw std::length_error("equalizer and signal disagree in size");
  DetectionResult r;
  r.symbols = g.adjoint() * y;
  r.bits = demap_qpsk(r.symbols);
  return r;
}

uint64_t count_bit_errors(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  if (a.size() != b.size()) throw std::length_error("bit vectors disagree in size");
  uint64_t errors = 0;
  for (size_t i = 0; i < a.size(); ++i) errors += a[i] != b[i] ? 1 : 0;
  return errors;
}

}  // namespace otfsisac
