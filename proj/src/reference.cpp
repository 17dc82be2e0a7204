#include "otfsisac/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace otfsisac::ref {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

cplx cis(double ang) { return cplx(std::cos(ang), std::sin(ang)); }

}  // namespace

CMat dd_channel_dense(const PathSet& ps, const GridConfig& grid, ChannelBuild mode) {
  const int M = grid.M;
  const int N = grid.N;
  const double MN = double(M) * double(N);

  bool all_integer = true;
  for (const Path& p : ps.paths) {
    if (!(p.delay_bins >= 0.0 && p.delay_bins < double(M)))
      throw std::domain_error("path delay outside [0, M)");
    all_integer = all_integer && (p.delay_bins == std::floor(p.delay_bins));
  }
  if (mode == ChannelBuild::Auto)
    mode = all_integer ? ChannelBuild::Integer : ChannelBuild::Fractional;
  if (mode == ChannelBuild::Integer && !all_integer)
    throw std::invalid_argument("integer channel build given fractional delays");

  const CMat fm = unitary_dft(M);
  const CMat fn = unitary_dft(N);

  CMat hx = CMat::Zero(Eigen::Index(M) * N, Eigen::Index(M) * N);
  for (int n = 0; n < N; ++n) {
    CMat block(M, M);
    if (mode == ChannelBuild::Integer) {
      CMat hn = CMat::Zero(M, M);
      for (const Path& p : ps.paths) {
        const int ti = int(p.delay_bins);
        for (int m = 0; m < M; ++m)
          hn(m, ((m - ti) % M + M) % M) +=
              p.gain * cis(2.0 * kPi * p.doppler_bins * (double(n) * M + m - ti) / MN);
      }
      block = fm * hn * fm.adjoint();
    } else {
      CMat bn = CMat::Zero(M, M);
      for (const Path& p : ps.paths)
        for (int m = 0; m < M; ++m)
          for (int mb = 0; mb < M; ++mb)
            bn(m, mb) += p.gain *
                         cis(2.0 * kPi * p.doppler_bins * (double(n) * M + m - p.delay_bins) / MN) *
                         cis(2.0 * kPi * (double(m) - p.delay_bins) * mb / double(M)) /
                         std::sqrt(double(M));
      block = fm * bn;
    }
    hx.block(Eigen::Index(n) * M, Eigen::Index(n) * M, M, M) = block;
  }

  return kron(fn, fm.adjoint()) * hx * kron(fn.adjoint(), fm);
}

CMat expanded_tx(const DdFrame& frame) {
  const int M = frame.M;
  const int N = frame.N;
  CMat xx(Eigen::Index(M) * N, Eigen::Index(M) * N);
  for (int nu2 = 0; nu2 < N; ++nu2)
    for (int t2 = 0; t2 < M; ++t2)
      for (int nu1 = 0; nu1 < N; ++nu1)
        for (int t1 = 0; t1 < M; ++t1) {
          const int dt = t1 - t2;
          const int dn = nu1 - nu2;
          xx(t1 + Eigen::Index(M) * nu1, t2 + Eigen::Index(M) * nu2) =
              frame.grid((dt % M + M) % M, (dn % N + N) % N) *
              cis(2.0 * kPi * double(nu2) * double(dt) / (double(M) * N));
        }
  return xx;
}

CVec data_cancellation(const CMat& xx, const CVec& y) {
  if (xx.rows() != y.size()) throw std::length_error("dimension mismatch");
  CVec h = CVec::Zero(xx.cols());
  for (Eigen::Index i = 0; i < xx.cols(); ++i) {
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < xx.rows(); ++j) acc += std::conj(xx(j, i)) * y[j];
    h[i] = acc;
  }
  return h;
}

double ml_metric(const CVec& x, const CVec& y, double tau_bins, double nu_bins,
                 const GridConfig& grid) {
  PathSet ps;
  ps.paths.push_back({cplx(1.0, 0.0), tau_bins, nu_bins, PathRole::Target});
  const CMat h = dd_channel_dense(ps, grid, ChannelBuild::Fractional);
  const CVec w = h * x;
  const cplx corr = w.dot(y);  // w^H y
  const double den = w.squaredNorm();
  return std::norm(corr) / den;
}

}  // namespace otfsisac::ref
