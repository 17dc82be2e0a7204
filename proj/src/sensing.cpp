#include "otfsisac/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "otfsisac/parallel.hpp"

namespace otfsisac {

ExpandedTx build_expanded_tx(const DdFrame& frame) {
  const int M = frame.M;
  const int N = frame.N;
  const int MN = M * N;
  ExpandedTx out;
  out.M = M;
  out.N = N;
  out.xx.resize(MN, MN);

  // Phase factors e^{j 2 pi k / MN}; the exponent nu2 * (t1 - t2) is reduced mod MN.
  std::vector<cplx> cis_tab(static_cast<size_t>(MN));
  for (int k = 0; k < MN; ++k) {
    const double ang = 2.0 * kPi * double(k) / double(MN);
    cis_tab[size_t(k)] = cplx(std::cos(ang), std::sin(ang));
  }

#pragma omp parallel for schedule(static)
  for (int col = 0; col < MN; ++col) {
    const int t2 = col % M;
    const int nu2 = col / M;
    for (int nu1 = 0; nu1 < N; ++nu1) {
      const int dnu = ((nu1 - nu2) % N + N) % N;
      for (int t1 = 0; t1 < M; ++t1) {
        const int dt = t1 - t2;
        const int ph = ((nu2 * dt) % MN + MN) % MN;
        out.xx(t1 + Eigen::Index(M) * nu1, col) =
            frame.grid((dt % M + M) % M, dnu) * cis_tab[size_t(ph)];
      }
    }
  }
  return out;
}

CVec data_cancellation(const ExpandedTx& xx, const CVec& y) {
  if (xx.xx.rows() != y.size()) throw std::length_error("signal does not match the grid");
  CVec h(xx.xx.cols());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < int(xx.xx.cols()); ++i) h[i] = xx.xx.col(i).dot(y);
  return h;
}

std::vector<IntegerPeak> strongest_peaks(const CVec& h, int M, int N, int count) {
  if (h.size() != Eigen::Index(M) * N) throw std::length_error("estimate does not fill the grid");
  if (count < 1 || count > M * N) throw std::invalid_argument("peak count out of range");
  std::vector<int> idx(size_t(M) * size_t(N));
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + count, idx.end(), [&](int a, int b) {
    const double pa = std::norm(h[a]);
    const double pb = std::norm(h[b]);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  std::vector<IntegerPeak> peaks;
  peaks.reserve(size_t(count));
  for (int i = 0; i < count; ++i)
    peaks.push_back({idx[size_t(i)] % M, idx[size_t(i)] / M, std::norm(h[idx[size_t(i)]])});
  return peaks;
}

DdChannel build_unit_channel(double tau_bins, double nu_bins, const GridConfig& grid) {
  PathSet ps;
  ps.paths.push_back({cplx(1.0, 0.0), tau_bins, nu_bins, PathRole::Target});
  return build_dd_channel(ps, grid, ChannelBuild::Fractional);
}

double ml_metric(const CVec& x, const CVec& y, double tau_bins, double nu_bins,
                 const GridConfig& grid) {
  double tau = tau_bins;
  while (tau < 0.0) tau += grid.M;
  while (tau >= double(grid.M)) tau -= grid.M;
  const DdChannel h = build_unit_channel(tau, nu_bins, grid);
  const CVec w = h.apply(x);
  const double den = w.squaredNorm();
  if (den <= 0.0) throw std::runtime_error("degenerate refinement hypothesis");
  return std::norm(w.dot(y)) / den;
}

std::vector<RefinedEstimate> ml_refine(const DdFrame& tx, const CVec& y,
                                       const std::vector<IntegerPeak>& coarse, int n_ml,
                                       const GridConfig& grid) {
  if (n_ml < 1) throw std::invalid_argument("refinement factor must be >= 1");
  const int side = 2 * n_ml + 1;
  std::vector<RefinedEstimate> out;
  out.reserve(coarse.size());

  for (const IntegerPeak& peak : coarse) {
    std::vector<double> metrics(size_t(side) * size_t(side));
#pragma omp parallel for schedule(static)
    for (int q = 0; q < side * side; ++q) {
      const int i = q / side;  // tau offset index
      const int k = q % side;  // nu offset index
      const double tau = double(peak.tau) + double(i - n_ml) / double(n_ml);
      const double nu = double(peak.nu) + double(k - n_ml) / double(n_ml);
      metrics[size_t(q)] = ml_metric(tx.vec, y, tau, nu, grid);
    }
    // Serial scan in (tau, nu)-ascending order; strict > keeps the lowest tie.
    int best = 0;
    for (int q = 1; q < side * side; ++q)
      if (metrics[size_t(q)] > metrics[size_t(best)]) best = q;
    RefinedEstimate est;
    est.tau_bins = double(peak.tau) + double(best / side - n_ml) / double(n_ml);
    est.nu_bins = double(peak.nu) + double(best % side - n_ml) / double(n_ml);
    est.range_m = range_from_delay(est.tau_bins, grid);
    est.velocity_mps = velocity_from_doppler(est.nu_bins, grid);
    out.push_back(est);
  }
  return out;
}

double range_from_delay(double tau_bins, const GridConfig& grid) {
  return tau_bins * kC0 / (2.0 * grid.M * grid.delta_f);
}

double velocity_from_doppler(double nu_bins, const GridConfig& grid) {
  return nu_bins * grid.delta_f * kC0 / (2.0 * grid.N * grid.f_c);
}

Eigen::MatrixXd imaging_surface(const CVec& h, int M, int N) {
  if (h.size() != Eigen::Index(M) * N) throw std::length_error("estimate does not fill the grid");
  Eigen::MatrixXd s(M, N);
  for (int nu = 0; nu < N; ++nu)
    for (int tau = 0; tau < M; ++tau) s(tau, nu) = std::norm(h[tau + Eigen::Index(M) * nu]);
  return s;
}

std::vector<std::pair<double, double>> squared_errors(
    const std::vector<RefinedEstimate>& estimates, const std::vector<RangeVelocity>& truths) {
  if (estimates.size() != truths.size())
    throw std::length_error("estimate and truth counts disagree");
  std::vector<bool> used(estimates.size(), false);
  std::vector<std::pair<double, double>> errs;
  errs.reserve(truths.size());
  for (const RangeVelocity& t : truths) {
    int pick = -1;
    double best = 0.0;
    for (size_t j = 0; j < estimates.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(estimates[j].range_m - t.range_m);
      if (pick < 0 || d < best) {
        pick = int(j);
        best = d;
      }
    }
    used[size_t(pick)] = true;
    const double dr = estimates[size_t(pick)].range_m - t.range_m;
    const double dv = estimates[size_t(pick)].velocity_mps - t.velocity_mps;
    errs.emplace_back(dr * dr, dv * dv);
  }
  return errs;
}

}  // namespace otfsisac
