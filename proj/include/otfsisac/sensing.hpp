#pragma once

#include <utility>
#include <vector>

#include "otfsisac/channel.hpp"
#include "otfsisac/frame.hpp"
#include "otfsisac/types.hpp"

namespace otfsisac {

/// MN x MN expanded transmit matrix: column tau2 + M * nu2 is the noiseless
/// received vector a unit path at integer bins (tau2, nu2) would produce, so
/// y == xx * h holds exactly for integer-bin channels.
struct ExpandedTx {
  int M = 0;
  int N = 0;
  CMat xx;
};

ExpandedTx build_expanded_tx(const DdFrame& frame);

// Matched-filter channel estimate h = xx^H y.
CVec data_cancellation(const ExpandedTx& xx, const CVec& y);

struct IntegerPeak {
  int tau = 0;
  int nu = 0;
  double power = 0.0;
};

// The `count` strongest distinct bins of |h|^2, strongest first; equal powers
// break toward the lower vector index (lower tau, then lower nu).
std::vector<IntegerPeak> strongest_peaks(const CVec& h, int M, int N, int count);

// Channel of a single unit-gain path; the hypothesis operator for refinement.
DdChannel build_unit_channel(double tau_bins, double nu_bins, const GridConfig& grid);

// Refinement objective |(H x)^H y|^2 / ||H x||^2 for a unit path at
// (tau, nu). Invariant under tau -> tau + M; tau is wrapped into [0, M).
double ml_metric(const CVec& x, const CVec& y, double tau_bins, double nu_bins,
                 const GridConfig& grid);

struct RefinedEstimate {
  double tau_bins = 0.0;  // as constructed from the coarse bin, unwrapped
  double nu_bins = 0.0;
  double range_m = 0.0;
  double velocity_mps = 0.0;
};

// Per-peak grid search over coarse +- k / n_ml for k in [-n_ml, n_ml] on both
// axes; the metric-maximizing pair wins, ties to the lowest (tau, then nu).
std::vector<RefinedEstimate> ml_refine(const DdFrame& tx, const CVec& y,
                                       const std::vector<IntegerPeak>& coarse, int n_ml,
                                       const GridConfig& grid);

// Inverses of the two-way propagation index maps.
double range_from_delay(double tau_bins, const GridConfig& grid);
double velocity_from_doppler(double nu_bins, const GridConfig& grid);

// |h|^2 arranged as the M x N delay-Doppler surface (rows tau, columns nu).
Eigen::MatrixXd imaging_surface(const CVec& h, int M, int N);

struct RangeVelocity {
  double range_m = 0.0;
  double velocity_mps = 0.0;
};

// Pairs each truth (in order) with the nearest-in-range unused estimate and
// returns the per-truth squared errors {range^2, velocity^2}.
std::vector<std::pair<double, double>> squared_errors(
    const std::vector<RefinedEstimate>& estimates, const std::vector<RangeVelocity>& truths);

}  // namespace otfsisac
