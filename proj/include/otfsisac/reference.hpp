#pragma once

#include <vector>

#include "otfsisac/channel.hpp"
#include "otfsisac/frame.hpp"
#include "otfsisac/types.hpp"

// Serial, obviously-correct counterparts of the parallel kernels. They favor
// directness over speed (explicit Kronecker products, naive loops) and exist
// so tests and the kernel benchmark can compare the fast paths against an
// independent route. Desk-scale grids only: the dense forms are O((MN)^2).
namespace otfsisac::ref {

// Dense channel matrix assembled literally: (Fn (x) Fm^H) blockdiag (Fn^H (x) Fm),
// with the blocks built entry by entry from the path set.
CMat dd_channel_dense(const PathSet& ps, const GridConfig& grid, ChannelBuild mode);

// Kronecker product, textbook layout.
CMat kron(const CMat& a, const CMat& b);

// Expanded transmit matrix, straight double loop, no phase tables.
CMat expanded_tx(const DdFrame& frame);

// h = X^H y by explicit conjugated accumulation.
CVec data_cancellation(const CMat& xx, const CVec& y);

// Refinement metric evaluated through the dense channel of a unit-gain path.
double ml_metric(const CVec& x, const CVec& y, double tau_bins, double nu_bins,
                 const GridConfig& grid);

}  // namespace otfsisac::ref
