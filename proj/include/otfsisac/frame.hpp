#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otfsisac/sequences.hpp"
#include "otfsisac/types.hpp"

namespace otfsisac {

enum class Scheme { PureOtfs, DelayCdma, DopplerCdma, DelayDopplerCdma };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);  // std::invalid_argument on unknown name

inline constexpr int kBitsPerSymbol = 2;  // QPSK throughout

// Gray-mapped QPSK, unit symbol energy: bit pair (b0, b1) -> ((1 - 2 b0) +
// j (1 - 2 b1)) / sqrt(2). bits.size() must be even (framing error otherwise).
CVec map_bits_qpsk(const std::vector<uint8_t>& bits);

// Hard decision, nearest constellation point; a tie on either axis resolves
// toward the (0, 0)-quadrant point, so b = (component < 0).
std::vector<uint8_t> demap_qpsk(const CVec& symbols);

// Column-stacking between the M x N delay-Doppler grid and its MN vector:
// vec[n * M + m] == grid(m, n).
CVec vectorize(const CMat& grid);
CMat devectorize(const CVec& v, int M, int N);

/// One transmitted frame in both layouts (kept consistent by construction).
struct DdFrame {
  int M = 0;
  int N = 0;
  CMat grid;  // M x N
  CVec vec;   // MN, column-stacked grid
};

/// How n_s data symbols occupy the grid: x = expander * s. The expander has
/// unit-norm columns; pure OTFS uses the identity (one symbol per bin).
struct SpreadingPlan {
  Scheme scheme = Scheme::PureOtfs;
  GridConfig grid;
  int n_mult = 0;  // multiplexed sequences (0 for pure OTFS)
  int n_s = 0;     // data symbols per frame
  CMat expander;   // MN x n_s

  // Spectral efficiency in bits per channel use.
  double throughput() const { return double(kBitsPerSymbol) * n_s / double(grid.size()); }
};

// Assembles the expander for a scheme. `seq` supplies the sequence matrix for
// the CDMA schemes (its length must match the spreading axis: M for delay,
// N for Doppler, MN for delay-Doppler) and must be null for pure OTFS.
SpreadingPlan build_spreading_plan(const GridConfig& grid, Scheme scheme,
                                   const SequenceMatrix* seq);

// Convenience: builds the sequence matrix for the scheme's spreading length.
SpreadingPlan make_plan(const GridConfig& grid, Scheme scheme, SequenceFamily family,
                        int n_mult);

// Spreading length the scheme demands and the symbol count a plan yields.
int spreading_length(const GridConfig& grid, Scheme scheme);
int symbols_per_frame(const GridConfig& grid, Scheme scheme, int n_mult);

// x = expander * s, plus the grid layout. s.size() must equal plan.n_s.
DdFrame spread(const SpreadingPlan& plan, const CVec& s);

}  // namespace otfsisac
