#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otfsisac/channel.hpp"
#include "otfsisac/frame.hpp"
#include "otfsisac/sequences.hpp"
#include "otfsisac/types.hpp"

namespace otfsisac {

/// BER sweeps stop a point once either limit is reached, whichever first.
struct BerStop {
  uint64_t min_bit_errors = 600;
  uint64_t max_bits = 10'000'000;
};

struct BerConfig {
  GridConfig grid;
  Scheme scheme = Scheme::DelayDopplerCdma;
  SequenceFamily family = SequenceFamily::ZadoffChu;  // ignored for pure OTFS
  int n_mult = 1;                                     // ignored for pure OTFS
  CommChannelParams comm;
  std::vector<double> ebno_db;
  BerStop stop;
  uint64_t seed = 1;
  int workers = 0;           // > 0 pins the OpenMP thread count
  bool record_timing = true;  // false writes 0.000 in the seconds column
};

struct BerRow {
  double ebno_db = 0.0;
  double ber = 0.0;
  uint64_t bits = 0;
  uint64_t errors = 0;
  uint64_t frames = 0;
  double seconds = 0.0;
};

struct RmseConfig {
  GridConfig grid;
  Scheme scheme = Scheme::DelayCdma;
  SequenceFamily family = SequenceFamily::ZadoffChu;
  int n_mult = 1;
  SenChannelParams sen;
  std::vector<double> ebno_db;
  uint64_t frames_per_point = 4000;
  int n_ml = 8;
  uint64_t seed = 1;
  int workers = 0;
  bool record_timing = true;
  bool redraw_clutter = true;  // false freezes the clutter per sweep point
};

struct RmseRow {
  double ebno_db = 0.0;
  double rmse_range_m = 0.0;
  double rmse_velocity_mps = 0.0;
  double crb_range_m = 0.0;
  double crb_velocity_mps = 0.0;
  uint64_t frames = 0;
  double seconds = 0.0;
};

// Frame f of sweep point e draws every random quantity, in a fixed documented
// order, from the stream derive_stream(seed, e, f): channel first, then data
// bits, then noise. Rows are therefore bit-identical for any worker count.
// Numeric failures carry the (seed, point, frame) coordinates in the message.
std::vector<BerRow> run_ber_sweep(const BerConfig& cfg);
std::vector<RmseRow> run_rmse_sweep(const RmseConfig& cfg);

// CSV serializations, fixed headers and formats.
std::string ber_csv(const std::vector<BerRow>& rows);
std::string rmse_csv(const std::vector<RmseRow>& rows);

// Atomic write: stage to <path>.tmp in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace otfsisac
