#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otfsisac/channel.hpp"
#include "otfsisac/frame.hpp"
#include "otfsisac/montecarlo.hpp"
#include "otfsisac/sequences.hpp"
#include "otfsisac/types.hpp"

namespace otfsisac {

enum class Command { Ber, Rmse, Crb, DumpSeq, DumpImaging };

const char* to_string(Command c);

/// Everything one invocation needs. Resolution order: preset, then config
/// file, then key=value overrides; later sources win field by field.
struct Manifest {
  GridConfig grid{64, 64, 120.0e3, 40.0e9};
  Scheme scheme = Scheme::DelayDopplerCdma;
  std::vector<SequenceFamily> families{SequenceFamily::Hadamard, SequenceFamily::ZadoffChu,
                                       SequenceFamily::Gold};
  std::string n_mult = "full";  // "full", "half", or a positive integer
  bool otfs_baseline = true;    // pair every family run with an unspread run
  CommChannelParams comm;
  SenChannelParams sen;
  std::vector<double> ebno_db{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  BerStop stop;
  uint64_t frames_per_point = 4000;
  int n_ml = 8;
  uint64_t seed = 1;
  int workers = 0;
  bool record_timing = true;
  bool redraw_clutter = true;
  std::string out_dir = "out";
};

// Named parameter bundles. "table3" is the communication scenario (Rician
// fading, full-load delay-Doppler spreading, 0..20 dB sweep); "table4" is the
// sensing scenario (one 500 m / 200 m/s target, full-load delay spreading,
// -20..0 dB sweep with maximum-likelihood refinement).
Manifest preset(const std::string& name);  // std::invalid_argument on unknown name

// Parses a JSON config document into `m`, overwriting only the fields the
// document mentions. Problems (unknown keys, wrong types) are appended to
// `errors` with their JSON paths; `m` keeps its prior value for those fields.
void manifest_from_json(const std::string& text, Manifest& m, std::vector<std::string>& errors);

// JSON echo of every manifest field, suitable for manifest_from_json.
std::string manifest_to_json(const Manifest& m);

// Applies one "key=value" override. Keys are either dotted field paths
// (grid.M, comm.kappa_db, stop.max_bits, ...) or the short aliases used on
// the command line (M, N, L, P, V, max_bits, min_errors, ebno, N_ML, P_n,
// R_t, V_t, rcs, frames, scheme, families, n_mult, seed, workers, out,
// kappa_db, sensing.kappa_db). Problems are appended to `errors`.
void apply_override(Manifest& m, const std::string& kv, std::vector<std::string>& errors);

// One simulated curve: a scheme/family/multiplexing triple plus the CSV stem
// it writes to. Baseline runs keep the family tag purely for file pairing.
struct RunSpec {
  Scheme scheme = Scheme::PureOtfs;
  SequenceFamily family = SequenceFamily::ZadoffChu;
  int n_mult = 1;  // resolved member count; ignored by pure OTFS
  std::string stem;
};

// Resolves "full" / "half" / integer against the scheme's spreading length.
int resolve_n_mult(const Manifest& m, Scheme scheme);

// Expands the manifest into concrete runs: one per family, plus one unspread
// baseline per family when otfs_baseline is set.
std::vector<RunSpec> enumerate_runs(const Manifest& m, Command cmd);

// Full validation pass for a command. Returns every problem found, one
// message per bad field, never stopping at the first.
std::vector<std::string> validate_manifest(const Manifest& m, Command cmd);

// Converters feeding the Monte Carlo layer.
BerConfig ber_config(const Manifest& m, const RunSpec& run);
RmseConfig rmse_config(const Manifest& m, const RunSpec& run);

}  // namespace otfsisac
