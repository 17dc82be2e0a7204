#pragma once

#include <string>
#include <vector>

#include "otfsisac/frame.hpp"
#include "otfsisac/rng.hpp"
#include "otfsisac/types.hpp"

namespace otfsisac {

enum class PathRole { Los, Nlos, Target, Clutter };

const char* to_string(PathRole r);
PathRole path_role_from_string(const std::string& s);

/// One propagation path in delay-Doppler coordinates. Delay and Doppler are
/// in grid bins; both may be fractional, and Doppler may be negative.
struct Path {
  cplx gain;
  double delay_bins = 0.0;
  double doppler_bins = 0.0;
  PathRole role = PathRole::Los;
};

/// A channel realization. Serializable so any simulated frame can be re-run.
struct PathSet {
  std::vector<Path> paths;
};

std::string to_text(const PathSet& ps);
PathSet path_set_from_text(const std::string& text);

enum class ChannelBuild {
  Auto,        // Integer when every delay is integral, Fractional otherwise
  Integer,     // tap matrix per slot; requires integral delays
  Fractional,  // per-slot frequency-domain synthesis; any delays
};

/// Linear delay-Doppler channel y = H x for one frame, stored as the N
/// time-frequency blocks of its block-diagonal core. apply() runs in
/// O(MN(M + N)); dense() materializes the full MN x MN matrix.
class DdChannel {
 public:
  DdChannel(const GridConfig& grid, std::vector<CMat> tf_blocks);

  int M() const { return grid_.M; }
  int N() const { return grid_.N; }
  const GridConfig& grid() const { return grid_; }
  const std::vector<CMat>& tf_blocks() const { return blocks_; }

  CVec apply(const CVec& x) const;
  CMat dense() const;

 private:
  GridConfig grid_;
  std::vector<CMat> blocks_;
  CMat fm_, fn_;  // cached unitary DFTs
};

// Builds the channel operator from a path set. Delays must lie in [0, M)
// (std::domain_error otherwise); Integer mode rejects fractional delays.
// The two modes agree (to roundoff) whenever both accept the input.
DdChannel build_dd_channel(const PathSet& ps, const GridConfig& grid,
                           ChannelBuild mode = ChannelBuild::Auto);

// y = H x + z with z ~ CN(0, n0) per entry, drawn in entry order from `rng`.
// n0 == 0 skips the noise draw entirely.
CVec apply_channel(const DdChannel& chan, const DdFrame& frame, double n0, Rng& rng);

enum class DopplerRounding {
  Literal,     // round scatterer Doppler to integer bins, as the formula states
  Fractional,  // keep fractional Doppler, as the model description states
};

const char* to_string(DopplerRounding r);
DopplerRounding doppler_rounding_from_string(const std::string& s);

/// Rician communication channel: one line-of-sight path plus P - 1 scattered
/// paths with integer delays and (by default) fractional Doppler.
struct CommChannelParams {
  double kappa_db = 0.0;  // Rician K factor
  int taps = 3;           // delay tap count L
  int paths = 3;          // path count P (>= 1; path 0 is line of sight)
  double velocity_mps = 200.0;
  DopplerRounding rounding = DopplerRounding::Fractional;
};

// ceil(f_c N v / (delta_f c0)): largest Doppler bin the mobile can induce.
int max_comm_doppler_bins(const GridConfig& grid, double velocity_mps);

// Draw order per scattered path: delay (only when P < L), Doppler, gain.
PathSet sample_comm_channel(const GridConfig& grid, const CommChannelParams& p, Rng& rng);

// Sentinel: pick the radar cross-section that normalizes the radar-equation
// power gain to exactly 1 (the sweep axis then reads as post-attenuation SNR).
inline constexpr double kAutoRcs = -1.0;

struct SensingTarget {
  double range_m = 500.0;
  double velocity_mps = 200.0;
  double rcs_m2 = kAutoRcs;
};

/// Monostatic sensing channel: one deterministic path per target plus
/// clutter_paths random scatterers, all with fractional delay and Doppler.
struct SenChannelParams {
  double kappa_db = 10.0;
  int clutter_paths = 0;  // P_n
  std::vector<SensingTarget> targets;
};

// Two-way propagation: tau = 2 delta_f M R / c0, nu = 2 f_c N V / (delta_f c0).
double delay_bins_from_range(double range_m, const GridConfig& grid);
double doppler_bins_from_velocity(double velocity_mps, const GridConfig& grid);

// Radar-equation power gain alpha = c0^2 rcs / ((4 pi)^3 f_c^2 R^4).
double radar_alpha(double rcs_m2, double range_m, const GridConfig& grid);

// Resolved alpha for a target (applies the kAutoRcs normalization).
double target_alpha(const SensingTarget& t, const GridConfig& grid);

// Draw order per clutter path: range (redrawn until the delay fits the grid),
// velocity, gain. Target paths are deterministic and come first, in order.
PathSet sample_sensing_channel(const GridConfig& grid, const SenChannelParams& p, Rng& rng);

}  // namespace otfsisac
