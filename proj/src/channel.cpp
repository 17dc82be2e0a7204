#include "otfsisac/channel.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "otfsisac/parallel.hpp"

namespace otfsisac {

const char* to_string(PathRole r) {
  switch (r) {
    case PathRole::Los: return "los";
    case PathRole::Nlos: return "nlos";
    case PathRole::Target: return "target";
    case PathRole::Clutter: return "clutter";
  }
  return "?";
}

PathRole path_role_from_string(const std::string& s) {
  if (s == "los") return PathRole::Los;
  if (s == "nlos") return PathRole::Nlos;
  if (s == "target") return PathRole::Target;
  if (s == "clutter") return PathRole::Clutter;
  throw std::invalid_argument("unknown path role: " + s);
}

std::string to_text(const PathSet& ps) {
  nlohmann::json j;
  j["paths"] = nlohmann::json::array();
  for (const Path& p : ps.paths) {
    j["paths"].push_back({{"re", p.gain.real()},
                          {"im", p.gain.imag()},
                          {"delay_bins", p.delay_bins},
                          {"doppler_bins", p.doppler_bins},
                          {"role", to_string(p.role)}});
  }
  return j.dump();
}

PathSet path_set_from_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  PathSet ps;
  for (const auto& e : j.at("paths")) {
    Path p;
    p.gain = cplx(e.at("re").get<double>(), e.at("im").get<double>());
    p.delay_bins = e.at("delay_bins").get<double>();
    p.doppler_bins = e.at("doppler_bins").get<double>();
    p.role = path_role_from_string(e.at("role").get<std::string>());
    ps.paths.push_back(p);
  }
  return ps;
}

DdChannel::DdChannel(const GridConfig& grid, std::vector<CMat> tf_blocks)
    : grid_(grid), blocks_(std::move(tf_blocks)) {
  validate_grid(grid_);
  if (int(blocks_.size()) != grid_.N)
    throw std::invalid_argument("channel needs one block per Doppler slot");
  for (const CMat& b : blocks_)
    if (b.rows() != grid_.M || b.cols() != grid_.M)
      throw std::invalid_argument("channel block has wrong dimensions");
  fm_ = unitary_dft(grid_.M);
  fn_ = unitary_dft(grid_.N);
}

CVec DdChannel::apply(const CVec& x) const {
  const int M = grid_.M;
  const int N = grid_.N;
  if (x.size() != Eigen::Index(M) * N) throw std::length_error("input does not fill the grid");
  // vec identities turn the two Kronecker factors into grid-sized products:
  // (Fn^H (x) Fm) x = vec(Fm X Fn^H), (Fn (x) Fm^H) w = vec(Fm^H W Fn).
  const CMat x_grid = Eigen::Map<const CMat>(x.data(), M, N);
  CMat tf = fm_ * x_grid * fn_.adjoint();
  CMat out(M, N);
  for (int n = 0; n < N; ++n) out.col(n).noalias() = blocks_[size_t(n)] * tf.col(n);
  CMat y_grid = fm_.adjoint() * out * fn_;
  return Eigen::Map<CVec>(y_grid.data(), Eigen::Index(M) * N);
}

CMat DdChannel::dense() const {
  const int MN = grid_.size();
  CMat h(MN, MN);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < MN; ++j) {
    CVec e = CVec::Zero(MN);
    e[j] = 1.0;
    h.col(j) = apply(e);
  }
  return h;
}

namespace {

cplx cis(double ang) { return cplx(std::cos(ang), std::sin(ang)); }

bool integral(double v) { return v == std::floor(v); }

}  // namespace

DdChannel build_dd_channel(const PathSet& ps, const GridConfig& grid, ChannelBuild mode) {
  validate_grid(grid);
  const int M = grid.M;
  const int N = grid.N;
  const double MN = double(M) * double(N);

  bool all_integer = true;
  for (const Path& p : ps.paths) {
    if (!(p.delay_bins >= 0.0 && p.delay_bins < double(M)))
      throw std::domain_error("path delay " + std::to_string(p.delay_bins) +
                              " outside [0, M)");
    all_integer = all_integer && integral(p.delay_bins);
  }
  if (mode == ChannelBuild::Auto)
    mode = all_integer ? ChannelBuild::Integer : ChannelBuild::Fractional;
  if (mode == ChannelBuild::Integer && !all_integer)
    throw std::invalid_argument("integer channel build given fractional delays");

  const CMat fm = unitary_dft(M);
  std::vector<CMat> blocks(static_cast<size_t>(N));

  if (mode == ChannelBuild::Integer) {
    for (int n = 0; n < N; ++n) {
      CMat hn = CMat::Zero(M, M);
      for (const Path& p : ps.paths) {
        const int ti = int(p.delay_bins);
        for (int m = 0; m < M; ++m) {
          const double ang = 2.0 * kPi * p.doppler_bins * (double(n) * M + m - ti) / MN;
          hn(m, ((m - ti) % M + M) % M) += p.gain * cis(ang);
        }
      }
      blocks[size_t(n)].noalias() = fm * hn * fm.adjoint();
    }
  } else {
    // Per-slot synthesis from the frequency response: the slot block is
    // Fm * B_n with B_n(m, mb) = sum_p h_{m,n,p} e^{j 2 pi (m - tau_p) mb / M} / sqrt(M).
    // The slot index only enters h through e^{j 2 pi nu n M / MN}, so each
    // path contributes one fixed matrix K_p scaled per slot:
    //   block_n = sum_p gain_p c_{p,n} K_p,   c_{p,n} = e^{j 2 pi nu_p (n M - tau_p) / MN},
    //   K_p = Fm diag(rho_p) Fm^H diag(d_p),  rho_p[m] = e^{j 2 pi nu_p m / MN},
    //                                         d_p[mb] = e^{-j 2 pi tau_p mb / M}.
    for (int n = 0; n < N; ++n) blocks[size_t(n)] = CMat::Zero(M, M);
    CVec rho(M), d(M);
    for (const Path& p : ps.paths) {
      for (int m = 0; m < M; ++m) rho[m] = cis(2.0 * kPi * p.doppler_bins * m / MN);
      for (int mb = 0; mb < M; ++mb) d[mb] = cis(-2.0 * kPi * p.delay_bins * mb / double(M));
      CMat inner = rho.asDiagonal() * fm.adjoint();
      inner = inner * d.asDiagonal();
      CMat k = fm * inner;
      for (int n = 0; n < N; ++n) {
        const cplx cn =
            p.gain * cis(2.0 * kPi * p.doppler_bins * (double(n) * M - p.delay_bins) / MN);
        blocks[size_t(n)].noalias() += cn * k;
      }
    }
  }
  return DdChannel(grid, std::move(blocks));
}

CVec apply_channel(const DdChannel& chan, const DdFrame& frame, double n0, Rng& rng) {
  if (n0 < 0.0) throw std::domain_error("noise power must be >= 0");
  CVec y = chan.apply(frame.vec);
  if (n0 > 0.0) {
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += rng.cnormal(n0);
  }
  return y;
}

const char* to_string(DopplerRounding r) {
  return r == DopplerRounding::Literal ? "literal" : "fractional";
}

DopplerRounding doppler_rounding_from_string(const std::string& s) {
  if (s == "literal") return DopplerRounding::Literal;
  if (s == "fractional") return DopplerRounding::Fractional;
  throw std::invalid_argument("unknown doppler rounding: " + s);
}

int max_comm_doppler_bins(const GridConfig& grid, double velocity_mps) {
  return int(std::ceil(grid.f_c * grid.N * velocity_mps / (grid.delta_f * kC0)));
}

PathSet sample_comm_channel(const GridConfig& grid, const CommChannelParams& p, Rng& rng) {
  validate_grid(grid);
  if (p.paths < 1) throw std::invalid_argument("comm channel needs at least the LOS path");
  if (p.taps < 1) throw std::invalid_argument("comm channel needs at least one delay tap");
  if (p.taps > grid.M) throw std::invalid_argument("delay taps exceed the delay axis");
  const double kappa = std::pow(10.0, p.kappa_db / 10.0);
  const int nu_max = max_comm_doppler_bins(grid, p.velocity_mps);

  PathSet ps;
  Path los;
  los.gain = std::sqrt(kappa / (kappa + 1.0));
  los.delay_bins = 0.0;
  los.doppler_bins = double(nu_max);
  los.role = PathRole::Los;
  ps.paths.push_back(los);

  std::set<int> used_delays{0};
  const double nlos_scale = p.paths > 1 ? std::sqrt(1.0 / ((kappa + 1.0) * (p.paths - 1))) : 0.0;
  for (int i = 1; i < p.paths; ++i) {
    Path path;
    path.role = PathRole::Nlos;
    if (p.paths >= p.taps) {
      path.delay_bins = double(i % p.taps);
    } else {
      // Distinct integer delays across the whole set, LOS included.
      int d;
      do {
        d = int(std::round(double(p.taps) * rng.u01()));
      } while (used_delays.count(d) != 0 || d >= grid.M);
      used_delays.insert(d);
      path.delay_bins = double(d);
    }
    const double raw = 2.0 * double(nu_max) * (rng.u01() - 0.5);
    path.doppler_bins = p.rounding == DopplerRounding::Literal ? std::round(raw) : raw;
    path.gain = nlos_scale * rng.cnormal(1.0);
    ps.paths.push_back(path);
  }
  return ps;
}

double delay_bins_from_range(double range_m, const GridConfig& grid) {
  return 2.0 * grid.delta_f * grid.M * range_m / kC0;
}

double doppler_bins_from_velocity(double velocity_mps, const GridConfig& grid) {
  return 2.0 * grid.f_c * grid.N * velocity_mps / (grid.delta_f * kC0);
}

double radar_alpha(double rcs_m2, double range_m, const GridConfig& grid) {
  if (!(range_m > 0.0)) throw std::domain_error("target range must be > 0");
  const double four_pi = 4.0 * kPi;
  return kC0 * kC0 * rcs_m2 /
         (four_pi * four_pi * four_pi * grid.f_c * grid.f_c * range_m * range_m * range_m * range_m);
}

double target_alpha(const SensingTarget& t, const GridConfig& grid) {
  if (t.rcs_m2 == kAutoRcs) return 1.0;
  if (!(t.rcs_m2 > 0.0)) throw std::domain_error("target rcs must be > 0");
  return radar_alpha(t.rcs_m2, t.range_m, grid);
}

PathSet sample_sensing_channel(const GridConfig& grid, const SenChannelParams& p, Rng& rng) {
  validate_grid(grid);
  if (p.targets.empty()) throw std::invalid_argument("sensing channel needs at least one target");
  if (p.clutter_paths < 0) throw std::invalid_argument("clutter path count must be >= 0");
  const double kappa = std::pow(10.0, p.kappa_db / 10.0);

  PathSet ps;
  double min_sqrt_alpha = 0.0;
  double max_range = 0.0;
  for (const SensingTarget& t : p.targets) {
    const double alpha = target_alpha(t, grid);
    Path path;
    path.gain = std::sqrt(kappa / (kappa + 1.0)) * std::sqrt(alpha);
    path.delay_bins = delay_bins_from_range(t.range_m, grid);
    path.doppler_bins = doppler_bins_from_velocity(t.velocity_mps, grid);
    path.role = PathRole::Target;
    if (!(path.delay_bins >= 0.0 && path.delay_bins < double(grid.M)))
      throw std::domain_error("target range " + std::to_string(t.range_m) +
                              " m maps outside the delay axis");
    ps.paths.push_back(path);
    const double sa = std::sqrt(alpha);
    min_sqrt_alpha = ps.paths.size() == 1 ? sa : std::min(min_sqrt_alpha, sa);
    max_range = std::max(max_range, t.range_m);
  }

  if (p.clutter_paths > 0) {
    const double r_max = std::pow(kappa, 0.25) * max_range;
    const double v_max = grid.delta_f * kC0 / (4.0 * grid.f_c);
    const double scale = std::sqrt(1.0 / (double(p.clutter_paths) * (kappa + 1.0))) * min_sqrt_alpha;
    for (int i = 0; i < p.clutter_paths; ++i) {
      Path path;
      path.role = PathRole::Clutter;
      double tau;
      do {
        tau = delay_bins_from_range(r_max * rng.u01(), grid);
      } while (!(tau < double(grid.M)));
      path.delay_bins = tau;
      path.doppler_bins =
          doppler_bins_from_velocity(2.0 * v_max * (rng.u01() - 0.5), grid);
      path.gain = scale * rng.cnormal(1.0);
      ps.paths.push_back(path);
    }
  }
  return ps;
}

}  // namespace otfsisac
