#include "otfsisac/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "otfsisac/crb.hpp"
#include "otfsisac/parallel.hpp"
#include "otfsisac/receiver.hpp"
#include "otfsisac/rng.hpp"
#include "otfsisac/sensing.hpp"

namespace otfsisac {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpreadingPlan plan_for(const GridConfig& grid, Scheme scheme, SequenceFamily family,
                       int n_mult) {
  if (scheme == Scheme::PureOtfs) return make_plan(grid, scheme, family, 0);
  return make_plan(grid, scheme, family, n_mult);
}

std::vector<uint8_t> draw_bits(Rng& rng, int count) {
  std::vector<uint8_t> bits(static_cast<size_t>(count));
  for (auto& b : bits) b = uint8_t(rng.bit());
  return bits;
}

[[noreturn]] void rethrow_with_coords(const std::string& what, uint64_t seed, size_t point,
                                      uint64_t frame) {
  throw std::runtime_error("numeric failure at seed=" + std::to_string(seed) +
                           " point=" + std::to_string(point) +
                           " frame=" + std::to_string(frame) + ": " + what);
}

}  // namespace

std::vector<BerRow> run_ber_sweep(const BerConfig& cfg) {
  validate_grid(cfg.grid);
  if (cfg.ebno_db.empty()) throw std::invalid_argument("ebno grid is empty");
  if (cfg.stop.max_bits == 0) throw std::invalid_argument("max_bits must be > 0");
  set_workers(cfg.workers);

  const SpreadingPlan plan = plan_for(cfg.grid, cfg.scheme, cfg.family, cfg.n_mult);
  const int bits_per_frame = kBitsPerSymbol * plan.n_s;
  const int chunk = std::max(32, 4 * effective_workers());

  std::vector<BerRow> rows;
  rows.reserve(cfg.ebno_db.size());

  for (size_t e = 0; e < cfg.ebno_db.size(); ++e) {
    const auto t0 = std::chrono::steady_clock::now();
    const double n0 = ebno_to_n0(cfg.ebno_db[e]);

    BerRow row;
    row.ebno_db = cfg.ebno_db[e];
    uint64_t next_frame = 0;
    bool done = false;

    struct Outcome {
      uint64_t errors = 0;
      bool failed = false;
      std::string what;
    };

    while (!done) {
      std::vector<Outcome> outcomes(static_cast<size_t>(chunk));
#pragma omp parallel for schedule(dynamic)
      for (int f = 0; f < chunk; ++f) {
        Outcome& out = outcomes[size_t(f)];
        try {
          Rng rng(derive_stream(cfg.seed, e, next_frame + uint64_t(f)));
          const PathSet ch = sample_comm_channel(cfg.grid, cfg.comm, rng);
          const DdChannel chan = build_dd_channel(ch, cfg.grid);
          const std::vector<uint8_t> bits = draw_bits(rng, bits_per_frame);
          const CVec s = map_bits_qpsk(bits);
          const DdFrame frame = spread(plan, s);
          const CVec y = apply_channel(chan, frame, n0, rng);
          const CMat g = mmse_matrix(chan, plan, n0);
          const DetectionResult det = detect(g, y);
          out.errors = count_bit_errors(det.bits, bits);
        } catch (const std::exception& ex) {
          out.failed = true;
          out.what = ex.what();
        }
      }
      // In-order reduction: the stopping frame does not depend on thread count.
      for (int f = 0; f < chunk; ++f) {
        const Outcome& out = outcomes[size_t(f)];
        if (out.failed) rethrow_with_coords(out.what, cfg.seed, e, next_frame + uint64_t(f));
        row.bits += uint64_t(bits_per_frame);
        row.errors += out.errors;
        row.frames += 1;
        if (row.errors >= cfg.stop.min_bit_errors || row.bits >= cfg.stop.max_bits) {
          done = true;
          break;
        }
      }
      next_frame += uint64_t(chunk);
    }

    row.ber = double(row.errors) / double(row.bits);
    row.seconds = cfg.record_timing ? seconds_since(t0) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<RmseRow> run_rmse_sweep(const RmseConfig& cfg) {
  validate_grid(cfg.grid);
  if (cfg.ebno_db.empty()) throw std::invalid_argument("ebno grid is empty");
  if (cfg.frames_per_point == 0) throw std::invalid_argument("frames_per_point must be > 0");
  if (cfg.sen.targets.empty()) throw std::invalid_argument("sensing needs at least one target");
  set_workers(cfg.workers);

  const SpreadingPlan plan = plan_for(cfg.grid, cfg.scheme, cfg.family, cfg.n_mult);
  const int bits_per_frame = kBitsPerSymbol * plan.n_s;
  const int n_targets = int(cfg.sen.targets.size());
  const int chunk = std::max(32, 4 * effective_workers());

  std::vector<RangeVelocity> truths;
  for (const SensingTarget& t : cfg.sen.targets)
    truths.push_back({t.range_m, t.velocity_mps});

  // Reported bound uses the first target's deterministic power gain.
  const double kappa = std::pow(10.0, cfg.sen.kappa_db / 10.0);
  const double gain2 = kappa / (kappa + 1.0) * target_alpha(cfg.sen.targets[0], cfg.grid);

  std::vector<RmseRow> rows;
  rows.reserve(cfg.ebno_db.size());

  for (size_t e = 0; e < cfg.ebno_db.size(); ++e) {
    const auto t0 = std::chrono::steady_clock::now();
    const double n0 = ebno_to_n0(cfg.ebno_db[e]);

    PathSet fixed_paths;
    if (!cfg.redraw_clutter) {
      // One realization per sweep point, from a stream no frame index reaches.
      Rng rng(derive_stream(cfg.seed, e, UINT64_MAX));
      fixed_paths = sample_sensing_channel(cfg.grid, cfg.sen, rng);
    }

    struct Outcome {
      std::vector<std::pair<double, double>> sq;
      double p_avg = 0.0;
      bool failed = false;
      std::string what;
    };

    double sum_sq_r = 0.0;
    double sum_sq_v = 0.0;
    double sum_p_avg = 0.0;
    uint64_t frames_done = 0;

    while (frames_done < cfg.frames_per_point) {
      const int batch = int(std::min<uint64_t>(uint64_t(chunk), cfg.frames_per_point - frames_done));
      std::vector<Outcome> outcomes(static_cast<size_t>(batch));
#pragma omp parallel for schedule(dynamic)
      for (int f = 0; f < batch; ++f) {
        Outcome& out = outcomes[size_t(f)];
        try {
          Rng rng(derive_stream(cfg.seed, e, frames_done + uint64_t(f)));
          const PathSet ch = cfg.redraw_clutter
                                 ? sample_sensing_channel(cfg.grid, cfg.sen, rng)
                                 : fixed_paths;
          const DdChannel chan = build_dd_channel(ch, cfg.grid);
          const std::vector<uint8_t> bits = draw_bits(rng, bits_per_frame);
          const CVec s = map_bits_qpsk(bits);
          const DdFrame frame = spread(plan, s);
          const CVec y = apply_channel(chan, frame, n0, rng);
          const ExpandedTx xx = build_expanded_tx(frame);
          const CVec h = data_cancellation(xx, y);
          const std::vector<IntegerPeak> peaks =
              strongest_peaks(h, cfg.grid.M, cfg.grid.N, n_targets);
          const std::vector<RefinedEstimate> ests =
              ml_refine(frame, y, peaks, cfg.n_ml, cfg.grid);
          out.sq = squared_errors(ests, truths);
          out.p_avg = frame.vec.squaredNorm() / double(cfg.grid.size());
        } catch (const std::exception& ex) {
          out.failed = true;
          out.what = ex.what();
        }
      }
      for (int f = 0; f < batch; ++f) {
        const Outcome& out = outcomes[size_t(f)];
        if (out.failed) rethrow_with_coords(out.what, cfg.seed, e, frames_done + uint64_t(f));
        for (const auto& [sr, sv] : out.sq) {
          sum_sq_r += sr;
          sum_sq_v += sv;
        }
        sum_p_avg += out.p_avg;
      }
      frames_done += uint64_t(batch);
    }

    RmseRow row;
    row.ebno_db = cfg.ebno_db[e];
    row.frames = frames_done;
    const double denom = double(frames_done) * double(n_targets);
    row.rmse_range_m = std::sqrt(sum_sq_r / denom);
    row.rmse_velocity_mps = std::sqrt(sum_sq_v / denom);
    const double p_avg = sum_p_avg / double(frames_done);
    // Noiseless rows report the limiting bound of zero.
    row.crb_range_m = n0 > 0.0 ? crb_range(cfg.grid, n0, p_avg, gain2) : 0.0;
    row.crb_velocity_mps = n0 > 0.0 ? crb_velocity(cfg.grid, n0, p_avg, gain2) : 0.0;
    row.seconds = cfg.record_timing ? seconds_since(t0) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string ber_csv(const std::vector<BerRow>& rows) {
  std::string out = "ebno_db,ber,bits,errors,frames,seconds\n";
  char buf[192];
  for (const BerRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%.3f\n",
                  r.ebno_db, r.ber, r.bits, r.errors, r.frames, r.seconds);
    out += buf;
  }
  return out;
}

std::string rmse_csv(const std::vector<RmseRow>& rows) {
  std::string out = "ebno_db,rmse_range_m,rmse_velocity_mps,crb_range_m,crb_velocity_mps,frames,seconds\n";
  char buf[256];
  for (const RmseRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%" PRIu64 ",%.3f\n", r.ebno_db,
                  r.rmse_range_m, r.rmse_velocity_mps, r.crb_range_m, r.crb_velocity_mps,
                  r.frames, r.seconds);
    out += buf;
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::invalid_argument("cannot open for writing: " + tmp.string());
    os << content;
    if (!os.flush()) throw std::invalid_argument("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace otfsisac
