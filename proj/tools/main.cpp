// Command-line front end: sweeps, bound tables, and debug dumps, all driven
// by the same manifest. Exit codes: 0 success, 2 configuration problem,
// 3 numeric failure during a run.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otfsisac/config.hpp"
#include "otfsisac/crb.hpp"
#include "otfsisac/montecarlo.hpp"
#include "otfsisac/receiver.hpp"
#include "otfsisac/sensing.hpp"

namespace {

using namespace otfsisac;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonArgs {
  std::string preset_name;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string seed;
  int workers = -1;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--preset", a.preset_name, "named parameter bundle (table3, table4)");
  cmd->add_option("--config", a.config_path, "JSON config file applied over the preset");
  cmd->add_option("--override", a.overrides, "key=value field override, repeatable")
      ->take_all();
  cmd->add_option("--out", a.out_dir, "output directory (created if missing)");
  cmd->add_option("--seed", a.seed, "base seed for every random stream");
  cmd->add_option("--workers", a.workers, "worker thread count (0 = library default)");
  cmd->add_flag("--no-timing", a.no_timing, "write 0.000 in the seconds column");
}

// Builds the effective manifest: preset, then config file, then overrides,
// then the convenience flags. Collects problems instead of stopping early.
Manifest resolve(const CommonArgs& a, Command cmd, std::vector<std::string>& errors) {
  Manifest m;
  if (!a.preset_name.empty()) {
    try {
      m = preset(a.preset_name);
    } catch (const std::invalid_argument& e) {
      errors.push_back(e.what());
      return m;
    }
  }
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path, std::ios::binary);
    if (!in) {
      errors.push_back("config: cannot read " + a.config_path);
    } else {
      std::ostringstream ss;
      ss << in.rdbuf();
      manifest_from_json(ss.str(), m, errors);
    }
  }
  for (const std::string& kv : a.overrides) apply_override(m, kv, errors);
  if (!a.out_dir.empty()) m.out_dir = a.out_dir;
  if (!a.seed.empty()) apply_override(m, "seed=" + a.seed, errors);
  if (a.workers >= 0) m.workers = a.workers;
  if (a.no_timing) m.record_timing = false;

  for (const std::string& e : validate_manifest(m, cmd)) errors.push_back(e);
  return m;
}

// Creates the output directory and drops the effective-manifest echo next to
// the results, so every CSV directory is self-describing and re-runnable.
void prepare_out_dir(const Manifest& m, Command cmd) {
  std::error_code ec;
  std::filesystem::create_directories(m.out_dir, ec);
  if (ec)
    throw std::invalid_argument("out_dir: cannot create " + m.out_dir + " (" + ec.message() + ")");
  const std::string stem = std::string(to_string(cmd));
  write_text_atomic(m.out_dir + "/" + stem + "_manifest.json", manifest_to_json(m));
}

int run_ber(const Manifest& m) {
  prepare_out_dir(m, Command::Ber);
  for (const RunSpec& run : enumerate_runs(m, Command::Ber)) {
    const std::vector<BerRow> rows = run_ber_sweep(ber_config(m, run));
    const std::string path = m.out_dir + "/" + run.stem + ".csv";
    write_text_atomic(path, ber_csv(rows));
    std::printf("wrote %s (%zu sweep points)\n", path.c_str(), rows.size());
  }
  return 0;
}

int run_rmse(const Manifest& m) {
  prepare_out_dir(m, Command::Rmse);
  for (const RunSpec& run : enumerate_runs(m, Command::Rmse)) {
    const std::vector<RmseRow> rows = run_rmse_sweep(rmse_config(m, run));
    const std::string path = m.out_dir + "/" + run.stem + ".csv";
    write_text_atomic(path, rmse_csv(rows));
    std::printf("wrote %s (%zu sweep points)\n", path.c_str(), rows.size());
  }
  return 0;
}

int run_crb(const Manifest& m) {
  // Deterministic bound table: unit-energy symbols put p_avg at n_s / MN, and
  // the gain is the first target's line-of-sight power weight.
  const int k = resolve_n_mult(m, m.scheme);
  const int n_s = symbols_per_frame(m.grid, m.scheme, k);
  const double p_avg = double(n_s) / double(m.grid.size());
  const double kappa = std::pow(10.0, m.sen.kappa_db / 10.0);
  const double gain2 = kappa / (kappa + 1.0) * target_alpha(m.sen.targets[0], m.grid);

  std::string csv = "ebno_db,crb_range_m,crb_velocity_mps\n";
  char buf[128];
  for (double e : m.ebno_db) {
    const double n0 = ebno_to_n0(e);
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g\n", e, crb_range(m.grid, n0, p_avg, gain2),
                  crb_velocity(m.grid, n0, p_avg, gain2));
    csv += buf;
  }
  std::fputs(csv.c_str(), stdout);
  prepare_out_dir(m, Command::Crb);
  write_text_atomic(m.out_dir + "/crb.csv", csv);
  return 0;
}

int run_dump_seq(const Manifest& m) {
  prepare_out_dir(m, Command::DumpSeq);
  if (m.scheme == Scheme::PureOtfs)
    throw std::invalid_argument("dump-seq: pure OTFS has no spreading sequences");
  const int k = resolve_n_mult(m, m.scheme);
  const int len = spreading_length(m.grid, m.scheme);
  for (SequenceFamily f : m.families) {
    const SequenceMatrix seq = build_sequence_matrix(f, len, k);
    std::ostringstream ss;
    write_sequence_csv(seq, ss);
    const std::string path = m.out_dir + "/seq_" + to_string(m.scheme) + "_" + to_string(f) +
                             "_m" + std::to_string(k) + ".csv";
    write_text_atomic(path, ss.str());
    std::printf("wrote %s (%d members of length %d)\n", path.c_str(), k, len);
  }
  return 0;
}

int run_dump_imaging(const Manifest& m) {
  prepare_out_dir(m, Command::DumpImaging);
  const RunSpec run = enumerate_runs(m, Command::DumpImaging).front();
  const SpreadingPlan plan = make_plan(m.grid, run.scheme, run.family, run.n_mult);

  // Same per-frame draw order as the sweeps: channel, data bits, noise.
  Rng rng(derive_stream(m.seed, 0, 0));
  const PathSet ps = sample_sensing_channel(m.grid, m.sen, rng);
  const DdChannel chan = build_dd_channel(ps, m.grid);
  std::vector<uint8_t> bits(size_t(plan.n_s) * kBitsPerSymbol);
  for (auto& b : bits) b = uint8_t(rng.bit());
  const DdFrame frame = spread(plan, map_bits_qpsk(bits));
  const double n0 = ebno_to_n0(m.ebno_db.front());
  const CVec y = apply_channel(chan, frame, n0, rng);

  const ExpandedTx xx = build_expanded_tx(frame);
  const Eigen::MatrixXd surface = imaging_surface(data_cancellation(xx, y), m.grid.M, m.grid.N);

  std::string csv;
  char buf[64];
  for (int mrow = 0; mrow < m.grid.M; ++mrow) {
    for (int n = 0; n < m.grid.N; ++n) {
      std::snprintf(buf, sizeof buf, n + 1 == m.grid.N ? "%.10g\n" : "%.10g,", surface(mrow, n));
      csv += buf;
    }
  }
  const std::string path = m.out_dir + "/" + run.stem + ".csv";
  write_text_atomic(path, csv);
  std::printf("wrote %s (%d x %d surface at %.10g dB)\n", path.c_str(), m.grid.M, m.grid.N,
              m.ebno_db.front());
  return 0;
}

int dispatch(Command cmd, const CommonArgs& args) {
  std::vector<std::string> errors;
  const Manifest m = resolve(args, cmd, errors);
  if (!errors.empty()) {
    for (const std::string& e : errors) std::fprintf(stderr, "error: %s\n", e.c_str());
    return kExitConfig;
  }
  try {
    switch (cmd) {
      case Command::Ber: return run_ber(m);
      case Command::Rmse: return run_rmse(m);
      case Command::Crb: return run_crb(m);
      case Command::DumpSeq: return run_dump_seq(m);
      case Command::DumpImaging: return run_dump_imaging(m);
    }
    return kExitConfig;
  } catch (const std::logic_error& e) {  // invalid_argument, domain, length, out_of_range
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {  // numeric failures mid-run
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CDMA-spread OTFS link and sensing simulator"};
  app.require_subcommand(1);

  struct Sub {
    Command cmd;
    CLI::App* app;
    CommonArgs args;
  };
  std::vector<Sub> subs;
  subs.push_back({Command::Ber,
                  app.add_subcommand("ber", "bit error rate sweep, one CSV per configured run"),
                  {}});
  subs.push_back({Command::Rmse,
                  app.add_subcommand("rmse", "sensing RMSE sweep with bound columns"), {}});
  subs.push_back({Command::Crb,
                  app.add_subcommand("crb", "print the range/velocity bound table"), {}});
  subs.push_back({Command::DumpSeq,
                  app.add_subcommand("dump-seq", "write the spreading sequence chips as CSV"),
                  {}});
  subs.push_back({Command::DumpImaging,
                  app.add_subcommand("dump-imaging", "write one frame's delay-Doppler surface"),
                  {}});
  for (Sub& s : subs) add_common(s.app, s.args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  for (Sub& s : subs)
    if (s.app->parsed()) return dispatch(s.cmd, s.args);
  return kExitConfig;
}
