#include "otfsisac/config.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace otfsisac {

namespace {

using nlohmann::ordered_json;

bool parse_double(const std::string& s, double& v) {
  try {
    size_t pos = 0;
    v = std::stod(s, &pos);
    return pos == s.size() && !std::isnan(v);
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& s, int& v) {
  double d;
  if (!parse_double(s, d) || !std::isfinite(d) || d != std::floor(d)) return false;
  if (d < double(std::numeric_limits<int>::min()) || d > double(std::numeric_limits<int>::max()))
    return false;
  v = int(d);
  return true;
}

// Accepts scientific notation ("2e5") for counters, hence the double route.
bool parse_u64(const std::string& s, uint64_t& v) {
  double d;
  if (!parse_double(s, d) || !std::isfinite(d) || d < 0 || d != std::floor(d) || d > 9.0e15)
    return false;
  v = uint64_t(d);
  return true;
}

bool parse_bool(const std::string& s, bool& v) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return v = true, true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return (v = false), true;
  return false;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "lo:step:hi" expands to an inclusive arithmetic grid; "a,b,c" is literal.
bool parse_ebno_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  if (s.find(':') != std::string::npos) {
    auto parts = split(s, ':');
    double lo, step, hi;
    if (parts.size() != 3 || !parse_double(parts[0], lo) || !parse_double(parts[1], step) ||
        !parse_double(parts[2], hi) || step <= 0)
      return false;
    for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
    return !out.empty();
  }
  for (const std::string& tok : split(s, ',')) {
    double v;
    if (!parse_double(tok, v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

SensingTarget& first_target(Manifest& m) {
  if (m.sen.targets.empty()) m.sen.targets.resize(1);
  return m.sen.targets.front();
}

// --- JSON field readers, each appending a message on type mismatch ---------

void jget(const ordered_json& j, const std::string& path, int& out,
          std::vector<std::string>& errs) {
  if (j.is_number_integer())
    out = j.get<int>();
  else
    errs.push_back(path + ": expected an integer");
}

void jget(const ordered_json& j, const std::string& path, uint64_t& out,
          std::vector<std::string>& errs) {
  if (j.is_number_unsigned())
    out = j.get<uint64_t>();
  else if (j.is_number() && j.get<double>() >= 0 && j.get<double>() == std::floor(j.get<double>()))
    out = uint64_t(j.get<double>());
  else
    errs.push_back(path + ": expected a non-negative integer");
}

void jget(const ordered_json& j, const std::string& path, double& out,
          std::vector<std::string>& errs) {
  if (j.is_number())
    out = j.get<double>();
  else if (j.is_string() && parse_double(j.get<std::string>(), out))
    ;  // "inf" arrives as a string since JSON has no infinity literal
  else
    errs.push_back(path + ": expected a number");
}

void jget(const ordered_json& j, const std::string& path, bool& out,
          std::vector<std::string>& errs) {
  if (j.is_boolean())
    out = j.get<bool>();
  else
    errs.push_back(path + ": expected a boolean");
}

void jget(const ordered_json& j, const std::string& path, std::string& out,
          std::vector<std::string>& errs) {
  if (j.is_string())
    out = j.get<std::string>();
  else
    errs.push_back(path + ": expected a string");
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Ber: return "ber";
    case Command::Rmse: return "rmse";
    case Command::Crb: return "crb";
    case Command::DumpSeq: return "dump-seq";
    case Command::DumpImaging: return "dump-imaging";
  }
  return "?";
}

Manifest preset(const std::string& name) {
  if (name == "table3") {
    // Communication scenario: 64x64 grid at 120 kHz / 40 GHz, three-path
    // Rician fading with a 0 dB K factor and a 200 m/s mobile, full-load
    // delay-Doppler spreading swept over 0..20 dB.
    Manifest m;
    m.grid = {64, 64, 120.0e3, 40.0e9};
    m.scheme = Scheme::DelayDopplerCdma;
    m.families = {SequenceFamily::Hadamard, SequenceFamily::ZadoffChu, SequenceFamily::Gold};
    m.n_mult = "full";
    m.comm.kappa_db = 0.0;
    m.comm.taps = 3;
    m.comm.paths = 3;
    m.comm.velocity_mps = 200.0;
    m.ebno_db.clear();
    for (int v = 0; v <= 20; v += 2) m.ebno_db.push_back(double(v));
    m.stop = BerStop{600, 10'000'000};
    return m;
  }
  if (name == "table4") {
    // Sensing scenario: same grid, one target at 500 m closing at 200 m/s,
    // 10 dB clutter-free K factor, full-load delay spreading, 4000 frames
    // per point with 8x maximum-likelihood refinement, swept -20..0 dB.
    Manifest m;
    m.grid = {64, 64, 120.0e3, 40.0e9};
    m.scheme = Scheme::DelayCdma;
    m.families = {SequenceFamily::ZadoffChu};
    m.n_mult = "full";
    m.sen.kappa_db = 10.0;
    m.sen.clutter_paths = 0;
    m.sen.targets = {SensingTarget{500.0, 200.0, kAutoRcs}};
    m.ebno_db.clear();
    for (int v = -20; v <= 0; v += 2) m.ebno_db.push_back(double(v));
    m.frames_per_point = 4000;
    m.n_ml = 8;
    return m;
  }
  throw std::invalid_argument("unknown preset: " + name + " (expected table3 or table4)");
}

void manifest_from_json(const std::string& text, Manifest& m, std::vector<std::string>& errors) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    errors.push_back("config: not valid JSON");
    return;
  }
  if (!doc.is_object()) {
    errors.push_back("config: top level must be an object");
    return;
  }
  for (const auto& [key, val] : doc.items()) {
    if (key == "grid") {
      if (!val.is_object()) {
        errors.push_back("grid: expected an object");
        continue;
      }
      for (const auto& [gk, gv] : val.items()) {
        if (gk == "M")
          jget(gv, "grid.M", m.grid.M, errors);
        else if (gk == "N")
          jget(gv, "grid.N", m.grid.N, errors);
        else if (gk == "delta_f")
          jget(gv, "grid.delta_f", m.grid.delta_f, errors);
        else if (gk == "f_c")
          jget(gv, "grid.f_c", m.grid.f_c, errors);
        else
          errors.push_back("grid." + gk + ": unknown key");
      }
    } else if (key == "scheme") {
      std::string s;
      jget(val, "scheme", s, errors);
      if (!s.empty()) {
        try {
          m.scheme = scheme_from_string(s);
        } catch (const std::invalid_argument& e) {
          errors.push_back(std::string("scheme: ") + e.what());
        }
      }
    } else if (key == "families") {
      if (!val.is_array()) {
        errors.push_back("families: expected an array of family names");
        continue;
      }
      std::vector<SequenceFamily> fams;
      bool ok = true;
      for (const auto& fv : val) {
        std::string s;
        jget(fv, "families[]", s, errors);
        if (s.empty()) {
          ok = false;
          continue;
        }
        try {
          fams.push_back(family_from_string(s));
        } catch (const std::invalid_argument& e) {
          errors.push_back(std::string("families: ") + e.what());
          ok = false;
        }
      }
      if (ok && !fams.empty()) m.families = fams;
    } else if (key == "n_mult") {
      if (val.is_number_integer())
        m.n_mult = std::to_string(val.get<long long>());
      else
        jget(val, "n_mult", m.n_mult, errors);
    } else if (key == "otfs_baseline") {
      jget(val, "otfs_baseline", m.otfs_baseline, errors);
    } else if (key == "comm") {
      if (!val.is_object()) {
        errors.push_back("comm: expected an object");
        continue;
      }
      for (const auto& [ck, cv] : val.items()) {
        if (ck == "kappa_db")
          jget(cv, "comm.kappa_db", m.comm.kappa_db, errors);
        else if (ck == "taps")
          jget(cv, "comm.taps", m.comm.taps, errors);
        else if (ck == "paths")
          jget(cv, "comm.paths", m.comm.paths, errors);
        else if (ck == "velocity_mps")
          jget(cv, "comm.velocity_mps", m.comm.velocity_mps, errors);
        else if (ck == "doppler_rounding") {
          std::string s;
          jget(cv, "comm.doppler_rounding", s, errors);
          if (!s.empty()) {
            try {
              m.comm.rounding = doppler_rounding_from_string(s);
            } catch (const std::invalid_argument& e) {
              errors.push_back(std::string("comm.doppler_rounding: ") + e.what());
            }
          }
        } else
          errors.push_back("comm." + ck + ": unknown key");
      }
    } else if (key == "sensing") {
      if (!val.is_object()) {
        errors.push_back("sensing: expected an object");
        continue;
      }
      for (const auto& [sk, sv] : val.items()) {
        if (sk == "kappa_db")
          jget(sv, "sensing.kappa_db", m.sen.kappa_db, errors);
        else if (sk == "clutter_paths")
          jget(sv, "sensing.clutter_paths", m.sen.clutter_paths, errors);
        else if (sk == "targets") {
          if (!sv.is_array()) {
            errors.push_back("sensing.targets: expected an array");
            continue;
          }
          std::vector<SensingTarget> ts;
          for (size_t i = 0; i < sv.size(); ++i) {
            const auto& tv = sv[i];
            std::string where = "sensing.targets[" + std::to_string(i) + "]";
            if (!tv.is_object()) {
              errors.push_back(where + ": expected an object");
              continue;
            }
            SensingTarget t;
            for (const auto& [tk, tvv] : tv.items()) {
              if (tk == "range_m")
                jget(tvv, where + ".range_m", t.range_m, errors);
              else if (tk == "velocity_mps")
                jget(tvv, where + ".velocity_mps", t.velocity_mps, errors);
              else if (tk == "rcs_m2")
                jget(tvv, where + ".rcs_m2", t.rcs_m2, errors);
              else
                errors.push_back(where + "." + tk + ": unknown key");
            }
            ts.push_back(t);
          }
          m.sen.targets = ts;
        } else
          errors.push_back("sensing." + sk + ": unknown key");
      }
    } else if (key == "ebno_db") {
      if (val.is_string()) {
        std::vector<double> grid;
        if (parse_ebno_list(val.get<std::string>(), grid))
          m.ebno_db = grid;
        else
          errors.push_back("ebno_db: expected numbers 'a,b,c' or a range 'lo:step:hi'");
      } else if (val.is_array()) {
        std::vector<double> grid;
        bool ok = true;
        for (const auto& ev : val) {
          double v;
          size_t before = errors.size();
          jget(ev, "ebno_db[]", v, errors);
          if (errors.size() != before) {
            ok = false;
            continue;
          }
          grid.push_back(v);
        }
        if (ok) m.ebno_db = grid;
      } else {
        errors.push_back("ebno_db: expected an array or a range string");
      }
    } else if (key == "stop") {
      if (!val.is_object()) {
        errors.push_back("stop: expected an object");
        continue;
      }
      for (const auto& [sk, sv] : val.items()) {
        if (sk == "min_bit_errors")
          jget(sv, "stop.min_bit_errors", m.stop.min_bit_errors, errors);
        else if (sk == "max_bits")
          jget(sv, "stop.max_bits", m.stop.max_bits, errors);
        else
          errors.push_back("stop." + sk + ": unknown key");
      }
    } else if (key == "frames_per_point") {
      jget(val, "frames_per_point", m.frames_per_point, errors);
    } else if (key == "n_ml") {
      jget(val, "n_ml", m.n_ml, errors);
    } else if (key == "seed") {
      jget(val, "seed", m.seed, errors);
    } else if (key == "workers") {
      jget(val, "workers", m.workers, errors);
    } else if (key == "record_timing") {
      jget(val, "record_timing", m.record_timing, errors);
    } else if (key == "redraw_clutter") {
      jget(val, "redraw_clutter", m.redraw_clutter, errors);
    } else if (key == "out_dir") {
      jget(val, "out_dir", m.out_dir, errors);
    } else {
      errors.push_back(key + ": unknown key");
    }
  }
}

std::string manifest_to_json(const Manifest& m) {
  ordered_json j;
  j["grid"] = {{"M", m.grid.M}, {"N", m.grid.N}, {"delta_f", m.grid.delta_f}, {"f_c", m.grid.f_c}};
  j["scheme"] = to_string(m.scheme);
  ordered_json fams = ordered_json::array();
  for (SequenceFamily f : m.families) fams.push_back(to_string(f));
  j["families"] = fams;
  j["n_mult"] = m.n_mult;
  j["otfs_baseline"] = m.otfs_baseline;
  j["comm"] = {{"kappa_db", m.comm.kappa_db},
               {"taps", m.comm.taps},
               {"paths", m.comm.paths},
               {"velocity_mps", m.comm.velocity_mps},
               {"doppler_rounding", to_string(m.comm.rounding)}};
  ordered_json targets = ordered_json::array();
  for (const SensingTarget& t : m.sen.targets)
    targets.push_back(
        {{"range_m", t.range_m}, {"velocity_mps", t.velocity_mps}, {"rcs_m2", t.rcs_m2}});
  j["sensing"] = {{"kappa_db", m.sen.kappa_db},
                  {"clutter_paths", m.sen.clutter_paths},
                  {"targets", targets}};
  ordered_json grid = ordered_json::array();
  for (double v : m.ebno_db) {
    if (std::isfinite(v))
      grid.push_back(v);
    else
      grid.push_back("inf");  // JSON has no infinity literal
  }
  j["ebno_db"] = grid;
  j["stop"] = {{"min_bit_errors", m.stop.min_bit_errors}, {"max_bits", m.stop.max_bits}};
  j["frames_per_point"] = m.frames_per_point;
  j["n_ml"] = m.n_ml;
  j["seed"] = m.seed;
  j["workers"] = m.workers;
  j["record_timing"] = m.record_timing;
  j["redraw_clutter"] = m.redraw_clutter;
  j["out_dir"] = m.out_dir;
  return j.dump(2) + "\n";
}

void apply_override(Manifest& m, const std::string& kv, std::vector<std::string>& errors) {
  size_t eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) {
    errors.push_back("override '" + kv + "': expected key=value");
    return;
  }
  const std::string key = kv.substr(0, eq);
  const std::string val = kv.substr(eq + 1);
  auto bad = [&](const char* what) { errors.push_back(key + ": expected " + what); };

  if (key == "M" || key == "grid.M") {
    if (!parse_int(val, m.grid.M)) bad("an integer");
  } else if (key == "N" || key == "grid.N") {
    if (!parse_int(val, m.grid.N)) bad("an integer");
  } else if (key == "delta_f" || key == "grid.delta_f") {
    if (!parse_double(val, m.grid.delta_f)) bad("a number");
  } else if (key == "f_c" || key == "grid.f_c") {
    if (!parse_double(val, m.grid.f_c)) bad("a number");
  } else if (key == "scheme") {
    try {
      m.scheme = scheme_from_string(val);
    } catch (const std::invalid_argument& e) {
      errors.push_back(e.what());
    }
  } else if (key == "families") {
    std::vector<SequenceFamily> fams;
    bool ok = true;
    for (const std::string& tok : split(val, ',')) {
      try {
        fams.push_back(family_from_string(tok));
      } catch (const std::invalid_argument& e) {
        errors.push_back(e.what());
        ok = false;
      }
    }
    if (ok) m.families = fams;
  } else if (key == "n_mult") {
    m.n_mult = val;  // checked during validation
  } else if (key == "otfs_baseline") {
    if (!parse_bool(val, m.otfs_baseline)) bad("a boolean");
  } else if (key == "kappa_db") {
    double v;
    if (!parse_double(val, v))
      bad("a number");
    else
      m.comm.kappa_db = m.sen.kappa_db = v;  // bare key sets both scenarios
  } else if (key == "comm.kappa_db") {
    if (!parse_double(val, m.comm.kappa_db)) bad("a number");
  } else if (key == "sensing.kappa_db") {
    if (!parse_double(val, m.sen.kappa_db)) bad("a number");
  } else if (key == "L" || key == "taps" || key == "comm.taps") {
    if (!parse_int(val, m.comm.taps)) bad("an integer");
  } else if (key == "P" || key == "paths" || key == "comm.paths") {
    if (!parse_int(val, m.comm.paths)) bad("an integer");
  } else if (key == "V" || key == "comm.velocity_mps") {
    if (!parse_double(val, m.comm.velocity_mps)) bad("a number");
  } else if (key == "doppler_rounding" || key == "comm.doppler_rounding") {
    try {
      m.comm.rounding = doppler_rounding_from_string(val);
    } catch (const std::invalid_argument& e) {
      errors.push_back(e.what());
    }
  } else if (key == "ebno" || key == "ebno_db") {
    std::vector<double> grid;
    if (parse_ebno_list(val, grid))
      m.ebno_db = grid;
    else
      bad("numbers 'a,b,c' or a range 'lo:step:hi'");
  } else if (key == "min_errors" || key == "stop.min_bit_errors") {
    if (!parse_u64(val, m.stop.min_bit_errors)) bad("a non-negative integer");
  } else if (key == "max_bits" || key == "stop.max_bits") {
    if (!parse_u64(val, m.stop.max_bits)) bad("a non-negative integer");
  } else if (key == "frames" || key == "frames_per_point") {
    if (!parse_u64(val, m.frames_per_point)) bad("a non-negative integer");
  } else if (key == "N_ML" || key == "n_ml") {
    if (!parse_int(val, m.n_ml)) bad("an integer");
  } else if (key == "P_n" || key == "sensing.clutter_paths") {
    if (!parse_int(val, m.sen.clutter_paths)) bad("an integer");
  } else if (key == "R_t" || key == "sensing.range_m") {
    if (!parse_double(val, first_target(m).range_m)) bad("a number");
  } else if (key == "V_t" || key == "sensing.velocity_mps") {
    if (!parse_double(val, first_target(m).velocity_mps)) bad("a number");
  } else if (key == "rcs" || key == "sensing.rcs_m2") {
    if (!parse_double(val, first_target(m).rcs_m2)) bad("a number");
  } else if (key == "seed") {
    if (!parse_u64(val, m.seed)) bad("a non-negative integer");
  } else if (key == "workers") {
    if (!parse_int(val, m.workers)) bad("an integer");
  } else if (key == "record_timing") {
    if (!parse_bool(val, m.record_timing)) bad("a boolean");
  } else if (key == "redraw_clutter") {
    if (!parse_bool(val, m.redraw_clutter)) bad("a boolean");
  } else if (key == "out" || key == "out_dir") {
    m.out_dir = val;
  } else {
    errors.push_back(key + ": unknown override key");
  }
}

int resolve_n_mult(const Manifest& m, Scheme scheme) {
  if (scheme == Scheme::PureOtfs) return 1;
  const int len = spreading_length(m.grid, scheme);
  if (m.n_mult == "full") return len;
  if (m.n_mult == "half") return std::max(1, len / 2);
  int k;
  if (!parse_int(m.n_mult, k) || k < 1)
    throw std::invalid_argument("n_mult: expected 'full', 'half', or a positive integer, got '" +
                                m.n_mult + "'");
  return k;
}

std::vector<RunSpec> enumerate_runs(const Manifest& m, Command cmd) {
  const std::string prefix = cmd == Command::DumpImaging ? "imaging"
                             : cmd == Command::DumpSeq   ? "seq"
                                                         : to_string(cmd);
  std::vector<RunSpec> runs;
  if (m.scheme == Scheme::PureOtfs) {
    runs.push_back({Scheme::PureOtfs, m.families.empty() ? SequenceFamily::ZadoffChu : m.families[0],
                    1, prefix + "_otfs"});
    return runs;
  }
  const int k = resolve_n_mult(m, m.scheme);
  for (SequenceFamily f : m.families) {
    runs.push_back({m.scheme, f, k,
                    prefix + "_" + to_string(m.scheme) + "_" + to_string(f) + "_m" +
                        std::to_string(k)});
    if (m.otfs_baseline)
      runs.push_back({Scheme::PureOtfs, f, 1, prefix + "_otfs_" + to_string(f)});
  }
  return runs;
}

std::vector<std::string> validate_manifest(const Manifest& m, Command cmd) {
  std::vector<std::string> errs;
  try {
    validate_grid(m.grid);
  } catch (const std::invalid_argument& e) {
    errs.push_back(e.what());
  }
  const bool needs_plan = cmd != Command::Crb;
  const bool needs_comm = cmd == Command::Ber;
  const bool needs_sensing = cmd == Command::Rmse || cmd == Command::Crb || cmd == Command::DumpImaging;
  const bool needs_sweep = cmd == Command::Ber || cmd == Command::Rmse || cmd == Command::Crb;

  if (needs_plan) {
    if (m.families.empty()) errs.push_back("families: at least one sequence family is required");
    if (m.scheme != Scheme::PureOtfs && m.grid.M >= 2 && m.grid.N >= 2) {
      try {
        const int k = resolve_n_mult(m, m.scheme);
        const int len = spreading_length(m.grid, m.scheme);
        for (SequenceFamily f : m.families) {
          try {
            const int cap = family_capacity(f, len);
            if (k > cap)
              errs.push_back(std::string("n_mult: ") + std::to_string(k) + " exceeds the " +
                             to_string(f) + " capacity " + std::to_string(cap) + " at length " +
                             std::to_string(len));
          } catch (const std::exception& e) {
            errs.push_back(std::string(to_string(f)) + ": " + e.what());
          }
        }
      } catch (const std::invalid_argument& e) {
        errs.push_back(e.what());
      }
    }
  }
  if (needs_sweep) {
    if (m.ebno_db.empty()) errs.push_back("ebno_db: the sweep grid must be non-empty");
    for (size_t i = 0; i + 1 < m.ebno_db.size(); ++i)
      if (!(m.ebno_db[i] < m.ebno_db[i + 1])) {
        errs.push_back("ebno_db: the sweep grid must be strictly increasing");
        break;
      }
    for (double v : m.ebno_db)
      if (std::isnan(v)) {
        errs.push_back("ebno_db: NaN is not a sweep point");
        break;
      }
  }
  if (needs_comm) {
    if (m.comm.taps < 1) errs.push_back("comm.taps: must be >= 1");
    if (m.grid.M >= 2 && m.comm.taps > m.grid.M)
      errs.push_back("comm.taps: delay taps must fit the grid (taps <= M)");
    if (m.comm.paths < 1) errs.push_back("comm.paths: must be >= 1");
    if (m.comm.velocity_mps < 0) errs.push_back("comm.velocity_mps: must be >= 0");
    if (m.stop.min_bit_errors < 1) errs.push_back("stop.min_bit_errors: must be >= 1");
    if (m.stop.max_bits < 2) errs.push_back("stop.max_bits: must cover at least one symbol");
  }
  if (needs_sensing) {
    if (m.sen.targets.empty())
      errs.push_back("sensing.targets: at least one target is required");
    if (m.sen.clutter_paths < 0) errs.push_back("sensing.clutter_paths: must be >= 0");
    const double r_max = kC0 / (2.0 * m.grid.delta_f);          // delay alias limit
    const double v_max = m.grid.delta_f * kC0 / (2.0 * m.grid.f_c);  // Doppler alias limit
    for (size_t i = 0; i < m.sen.targets.size(); ++i) {
      const SensingTarget& t = m.sen.targets[i];
      const std::string where = "sensing.targets[" + std::to_string(i) + "]";
      if (!(t.range_m > 0) || !(t.range_m < r_max))
        errs.push_back(where + ".range_m: must lie in (0, " + std::to_string(r_max) +
                       ") for an unambiguous delay");
      if (!(t.velocity_mps >= 0) || !(t.velocity_mps < v_max))
        errs.push_back(where + ".velocity_mps: must lie in [0, " + std::to_string(v_max) +
                       ") for an unambiguous Doppler");
      if (t.rcs_m2 != kAutoRcs && !(t.rcs_m2 > 0))
        errs.push_back(where + ".rcs_m2: must be positive (or -1 for the normalized default)");
    }
  }
  if (cmd == Command::Rmse) {
    if (m.frames_per_point < 1) errs.push_back("frames_per_point: must be >= 1");
    if (m.n_ml < 1) errs.push_back("n_ml: must be >= 1");
  }
  if (m.workers < 0) errs.push_back("workers: must be >= 0");
  if (m.out_dir.empty()) errs.push_back("out_dir: must not be empty");
  return errs;
}

BerConfig ber_config(const Manifest& m, const RunSpec& run) {
  BerConfig c;
  c.grid = m.grid;
  c.scheme = run.scheme;
  c.family = run.family;
  c.n_mult = run.n_mult;
  c.comm = m.comm;
  c.ebno_db = m.ebno_db;
  c.stop = m.stop;
  c.seed = m.seed;  // shared across runs: paired channel draws per sweep point
  c.workers = m.workers;
  c.record_timing = m.record_timing;
  return c;
}

RmseConfig rmse_config(const Manifest& m, const RunSpec& run) {
  RmseConfig c;
  c.grid = m.grid;
  c.scheme = run.scheme;
  c.family = run.family;
  c.n_mult = run.n_mult;
  c.sen = m.sen;
  c.ebno_db = m.ebno_db;
  c.frames_per_point = m.frames_per_point;
  c.n_ml = m.n_ml;
  c.seed = m.seed;
  c.workers = m.workers;
  c.record_timing = m.record_timing;
  c.redraw_clutter = m.redraw_clutter;
  return c;
}

}  // namespace otfsisac
