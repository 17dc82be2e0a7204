// Times the parallel kernels against their serial reference twins on a
// desk-scale grid and reports the agreement, so a speedup never hides a
// numerical regression. Run with OMP_NUM_THREADS to vary the worker count.

#include <chrono>
#include <cstdio>
#include <functional>

#include "otfsisac/channel.hpp"
#include "otfsisac/frame.hpp"
#include "otfsisac/parallel.hpp"
#include "otfsisac/reference.hpp"
#include "otfsisac/rng.hpp"
#include "otfsisac/sensing.hpp"

namespace {

using namespace otfsisac;

double time_of(const std::function<void()>& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_s, double parallel_s, double max_diff) {
  std::printf("%-18s %10.3f ms %10.3f ms %8.2fx %12.3e\n", name, serial_s * 1e3,
              parallel_s * 1e3, serial_s / parallel_s, max_diff);
}

}  // namespace

int main() {
  const GridConfig grid{16, 16, 120.0e3, 40.0e9};
  Rng rng(derive_stream(7, 0, 0));

  PathSet ps;
  for (int p = 0; p < 4; ++p)
    ps.paths.push_back({rng.cnormal(1.0), 15.0 * rng.u01(), 15.0 * rng.u01() - 7.5,
                        p == 0 ? PathRole::Target : PathRole::Clutter});

  const SpreadingPlan plan = make_plan(grid, Scheme::DelayCdma, SequenceFamily::ZadoffChu, grid.M);
  std::vector<uint8_t> bits(size_t(plan.n_s) * kBitsPerSymbol);
  for (auto& b : bits) b = uint8_t(rng.bit());
  const DdFrame frame = spread(plan, map_bits_qpsk(bits));

  const DdChannel chan = build_dd_channel(ps, grid);
  const CVec y = chan.apply(frame.vec);

  std::printf("grid %dx%d, %d paths, %d workers\n\n", grid.M, grid.N, int(ps.paths.size()),
              effective_workers());
  std::printf("%-18s %13s %13s %9s %12s\n", "kernel", "serial", "parallel", "speedup",
              "max |diff|");

  {
    CMat a, b;
    const double ts = time_of([&] { a = ref::dd_channel_dense(ps, grid, ChannelBuild::Fractional); }, 3);
    const double tp = time_of([&] { b = build_dd_channel(ps, grid).dense(); }, 3);
    report("channel dense", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  CMat xx_ref;
  ExpandedTx xx;
  {
    const double ts = time_of([&] { xx_ref = ref::expanded_tx(frame); }, 3);
    const double tp = time_of([&] { xx = build_expanded_tx(frame); }, 3);
    report("expanded tx", ts, tp, (xx_ref - xx.xx).cwiseAbs().maxCoeff());
  }
  {
    CVec a, b;
    const double ts = time_of([&] { a = ref::data_cancellation(xx_ref, y); }, 10);
    const double tp = time_of([&] { b = data_cancellation(xx, y); }, 10);
    report("data cancel", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }
  {
    // Scan the metric over a 9x9 offset grid around the true bin, both routes.
    const double tau0 = ps.paths[0].delay_bins;
    const double nu0 = ps.paths[0].doppler_bins;
    double diff = 0.0;
    auto scan = [&](bool use_ref) {
      double best = -1.0;
      for (int i = -4; i <= 4; ++i)
        for (int k = -4; k <= 4; ++k) {
          const double tau = tau0 + i / 9.0;
          const double nu = nu0 + k / 9.0;
          const double v = use_ref ? ref::ml_metric(frame.vec, y, tau, nu, grid)
                                   : ml_metric(frame.vec, y, tau, nu, grid);
          if (v > best) best = v;
        }
      return best;
    };
    double a = 0, b = 0;
    const double ts = time_of([&] { a = scan(true); }, 1);
    const double tp = time_of([&] { b = scan(false); }, 1);
    diff = std::abs(a - b);
    report("ml metric scan", ts, tp, diff);
  }
  return 0;
}
