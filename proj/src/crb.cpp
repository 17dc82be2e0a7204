#include "otfsisac/crb.hpp"

#include <cmath>
#include <stdexcept>

namespace otfsisac {

namespace {

void check(const GridConfig& grid, double n0, double p_avg, double gain2) {
  if (grid.M < 2 || grid.N < 2) throw std::domain_error("crb needs M >= 2 and N >= 2");
  if (!(grid.delta_f > 0.0) || !(grid.f_c > 0.0))
    throw std::domain_error("crb needs positive delta_f and f_c");
  if (!(n0 > 0.0)) throw std::domain_error("crb needs n0 > 0");
  if (!(p_avg > 0.0)) throw std::domain_error("crb needs p_avg > 0");
  if (!(gain2 > 0.0)) throw std::domain_error("crb needs gain2 > 0");
}

}  // namespace

double crb_range(const GridConfig& grid, double n0, double p_avg, double gain2) {
  check(grid, n0, p_avg, gain2);
  const double mn = double(grid.M) * double(grid.N);
  const double span = double(grid.M - 1);
  return std::sqrt(n0 / (p_avg * gain2 * kPi * kPi * mn * span * span)) * kC0 /
         (2.0 * grid.delta_f);
}

double crb_velocity(const GridConfig& grid, double n0, double p_avg, double gain2) {
  check(grid, n0, p_avg, gain2);
  const double mn = double(grid.M) * double(grid.N);
  const double span = double(grid.N - 1);
  return std::sqrt(n0 / (p_avg * gain2 * kPi * kPi * mn * span * span)) * kC0 * grid.delta_f /
         (2.0 * grid.f_c);
}

}  // namespace otfsisac
