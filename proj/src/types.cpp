#include "otfsisac/types.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace otfsisac {

void validate_grid(const GridConfig& g) {
  std::string errs;
  if (g.M < 2) errs += "M must be >= 2; ";
  if (g.N < 2) errs += "N must be >= 2; ";
  if (!(g.delta_f > 0.0)) errs += "delta_f must be > 0; ";
  if (!(g.f_c > 0.0)) errs += "f_c must be > 0; ";
  if (!errs.empty()) throw std::invalid_argument("grid config: " + errs);
}

CMat unitary_dft(int n) {
  if (n < 1) throw std::invalid_argument("dft size must be >= 1");
  CMat f(n, n);
  const double scale = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      // k*l can exceed 32 bits at n = 4096; widen before the product.
      const double ang = -2.0 * kPi * double(int64_t(k) * int64_t(l)) / double(n);
      f(k, l) = cplx(std::cos(ang), std::sin(ang)) * scale;
    }
  }
  return f;
}

}  // namespace otfsisac
