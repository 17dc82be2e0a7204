#pragma once

#include "otfsisac/types.hpp"

namespace otfsisac {

// Average Cramer-Rao bounds (standard deviations) for range and velocity of a
// single path with power gain |h|^2 = gain2, average transmit power p_avg and
// noise power n0. All inputs must be positive and the grid at least 2 x 2
// (std::domain_error otherwise).
//
//   sigma_R >= sqrt(n0 / (p_avg gain2 pi^2 M N (M-1)^2)) * c0 / (2 delta_f)
//   sigma_V >= sqrt(n0 / (p_avg gain2 pi^2 M N (N-1)^2)) * c0 delta_f / (2 f_c)
double crb_range(const GridConfig& grid, double n0, double p_avg, double gain2);
double crb_velocity(const GridConfig& grid, double n0, double p_avg, double gain2);

}  // namespace otfsisac
