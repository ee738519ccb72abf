#pragma once

// Brute-force worst-case analysis of reservation policies on two-day
// sequences (q, x) drawn from a price grid. Every kernel has a serial
// reference and an OpenMP version that must agree bit for bit.

#include <cstddef>
#include <vector>

#include "osearch/core.hpp"

namespace osearch::kernels {

/// Geometric grid with `intervals` steps, centered on sqrt(lo*hi) (exact for
/// even `intervals`), endpoints pinned to lo and hi.
std::vector<double> centered_geometric_grid(const PriceBounds& bounds, std::size_t intervals);

/// Worst ratio of one reservation over every two-day sequence on the grid.
double worst_two_day_ratio_serial(const std::vector<double>& grid, double reservation);
double worst_two_day_ratio_parallel(const std::vector<double>& grid, double reservation);

/// For each first-day price q on the grid, the worst ratio over all second
/// days x when q is accepted (best/q) and when it is rejected (best/x).
struct TwoDayProfile {
  std::vector<double> accepted;
  std::vector<double> rejected;
};

TwoDayProfile two_day_profile_serial(const std::vector<double>& grid);
TwoDayProfile two_day_profile_parallel(const std::vector<double>& grid);

/// Worst two-day ratio of every grid price used as reservation, from a profile.
std::vector<double> worst_ratio_by_reservation(const std::vector<double>& grid,
                                               const TwoDayProfile& profile);

}  // namespace osearch::kernels
