#include "osearch/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "osearch/error.hpp"

namespace osearch::kernels {

std::vector<double> centered_geometric_grid(const PriceBounds& bounds, std::size_t intervals) {
  if (intervals < 1) fail(ErrorKind::invalid_parameter, "grid needs at least one interval");
  const double center = std::sqrt(bounds.lo() * bounds.hi());
  const double half = 0.5 * static_cast<double>(intervals);
  std::vector<double> grid(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double offset = (static_cast<double>(i) - half) / static_cast<double>(intervals);
    grid[i] = std::clamp(center * std::pow(bounds.spread(), offset), bounds.lo(), bounds.hi());
  }
  grid.front() = bounds.lo();
  grid.back() = bounds.hi();
  return grid;
}

namespace {

inline double two_day_ratio(double q, double x, double reservation) {
  const double accepted = q >= reservation ? q : x;
  return std::max(q, x) / accepted;
}

}  // namespace

double worst_two_day_ratio_serial(const std::vector<double>& grid, double reservation) {
  double worst = 1.0;
  for (double q : grid) {
    for (double x : grid) worst = std::max(worst, two_day_ratio(q, x, reservation));
  }
  return worst;
}

double worst_two_day_ratio_parallel(const std::vector<double>& grid, double reservation) {
  const auto size = static_cast<long>(grid.size());
  const double* g = grid.data();
  double worst = 1.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long i = 0; i < size; ++i) {
    for (long j = 0; j < size; ++j) worst = std::max(worst, two_day_ratio(g[i], g[j], reservation));
  }
  return worst;
}

TwoDayProfile two_day_profile_serial(const std::vector<double>& grid) {
  TwoDayProfile profile{std::vector<double>(grid.size(), 1.0),
                        std::vector<double>(grid.size(), 1.0)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (double x : grid) {
      const double best = std::max(grid[i], x);
      profile.accepted[i] = std::max(profile.accepted[i], best / grid[i]);
      profile.rejected[i] = std::max(profile.rejected[i], best / x);
    }
  }
  return profile;
}

TwoDayProfile two_day_profile_parallel(const std::vector<double>& grid) {
  TwoDayProfile profile{std::vector<double>(grid.size(), 1.0),
                        std::vector<double>(grid.size(), 1.0)};
  const auto size = static_cast<long>(grid.size());
  const double* g = grid.data();
  double* acc = profile.accepted.data();
  double* rej = profile.rejected.data();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < size; ++i) {
    double a = 1.0;
    double r = 1.0;
    for (long j = 0; j < size; ++j) {
      const double best = std::max(g[i], g[j]);
      a = std::max(a, best / g[i]);
      r = std::max(r, best / g[j]);
    }
    acc[i] = a;
    rej[i] = r;
  }
  return profile;
}

std::vector<double> worst_ratio_by_reservation(const std::vector<double>& grid,
                                               const TwoDayProfile& profile) {
  const std::size_t size = grid.size();
  // Reservation grid[j] accepts first-day prices grid[i] with i >= j.
  std::vector<double> suffix_accept(size + 1, 1.0);
  for (std::size_t i = size; i-- > 0;) {
    suffix_accept[i] = std::max(suffix_accept[i + 1], profile.accepted[i]);
  }
  std::vector<double> worst(size);
  double prefix_reject = 1.0;
  for (std::size_t j = 0; j < size; ++j) {
    worst[j] = std::max(suffix_accept[j], prefix_reject);
    prefix_reject = std::max(prefix_reject, profile.rejected[j]);
  }
  return worst;
}

}  // namespace osearch::kernels
