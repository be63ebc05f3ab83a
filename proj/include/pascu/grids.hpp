#pragma once

#include <complex>
#include <vector>

namespace pascu {

/// Polar sample of the open unit disk.
struct DiskGrid {
  std::vector<double> radii;   // ascending, in (0, 1)
  std::vector<double> angles;  // ascending, in [0, 2 pi)

  void validate() const;
  std::size_t size() const noexcept { return radii.size() * angles.size(); }
};

/// n_radii equispaced radii r_max/n .. r_max, n_angles equispaced angles.
DiskGrid make_disk_grid(int n_radii, int n_angles, double r_max);

/// n equispaced points on the unit circle.
std::vector<std::complex<double>> circle_grid(int n);

/// n points on (lo, hi), equispaced in log(t/(1-t)).
std::vector<double> default_t_grid(int n = 512, double lo = 1e-6, double hi = 1.0 - 1e-6);

/// Throws DomainError("grid too coarse") below 64 points or for unsorted grids.
void validate_t_grid(const std::vector<double>& grid);

}  // namespace pascu
