#include "pascu/grids.hpp"

#include <cmath>
#include <numbers>

#include "pascu/errors.hpp"

namespace pascu {

void DiskGrid::validate() const {
  if (radii.empty()) throw DomainError("disk grid needs at least one radius");
  if (angles.size() < 8) throw DomainError("disk grid needs at least 8 angles");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0)) throw DomainError("disk grid radii must lie in (0, 1)");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("disk grid radii must ascend");
  }
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!(angles[i] >= 0.0 && angles[i] < 2.0 * std::numbers::pi)) {
      throw DomainError("disk grid angles must lie in [0, 2 pi)");
    }
    if (i > 0 && !(angles[i] > angles[i - 1])) throw DomainError("disk grid angles must ascend");
  }
}

DiskGrid make_disk_grid(int n_radii, int n_angles, double r_max) {
  if (n_radii < 1 || n_angles < 1) throw DomainError("disk grid sizes must be positive");
  if (!(r_max > 0.0 && r_max < 1.0)) throw DomainError("maximum radius must lie in (0, 1)");
  DiskGrid g;
  for (int i = 1; i <= n_radii; ++i) g.radii.push_back(r_max * i / n_radii);
  for (int j = 0; j < n_angles; ++j) g.angles.push_back(2.0 * std::numbers::pi * j / n_angles);
  g.validate();
  return g;
}

std::vector<std::complex<double>> circle_grid(int n) {
  if (n < 1) throw DomainError("circle grid needs at least one point");
  std::vector<std::complex<double>> out;
  for (int j = 0; j < n; ++j) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / n));
  return out;
}

std::vector<double> default_t_grid(int n, double lo, double hi) {
  if (n < 2) throw DomainError("grid too coarse");
  if (!(lo > 0.0 && hi < 1.0 && lo < hi)) throw DomainError("t-grid bounds must satisfy 0 < lo < hi < 1");
  const double a = std::log(lo / (1.0 - lo));
  const double b = std::log(hi / (1.0 - hi));
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * i / (n - 1);
    g[i] = 1.0 / (1.0 + std::exp(-x));
  }
  return g;
}

void validate_t_grid(const std::vector<double>& grid) {
  if (grid.size() < 64) throw DomainError("grid too coarse");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw DomainError("t-grid points must lie in (0, 1)");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("t-grid must be strictly increasing");
  }
}

}  // namespace pascu
