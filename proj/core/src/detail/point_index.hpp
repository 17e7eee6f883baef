#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bohr::detail {

/// Uniform bucket grid over a planar point set for exact nearest-neighbour
/// queries. Rings of cells are visited outward until no unvisited cell can
/// hold a closer point.
class PointIndex {
 public:
  explicit PointIndex(std::span<const std::complex<double>> points);

  /// Distance to the nearest indexed point; +inf for an empty index. With
  /// skip_coincident, points at distance exactly 0 are ignored.
  double nearest_distance(std::complex<double> q, bool skip_coincident = false) const;

 private:
  std::size_t cell_of(double v, double origin, std::size_t cells) const;

  double min_x_ = 0.0;
  double min_y_ = 0.0;
  double cell_ = 1.0;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::complex<double>> sorted_;
};

}  // namespace bohr::detail
