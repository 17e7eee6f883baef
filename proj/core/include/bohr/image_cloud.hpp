#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bohr {

enum class SamplerKind { vertical_line, torus_grid, quasi_random };

/// How a cloud was produced. Grid clouds keep their lattice layout so the
/// spacing between neighbouring nodes can be measured afterwards.
struct SamplerInfo {
  SamplerKind kind = SamplerKind::torus_grid;
  std::size_t dimension = 0;     // torus dimension K (1 for vertical lines)
  std::size_t grid_per_dim = 0;  // torus_grid only
  std::size_t count = 0;         // points per sigma slice
  std::uint64_t seed = 0;        // quasi_random only
  double t_min = 0.0;            // vertical_line only
  double t_max = 0.0;

  friend bool operator==(const SamplerInfo&, const SamplerInfo&) = default;
};

/// Finite sample of an image set. Points are stored slice by slice: point i
/// belongs to sigma_grid[i / slice_size]. Vertical-line clouds also record the
/// t parameter of each point.
struct ImageCloud {
  std::vector<std::complex<double>> points;
  std::vector<double> sigma_grid;
  std::size_t slice_size = 0;
  std::vector<double> ts;
  SamplerInfo sampler;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  double sigma_of(std::size_t i) const { return sigma_grid.at(slice_size ? i / slice_size : 0); }
  /// NaN when the cloud was not sampled along a vertical line.
  double t_of(std::size_t i) const;
  double max_modulus() const noexcept;
};

}  // namespace bohr
