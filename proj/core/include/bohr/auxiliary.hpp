#pragma once

// The auxiliary function F_f(sigma, x) = sum_j a_j exp(lambda_j sigma) exp(i <r_j, x>)
// on the torus, and finite samples of its value sets.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>

#include "bohr/image_cloud.hpp"
#include "bohr/sums.hpp"

namespace bohr {

Complex eval_F(const ExponentialSum& f, double sigma, std::span<const double> x,
               StripPolicy policy = StripPolicy::enforce);

/// F_f(sigma, t g) with g the basis values; agrees with evaluate(f, sigma + i t).
Complex diagonal_restriction(const ExponentialSum& f, double sigma, double t,
                             StripPolicy policy = StripPolicy::enforce);

/// Full lattice (2 pi / n) Z^K on the torus, n^K nodes.
struct GridSampler {
  std::size_t per_dim = 32;
};

/// Seeded Kronecker (additive-recurrence) sequence on the torus.
struct QuasiRandomSampler {
  std::size_t count = 1 << 16;
  std::uint64_t seed = 0;
};

using TorusSampler = std::variant<GridSampler, QuasiRandomSampler>;

struct SamplingLimits {
  std::size_t max_grid_points = std::size_t{1} << 21;
};

ImageCloud sample_image(const ExponentialSum& f, double sigma0, const TorusSampler& sampler,
                        const SamplingLimits& limits = {}, StripPolicy policy = StripPolicy::enforce);

/// Real-part set E for unions of images. Open ranges keep a relative margin
/// away from both endpoints; compact ranges include them.
struct SigmaRange {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 1;
  bool compact = false;

  static constexpr double kDefaultDensity = 25.0;  // slices per unit length
  static constexpr double kOpenMargin = 1e-6;      // relative to hi - lo

  static SigmaRange open(double lo, double hi, std::size_t count) { return {lo, hi, count, false}; }
  static SigmaRange closed(double lo, double hi, std::size_t count) { return {lo, hi, count, true}; }
  /// Open range sampled at kDefaultDensity slices per unit length.
  static SigmaRange open_default_density(double lo, double hi);

  std::vector<double> grid() const;
};

ImageCloud sample_union(const ExponentialSum& f, const SigmaRange& range, const TorusSampler& sampler,
                        const SamplingLimits& limits = {});

/// Symmetric Hausdorff distance between two finite point sets (exact).
double hausdorff(std::span<const Complex> a, std::span<const Complex> b);
double hausdorff(const ImageCloud& a, const ImageCloud& b);

/// Largest distance from a point of `from` to its nearest point of `to`.
double directed_hausdorff(std::span<const Complex> from, std::span<const Complex> to);

/// Empirical sampling resolution of a cloud: the largest distance between
/// images of neighbouring lattice nodes (torus axes with wrap-around,
/// consecutive t on vertical lines). Quasi-random clouds have no lattice and
/// use the largest nearest-neighbour distance among distinct points.
double neighbor_spacing(const ImageCloud& cloud);

/// Hausdorff distance between the torus images of two representations of the
/// same sum over different integral bases. Throws
/// ErrorCode::representation_mismatch unless both resolve to the same
/// exponents and coefficients.
double check_basis_independence(const ExponentialSum& over_g, const ExponentialSum& over_h, double sigma0,
                                const TorusSampler& sampler, const SamplingLimits& limits = {});

}  // namespace bohr
