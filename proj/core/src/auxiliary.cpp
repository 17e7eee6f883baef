#include "bohr/auxiliary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bohr/error.hpp"
#include "detail/parallel.hpp"
#include "detail/point_index.hpp"

namespace bohr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dimension(const ExponentialSum& f, std::span<const double> x) {
  if (x.size() != f.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "torus point has " + std::to_string(x.size()) +
                                                   " coordinates, basis dimension is " +
                                                   std::to_string(f.dimension()));
  }
}

// a_j exp(lambda_j sigma)
std::vector<Complex> scaled_coefficients(const ExponentialSum& f, double sigma) {
  std::vector<Complex> out;
  out.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    out.push_back(f.terms()[j].coeff * std::exp(f.exponents()[j] * sigma));
  }
  return out;
}

std::size_t grid_size(std::size_t per_dim, std::size_t dim, const SamplingLimits& limits) {
  if (per_dim == 0) throw Error(ErrorCode::invalid_input, "grid size must be >= 1");
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (total > limits.max_grid_points / per_dim) {
      throw Error(ErrorCode::budget_exceeded,
                  "torus grid of " + std::to_string(per_dim) + "^" + std::to_string(dim) +
                      " points exceeds the cap of " + std::to_string(limits.max_grid_points) +
                      "; use quasi-random sampling");
    }
    total *= per_dim;
  }
  return total;
}

void sample_grid_slice(const ExponentialSum& f, double sigma, std::size_t n, std::size_t total,
                       std::span<Complex> out) {
  const std::size_t dim = f.dimension();
  const std::vector<Complex> coeffs = scaled_coefficients(f, sigma);
  std::vector<Complex> roots(n);
  for (std::size_t m = 0; m < n; ++m) {
    roots[m] = std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(n));
  }
  const auto ni = static_cast<std::int64_t>(n);
  detail::parallel_chunks(total, 8192, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<std::int64_t> node(dim);
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t rest = idx;
      for (std::size_t k = dim; k-- > 0;) {
        node[k] = static_cast<std::int64_t>(rest % n);
        rest /= n;
      }
      Complex value(0.0, 0.0);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const auto& r = f.terms()[j].r.coords;
        std::int64_t phase = 0;
        for (std::size_t k = 0; k < dim; ++k) phase += r[k] * node[k];
        phase %= ni;
        if (phase < 0) phase += ni;
        value += coeffs[j] * roots[static_cast<std::size_t>(phase)];
      }
      out[idx] = value;
    }
  });
}

// Additive recurrence with the generalised golden ratio of dimension d.
std::vector<double> kronecker_steps(std::size_t dim) {
  double phi = 1.5;
  for (int it = 0; it < 64; ++it) {
    const double f = std::pow(phi, static_cast<double>(dim + 1)) - phi - 1.0;
    const double df = static_cast<double>(dim + 1) * std::pow(phi, static_cast<double>(dim)) - 1.0;
    phi -= f / df;
  }
  std::vector<double> alpha(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    alpha[k] = std::fmod(1.0 / std::pow(phi, static_cast<double>(k + 1)), 1.0);
  }
  return alpha;
}

void sample_quasi_random_slice(const ExponentialSum& f, double sigma, const QuasiRandomSampler& s,
                               std::span<Complex> out) {
  const std::size_t dim = f.dimension();
  const std::vector<Complex> coeffs = scaled_coefficients(f, sigma);
  const std::vector<double> alpha = kronecker_steps(dim);
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(dim);
  for (auto& v : shift) v = unit(rng);

  detail::parallel_chunks(s.count, 8192, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> x(dim);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        const long double u = std::fmod(static_cast<long double>(shift[k]) +
                                            static_cast<long double>(i + 1) * alpha[k],
                                        1.0L);
        x[k] = kTwoPi * static_cast<double>(u);
      }
      Complex value(0.0, 0.0);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const auto& r = f.terms()[j].r.coords;
        long double phase = 0.0L;
        for (std::size_t k = 0; k < dim; ++k) phase += static_cast<long double>(r[k]) * x[k];
        value += coeffs[j] * std::polar(1.0, static_cast<double>(phase));
      }
      out[i] = value;
    }
  });
}

struct SliceLayout {
  std::size_t size;
  SamplerInfo info;
};

SliceLayout layout_for(const ExponentialSum& f, const TorusSampler& sampler, const SamplingLimits& limits) {
  const std::size_t dim = f.dimension();
  if (const auto* g = std::get_if<GridSampler>(&sampler)) {
    const std::size_t total = grid_size(g->per_dim, dim, limits);
    return {total, SamplerInfo{SamplerKind::torus_grid, dim, g->per_dim, total, 0, 0.0, 0.0}};
  }
  const auto& q = std::get<QuasiRandomSampler>(sampler);
  if (q.count == 0) throw Error(ErrorCode::invalid_input, "sample count must be >= 1");
  return {q.count, SamplerInfo{SamplerKind::quasi_random, dim, 0, q.count, q.seed, 0.0, 0.0}};
}

void fill_slice(const ExponentialSum& f, double sigma, const TorusSampler& sampler, const SliceLayout& layout,
                std::span<Complex> out) {
  if (const auto* g = std::get_if<GridSampler>(&sampler)) {
    sample_grid_slice(f, sigma, g->per_dim, layout.size, out);
  } else {
    sample_quasi_random_slice(f, sigma, std::get<QuasiRandomSampler>(sampler), out);
  }
}

}  // namespace

Complex eval_F(const ExponentialSum& f, double sigma, std::span<const double> x, StripPolicy policy) {
  require_in_strip(f, sigma, policy);
  require_dimension(f, x);
  Complex total(0.0, 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& r = f.terms()[j].r.coords;
    long double phase = 0.0L;
    for (std::size_t k = 0; k < r.size(); ++k) phase += static_cast<long double>(r[k]) * x[k];
    total += f.terms()[j].coeff * std::exp(f.exponents()[j] * sigma) *
             std::polar(1.0, static_cast<double>(phase));
  }
  return total;
}

Complex diagonal_restriction(const ExponentialSum& f, double sigma, double t, StripPolicy policy) {
  std::vector<double> x(f.basis().values());
  for (double& v : x) v *= t;
  return eval_F(f, sigma, x, policy);
}

ImageCloud sample_image(const ExponentialSum& f, double sigma0, const TorusSampler& sampler,
                        const SamplingLimits& limits, StripPolicy policy) {
  require_in_strip(f, sigma0, policy);
  const SliceLayout layout = layout_for(f, sampler, limits);
  ImageCloud cloud;
  cloud.sigma_grid = {sigma0};
  cloud.slice_size = layout.size;
  cloud.sampler = layout.info;
  cloud.points.resize(layout.size);
  fill_slice(f, sigma0, sampler, layout, cloud.points);
  return cloud;
}

SigmaRange SigmaRange::open_default_density(double lo, double hi) {
  const double width = hi - lo;
  const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(kDefaultDensity * width)));
  return open(lo, hi, count);
}

std::vector<double> SigmaRange::grid() const {
  if (count == 0) throw Error(ErrorCode::invalid_input, "sigma count must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::invalid_input, "sigma range must be finite");
  }
  if (compact ? !(lo <= hi) : !(lo < hi)) {
    throw Error(ErrorCode::invalid_input, "sigma range needs lo < hi (lo <= hi when compact)");
  }
  if (count == 1) return {lo + 0.5 * (hi - lo)};
  const double margin = compact ? 0.0 : kOpenMargin * (hi - lo);
  const double first = lo + margin;
  const double last = hi - margin;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = last;
  return out;
}

ImageCloud sample_union(const ExponentialSum& f, const SigmaRange& range, const TorusSampler& sampler,
                        const SamplingLimits& limits) {
  const std::vector<double> sigmas = range.grid();
  for (double s : sigmas) {
    if (!f.strip().contains(s)) {
      throw Error(ErrorCode::out_of_domain, "sigma range is not inside the strip of the sum");
    }
  }
  const SliceLayout layout = layout_for(f, sampler, limits);
  ImageCloud cloud;
  cloud.sigma_grid = sigmas;
  cloud.slice_size = layout.size;
  cloud.sampler = layout.info;
  cloud.points.resize(layout.size * sigmas.size());
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    fill_slice(f, sigmas[s], sampler, layout,
               std::span<Complex>(cloud.points).subspan(s * layout.size, layout.size));
  }
  return cloud;
}

double neighbor_spacing(const ImageCloud& cloud) {
  if (cloud.empty()) throw Error(ErrorCode::invalid_input, "spacing of an empty cloud");
  const auto& pts = cloud.points;
  const std::size_t slice = cloud.slice_size ? cloud.slice_size : pts.size();
  const std::size_t slices = pts.size() / slice;

  switch (cloud.sampler.kind) {
    case SamplerKind::vertical_line: {
      double m = 0.0;
      for (std::size_t s = 0; s < slices; ++s) {
        for (std::size_t i = 1; i < slice; ++i) {
          m = std::max(m, std::abs(pts[s * slice + i] - pts[s * slice + i - 1]));
        }
      }
      return m;
    }
    case SamplerKind::torus_grid: {
      const std::size_t n = cloud.sampler.grid_per_dim;
      const std::size_t dim = cloud.sampler.dimension;
      if (n <= 1) return 0.0;
      // Row-major lattice, last axis fastest: axis k has stride n^(dim-1-k).
      std::vector<std::size_t> stride(dim, 1);
      for (std::size_t k = dim - 1; k-- > 0;) stride[k] = stride[k + 1] * n;
      std::vector<double> chunk_max(detail::chunk_count_upper_bound(), 0.0);
      detail::parallel_chunks(pts.size(), 8192, [&](std::size_t begin, std::size_t end, std::size_t c) {
        double m = 0.0;
        for (std::size_t idx = begin; idx < end; ++idx) {
          const std::size_t base = (idx / slice) * slice;
          const std::size_t local = idx - base;
          for (std::size_t k = 0; k < dim; ++k) {
            const std::size_t digit = (local / stride[k]) % n;
            const std::size_t next = digit + 1 == n ? local - digit * stride[k] : local + stride[k];
            m = std::max(m, std::abs(pts[idx] - pts[base + next]));
          }
        }
        chunk_max[c] = m;
      });
      return *std::max_element(chunk_max.begin(), chunk_max.end());
    }
    case SamplerKind::quasi_random: {
      const detail::PointIndex index(pts);
      double m = 0.0;
      for (const auto& p : pts) {
        const double d = index.nearest_distance(p, true);
        if (std::isfinite(d)) m = std::max(m, d);
      }
      return m;
    }
  }
  return 0.0;
}

double check_basis_independence(const ExponentialSum& over_g, const ExponentialSum& over_h, double sigma0,
                                const TorusSampler& sampler, const SamplingLimits& limits) {
  if (over_g.size() != over_h.size()) {
    throw Error(ErrorCode::representation_mismatch, "representations have different numbers of terms");
  }
  for (std::size_t j = 0; j < over_g.size(); ++j) {
    const double lg = over_g.exponents()[j];
    const double lh = over_h.exponents()[j];
    if (std::abs(lg - lh) > 1e-12 * std::max(1.0, std::abs(lg))) {
      throw Error(ErrorCode::representation_mismatch, "representations resolve to different exponents");
    }
    const Complex ag = over_g.terms()[j].coeff;
    const Complex ah = over_h.terms()[j].coeff;
    if (std::abs(ag - ah) > 1e-12 * std::max(1.0, std::abs(ag))) {
      throw Error(ErrorCode::representation_mismatch, "representations have different coefficients");
    }
  }
  const ImageCloud a = sample_image(over_g, sigma0, sampler, limits);
  const ImageCloud b = sample_image(over_h, sigma0, sampler, limits);
  return hausdorff(a, b);
}

}  // namespace bohr
