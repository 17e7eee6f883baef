#include <algorithm>
#include <cmath>
#include <limits>

#include "bohr/auxiliary.hpp"
#include "bohr/error.hpp"
#include "detail/parallel.hpp"
#include "detail/point_index.hpp"

namespace bohr {

namespace detail {

PointIndex::PointIndex(std::span<const std::complex<double>> points) {
  if (points.empty()) {
    start_.assign(2, 0);
    return;
  }
  double max_x = points.front().real();
  double max_y = points.front().imag();
  min_x_ = max_x;
  min_y_ = max_y;
  for (const auto& p : points) {
    min_x_ = std::min(min_x_, p.real());
    max_x = std::max(max_x, p.real());
    min_y_ = std::min(min_y_, p.imag());
    max_y = std::max(max_y, p.imag());
  }
  const double w = max_x - min_x_;
  const double h = max_y - min_y_;
  const auto n = static_cast<double>(points.size());
  if (w > 0.0 && h > 0.0) {
    cell_ = std::sqrt(w * h / n);
  } else {
    cell_ = std::max(w, h) / n;
  }
  if (!(cell_ > 0.0)) cell_ = 1.0;
  const double budget = 4.0 * n + 16.0;
  for (;;) {
    const double cx = std::floor(w / cell_) + 1.0;
    const double cy = std::floor(h / cell_) + 1.0;
    if (cx * cy <= budget) {
      nx_ = static_cast<std::size_t>(cx);
      ny_ = static_cast<std::size_t>(cy);
      break;
    }
    cell_ *= 2.0;
  }

  std::vector<std::size_t> cell_ids(points.size());
  start_.assign(nx_ * ny_ + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t id = cell_of(points[i].imag(), min_y_, ny_) * nx_ + cell_of(points[i].real(), min_x_, nx_);
    cell_ids[i] = id;
    ++start_[id + 1];
  }
  for (std::size_t c = 0; c < nx_ * ny_; ++c) start_[c + 1] += start_[c];
  sorted_.resize(points.size());
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) sorted_[fill[cell_ids[i]]++] = points[i];
}

std::size_t PointIndex::cell_of(double v, double origin, std::size_t cells) const {
  const double c = std::floor((v - origin) / cell_);
  if (!(c > 0.0)) return 0;
  return std::min(cells - 1, static_cast<std::size_t>(c));
}

double PointIndex::nearest_distance(std::complex<double> q, bool skip_coincident) const {
  if (sorted_.empty()) return std::numeric_limits<double>::infinity();
  const auto cx = static_cast<std::int64_t>(cell_of(q.real(), min_x_, nx_));
  const auto cy = static_cast<std::int64_t>(cell_of(q.imag(), min_y_, ny_));
  const auto nx = static_cast<std::int64_t>(nx_);
  const auto ny = static_cast<std::int64_t>(ny_);

  double best2 = std::numeric_limits<double>::infinity();
  auto scan = [&](std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || x >= nx || y >= ny) return;
    const auto id = static_cast<std::size_t>(y * nx + x);
    for (std::size_t i = start_[id]; i < start_[id + 1]; ++i) {
      const double d2 = std::norm(sorted_[i] - q);
      if (skip_coincident && d2 == 0.0) continue;
      best2 = std::min(best2, d2);
    }
  };

  const std::int64_t max_ring = std::max(nx, ny);
  for (std::int64_t r = 0; r <= max_ring; ++r) {
    // Every point in ring r is at least (r - 1) cells away from q.
    if (r >= 1) {
      const double bound = static_cast<double>(r - 1) * cell_;
      if (best2 <= bound * bound) break;
    }
    if (r == 0) {
      scan(cx, cy);
      continue;
    }
    for (std::int64_t dx = -r; dx <= r; ++dx) {
      scan(cx + dx, cy - r);
      scan(cx + dx, cy + r);
    }
    for (std::int64_t dy = -r + 1; dy <= r - 1; ++dy) {
      scan(cx - r, cy + dy);
      scan(cx + r, cy + dy);
    }
  }
  return std::sqrt(best2);
}

}  // namespace detail

double directed_hausdorff(std::span<const Complex> from, std::span<const Complex> to) {
  if (from.empty() || to.empty()) throw Error(ErrorCode::invalid_input, "Hausdorff distance of an empty cloud");
  const detail::PointIndex index(to);
  std::vector<double> chunk_max(detail::chunk_count_upper_bound(), 0.0);
  detail::parallel_chunks(from.size(), 2048, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    double m = 0.0;
    for (std::size_t i = begin; i < end; ++i) m = std::max(m, index.nearest_distance(from[i]));
    chunk_max[chunk] = m;
  });
  return *std::max_element(chunk_max.begin(), chunk_max.end());
}

double hausdorff(std::span<const Complex> a, std::span<const Complex> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff(const ImageCloud& a, const ImageCloud& b) { return hausdorff(a.points, b.points); }

}  // namespace bohr
