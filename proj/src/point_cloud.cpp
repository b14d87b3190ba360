#include "choice_dyn/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace choice_dyn {

Cell snap(const Point& p, std::size_t dim, double delta) {
  Cell c{};
  for (std::size_t k = 0; k < dim; ++k) {
    if (delta > 0) {
      c[k] = static_cast<std::int64_t>(std::ceil(p[k] / delta - 0.5));
    } else {
      const double r = std::round(p[k]);
      if (r != p[k]) throw std::domain_error("snap: exact lattice requires integral coordinates");
      c[k] = static_cast<std::int64_t>(r);
    }
  }
  return c;
}

Point cell_center(const Cell& c, std::size_t dim, double delta) {
  Point p{};
  const double unit = delta > 0 ? delta : 1.0;
  for (std::size_t k = 0; k < dim; ++k) p[k] = static_cast<double>(c[k]) * unit;
  return p;
}

PointCloud::PointCloud(std::size_t dim, double delta) : dim_(dim), delta_(delta) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("PointCloud: unsupported dimension");
  if (!(delta >= 0)) throw std::invalid_argument("PointCloud: delta must be >= 0");
}

PointCloud PointCloud::from_cells(std::size_t dim, double delta, std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return from_sorted_cells(dim, delta, std::move(cells));
}

PointCloud PointCloud::from_points(std::size_t dim, double delta, std::span<const Point> points) {
  std::vector<Cell> cells;
  cells.reserve(points.size());
  for (const Point& p : points) cells.push_back(snap(p, dim, delta));
  return from_cells(dim, delta, std::move(cells));
}

PointCloud PointCloud::from_sorted_cells(std::size_t dim, double delta, std::vector<Cell> cells) {
  PointCloud out(dim, delta);
  out.cells_ = std::move(cells);
  return out;
}

std::vector<Point> PointCloud::points() const {
  std::vector<Point> out;
  out.reserve(cells_.size());
  for (const Cell& c : cells_) out.push_back(cell_center(c, dim_, delta_));
  return out;
}

bool PointCloud::contains(const Cell& c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

bool PointCloud::is_subset_of(const PointCloud& other) const {
  return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(), cells_.end());
}

std::uint64_t PointCloud::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(cells_.size());
  for (const Cell& c : cells_)
    for (std::size_t k = 0; k < dim_; ++k) mix(static_cast<std::uint64_t>(c[k]));
  return h;
}

namespace {

void require_compatible(const PointCloud& a, const PointCloud& b) {
  if (a.dim() != b.dim() || a.delta() != b.delta())
    throw std::invalid_argument("point clouds live on different lattices");
}

}  // namespace

PointCloud unite(const PointCloud& a, const PointCloud& b) {
  require_compatible(a, b);
  std::vector<Cell> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(), std::back_inserter(out));
  return PointCloud::from_sorted_cells(a.dim(), a.delta(), std::move(out));
}

PointCloud unite(std::span<const PointCloud> clouds) {
  if (clouds.empty()) throw std::invalid_argument("unite: no clouds");
  std::vector<Cell> all;
  for (const auto& c : clouds) {
    require_compatible(clouds.front(), c);
    all.insert(all.end(), c.cells().begin(), c.cells().end());
  }
  return PointCloud::from_cells(clouds.front().dim(), clouds.front().delta(), std::move(all));
}

PointCloud intersection(const PointCloud& a, const PointCloud& b) {
  require_compatible(a, b);
  std::vector<Cell> out;
  std::set_intersection(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                        std::back_inserter(out));
  return PointCloud::from_sorted_cells(a.dim(), a.delta(), std::move(out));
}

NearestIndex::NearestIndex(const PointCloud& cloud)
    : dim_(cloud.dim()), delta_(cloud.delta()), unit_(cloud.unit()), bucket_(1) {
  if (cloud.empty()) throw std::invalid_argument("NearestIndex: empty cloud");
  Cell lo = cloud.cells().front(), hi = lo;
  for (const Cell& c : cloud.cells()) {
    for (std::size_t k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
  // Roughly one point per bucket.
  double volume = 1.0;
  for (std::size_t k = 0; k < dim_; ++k) volume *= static_cast<double>(hi[k] - lo[k] + 1);
  const double side = std::pow(volume / static_cast<double>(cloud.size()), 1.0 / static_cast<double>(dim_));
  bucket_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(side)));

  origin_ = lo;
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim_; ++k) {
    extent_[k] = (hi[k] - lo[k]) / bucket_ + 1;
    total *= static_cast<std::size_t>(extent_[k]);
  }
  auto bucket_of = [&](const Cell& c) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dim_; ++k)
      idx = idx * static_cast<std::size_t>(extent_[k]) + static_cast<std::size_t>((c[k] - origin_[k]) / bucket_);
    return idx;
  };
  offsets_.assign(total + 1, 0);
  for (const Cell& c : cloud.cells()) ++offsets_[bucket_of(c) + 1];
  for (std::size_t i = 0; i < total; ++i) offsets_[i + 1] += offsets_[i];
  items_.resize(cloud.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Cell& c : cloud.cells()) items_[fill[bucket_of(c)]++] = c;
}

double NearestIndex::nearest(const Point& p) const {
  std::array<double, kMaxDim> q{};
  for (std::size_t k = 0; k < dim_; ++k) q[k] = p[k] / unit_;

  std::array<std::int64_t, kMaxDim> qb{};
  std::int64_t r0 = 0, r_max = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double rel = std::floor((q[k] - static_cast<double>(origin_[k])) / static_cast<double>(bucket_));
    qb[k] = static_cast<std::int64_t>(std::clamp(rel, -4e18, 4e18));
    if (qb[k] < 0) r0 = std::max(r0, -qb[k]);
    if (qb[k] >= extent_[k]) r0 = std::max(r0, qb[k] - extent_[k] + 1);
    r_max = std::max({r_max, std::abs(qb[k]), std::abs(qb[k] - extent_[k] + 1)});
  }

  double best = std::numeric_limits<double>::infinity();
  auto scan_bucket = [&](const std::array<std::int64_t, kMaxDim>& b) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dim_; ++k) idx = idx * static_cast<std::size_t>(extent_[k]) + static_cast<std::size_t>(b[k]);
    for (std::size_t i = offsets_[idx]; i < offsets_[idx + 1]; ++i) {
      double s = 0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double d = static_cast<double>(items_[i][k]) - q[k];
        s += d * d;
      }
      best = std::min(best, s);
    }
  };

  std::array<std::int64_t, kMaxDim> b{};
  for (std::int64_t r = r0; r <= r_max; ++r) {
    // Visit buckets at Chebyshev distance exactly r from qb.
    auto visit = [&](auto&& self, std::size_t k, bool on_shell) -> void {
      const std::int64_t lo = std::max<std::int64_t>(0, qb[k] - r);
      const std::int64_t hi = std::min<std::int64_t>(extent_[k] - 1, qb[k] + r);
      if (k + 1 == dim_) {
        if (on_shell) {
          for (b[k] = lo; b[k] <= hi; ++b[k]) scan_bucket(b);
        } else {
          if (qb[k] - r >= 0 && qb[k] - r < extent_[k]) {
            b[k] = qb[k] - r;
            scan_bucket(b);
          }
          if (r > 0 && qb[k] + r >= 0 && qb[k] + r < extent_[k]) {
            b[k] = qb[k] + r;
            scan_bucket(b);
          }
        }
        return;
      }
      for (b[k] = lo; b[k] <= hi; ++b[k]) self(self, k + 1, on_shell || std::abs(b[k] - qb[k]) == r);
    };
    visit(visit, 0, false);
    const double bound = static_cast<double>(r) * static_cast<double>(bucket_);
    if (best <= bound * bound) break;
  }
  return std::sqrt(best) * unit_;
}

double NearestIndex::nearest_sq_cells(const Cell& q) const {
  const double d = nearest(cell_center(q, dim_, delta_)) / unit_;
  return d * d;
}

double directed_distance(const PointCloud& a, const PointCloud& b, const Metric& metric) {
  if (a.empty() || b.empty()) throw std::invalid_argument("directed_distance: empty point cloud");
  if (a.dim() != b.dim()) throw std::invalid_argument("directed_distance: dimension mismatch");
  double worst = 0;
  if (!metric) {
    const NearestIndex index(b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (b.delta() == a.delta() && b.contains(a.cells()[i])) continue;
      worst = std::max(worst, index.nearest(a.point(i)));
    }
    return worst;
  }
  const auto bp = b.points();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point p = a.point(i);
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : bp) {
      best = std::min(best, metric(p, q));
      if (best <= worst) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff(const PointCloud& a, const PointCloud& b, const Metric& metric) {
  return std::max(directed_distance(a, b, metric), directed_distance(b, a, metric));
}

}  // namespace choice_dyn
