#pragma once

// Finite point sets snapped to a delta-grid. Points are stored as integer
// lattice cells, so set equality is exact and ordering canonical.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace choice_dyn {

inline constexpr std::size_t kMaxDim = 3;

using Point = std::array<double, kMaxDim>;
using Cell = std::array<std::int64_t, kMaxDim>;

/// Distance on real points. An empty Metric means euclidean.
using Metric = std::function<double(const Point&, const Point&)>;

/// Nearest grid node, ties toward -infinity. With delta == 0 the lattice is
/// the integers themselves and the coordinate must already be integral.
Cell snap(const Point& p, std::size_t dim, double delta);
Point cell_center(const Cell& c, std::size_t dim, double delta);

class PointCloud {
public:
  PointCloud() = default;
  PointCloud(std::size_t dim, double delta);

  /// Sorts and deduplicates.
  static PointCloud from_cells(std::size_t dim, double delta, std::vector<Cell> cells);
  /// Snaps, then sorts and deduplicates.
  static PointCloud from_points(std::size_t dim, double delta, std::span<const Point> points);
  /// Trusts the caller: `cells` must already be strictly increasing.
  static PointCloud from_sorted_cells(std::size_t dim, double delta, std::vector<Cell> cells);

  std::size_t dim() const noexcept { return dim_; }
  double delta() const noexcept { return delta_; }
  /// Length of one lattice step: delta, or 1 for exact integer lattices.
  double unit() const noexcept { return delta_ > 0 ? delta_ : 1.0; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  Point point(std::size_t i) const { return cell_center(cells_[i], dim_, delta_); }
  std::vector<Point> points() const;

  bool contains(const Cell& c) const;
  bool contains_point(const Point& p) const { return contains(snap(p, dim_, delta_)); }
  bool is_subset_of(const PointCloud& other) const;
  std::uint64_t hash() const noexcept;

  friend bool operator==(const PointCloud& a, const PointCloud& b) {
    return a.dim_ == b.dim_ && a.delta_ == b.delta_ && a.cells_ == b.cells_;
  }

private:
  std::size_t dim_ = 1;
  double delta_ = 0.0;
  std::vector<Cell> cells_;
};

PointCloud unite(const PointCloud& a, const PointCloud& b);
PointCloud unite(std::span<const PointCloud> clouds);
PointCloud intersection(const PointCloud& a, const PointCloud& b);

/// Bucket grid over the lattice cells of a cloud for euclidean nearest
/// neighbour queries.
class NearestIndex {
public:
  explicit NearestIndex(const PointCloud& cloud);

  /// Euclidean distance from p to the nearest cloud point.
  double nearest(const Point& p) const;
  /// Squared distance in lattice units from a cell on the same lattice.
  double nearest_sq_cells(const Cell& q) const;

private:
  std::size_t dim_;
  double delta_;
  double unit_;
  std::int64_t bucket_;
  Cell origin_{};
  std::array<std::int64_t, kMaxDim> extent_{};
  std::vector<std::size_t> offsets_;
  std::vector<Cell> items_;
};

/// sup over a in A of inf over b in B of d(a, b). Throws on empty input.
double directed_distance(const PointCloud& a, const PointCloud& b, const Metric& metric = {});
double hausdorff(const PointCloud& a, const PointCloud& b, const Metric& metric = {});

}  // namespace choice_dyn
