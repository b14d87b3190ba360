#include <cmath>
#include <random>
#include <stdexcept>

#include "choice_dyn/point_cloud.hpp"
#include "doctest.h"

using namespace choice_dyn;

namespace {

PointCloud cloud1(std::initializer_list<double> xs, double delta = 0.1) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x, 0, 0});
  return PointCloud::from_points(1, delta, pts);
}

}  // namespace

TEST_CASE("snap rounds to nearest node, ties toward -inf") {
  CHECK(snap({0.26, 0, 0}, 1, 0.1)[0] == 3);
  CHECK(snap({0.24, 0, 0}, 1, 0.1)[0] == 2);
  CHECK(snap({0.5, 0, 0}, 1, 1.0)[0] == 0);
  CHECK(snap({-0.5, 0, 0}, 1, 1.0)[0] == -1);
  CHECK(snap({1.5, -2.5, 0}, 2, 1.0) == Cell{1, -3, 0});
  CHECK(snap({7, 3, 0}, 2, 0.0) == Cell{7, 3, 0});
  CHECK(cell_center({3, 0, 0}, 1, 0.25)[0] == 0.75);
}

TEST_CASE("clouds are sorted and unique") {
  const PointCloud c = cloud1({0.3, 0.1, 0.31, 0.1, -0.2});
  REQUIRE(c.size() == 3);
  CHECK(c.cells()[0][0] == -2);
  CHECK(c.cells()[1][0] == 1);
  CHECK(c.cells()[2][0] == 3);
  CHECK(c.contains_point({0.29, 0, 0}));
  CHECK_FALSE(c.contains_point({0.2, 0, 0}));
  CHECK(c == cloud1({-0.2, 0.1, 0.3}));
  CHECK(c.hash() == cloud1({-0.2, 0.1, 0.3}).hash());
}

TEST_CASE("set operations") {
  const PointCloud a = cloud1({0, 0.1, 0.2}), b = cloud1({0.2, 0.3});
  CHECK(unite(a, b).size() == 4);
  CHECK(intersection(a, b) == cloud1({0.2}));
  CHECK(cloud1({0.1}).is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
  const std::vector<PointCloud> many{a, b, cloud1({0.9})};
  CHECK(unite(many).size() == 5);
}

TEST_CASE("hausdorff examples") {
  const PointCloud zero = cloud1({0}, 1.0), one = cloud1({1}, 1.0), both = cloud1({0, 1}, 1.0);
  CHECK(hausdorff(zero, one) == 1.0);
  CHECK(hausdorff(both, both) == 0.0);
  CHECK(hausdorff(both, zero) == 1.0);
  CHECK(directed_distance(zero, both) == 0.0);
  CHECK(directed_distance(both, zero) == 1.0);
  CHECK_THROWS_AS(hausdorff(PointCloud(1, 1.0), zero), std::invalid_argument);
}

TEST_CASE("hausdorff with a custom metric") {
  const Metric taxicab = [](const Point& a, const Point& b) { return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]); };
  const auto a = PointCloud::from_points(2, 1.0, std::vector<Point>{{0, 0, 0}});
  const auto b = PointCloud::from_points(2, 1.0, std::vector<Point>{{1, 1, 0}});
  CHECK(hausdorff(a, b, taxicab) == 2.0);
  CHECK(hausdorff(a, b) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("property: nearest index agrees with brute force") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    std::vector<Point> pts;
    for (int i = 0; i < 400; ++i) pts.push_back({u(rng), dim > 1 ? u(rng) : 0, dim > 2 ? u(rng) : 0});
    const PointCloud c = PointCloud::from_points(dim, 0.01, pts);
    const NearestIndex idx(c);
    for (int q = 0; q < 200; ++q) {
      const Point p{3 * u(rng), dim > 1 ? 3 * u(rng) : 0, dim > 2 ? 3 * u(rng) : 0};
      double best = INFINITY;
      for (const Point& x : c.points()) {
        double s = 0;
        for (std::size_t k = 0; k < dim; ++k) s += (x[k] - p[k]) * (x[k] - p[k]);
        best = std::min(best, std::sqrt(s));
      }
      CHECK(idx.nearest(p) == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: hausdorff is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  auto random_cloud = [&] {
    std::vector<Point> pts(1 + rng() % 50);
    for (auto& p : pts) p = {u(rng), u(rng), 0};
    return PointCloud::from_points(2, 0.01, pts);
  };
  for (int i = 0; i < 50; ++i) {
    const PointCloud a = random_cloud(), b = random_cloud(), c = random_cloud();
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
  }
}
