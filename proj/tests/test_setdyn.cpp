#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "choice_dyn/models.hpp"
#include "choice_dyn/setdyn.hpp"
#include "doctest.h"

using namespace choice_dyn;

namespace {

UPString up(const char* s) { return UPString::parse(s); }

PointCloud points(std::size_t dim, double delta, std::vector<Point> pts) {
  return PointCloud::from_points(dim, delta, pts);
}

PointCloud labels(const char* s) {
  std::vector<Point> pts;
  for (const char* c = s; *c; ++c) pts.push_back(three_point_state(*c));
  return PointCloud::from_points(2, 0.0, pts);
}

double distance_to(const PointCloud& c, const Point& p) {
  return directed_distance(points(c.dim(), c.delta(), {p}), c);
}

}  // namespace

TEST_CASE("hutchinson_step examples") {
  const ModelSpec cantor = cantor_model();
  const double d = 1e-4;
  const PointCloud next = hutchinson_step(cantor, points(1, d, {{0, 0, 0}, {1, 0, 0}}));
  CHECK(next == points(1, d, {{0, 0, 0}, {1.0 / 3, 0, 0}, {2.0 / 3, 0, 0}, {1, 0, 0}}));

  const ModelSpec tp = three_point_model();
  CHECK(hutchinson_step(tp, labels("ABC")) == labels("ABC"));
}

TEST_CASE("apply_word") {
  const ModelSpec line = line_counterexample();
  const PointCloud one = points(1, 1e-3, {{1, 0, 0}});
  CHECK(apply_word(line, Word{}, one) == one);
  CHECK(apply_word(line, Word::parse("01"), one) == points(1, 1e-3, {{4, 0, 0}}));
  const ModelSpec tp = three_point_model();
  CHECK(apply_word(tp, Word::parse("0"), labels("ABC")) == apply_map(tp, 0, labels("ABC")));
  CHECK(apply_word(tp, Word::parse("001"), labels("A")) == labels("A"));
}

TEST_CASE("compute_K on small models") {
  const auto tp = compute_K(three_point_model(), 0.0, 0.0, 100);
  CHECK(tp.converged);
  CHECK(tp.cloud == labels("ABC"));

  // Single-map malaria system: both fixed points present.
  const ModelSpec m0 = malaria_single(kPset0);
  const double d = 1e-3;
  const auto k0 = compute_K(m0, d, d, 10000);
  CHECK(k0.converged);
  CHECK(distance_to(k0.cloud, {0, 0, 0}) <= 2 * d);
  CHECK(distance_to(k0.cloud, {11.0 / 15, 11.0 / 16, 0}) <= 2 * d);
  CHECK(k0.residual <= d);

  CHECK_THROWS_AS(compute_K(cantor_model(), 1e-3, 1e-4, 10), std::invalid_argument);
  const auto capped = compute_K(cantor_model(), 1e-4, 1e-4, 2);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 2);
}

TEST_CASE("K is invariant and seed independent") {
  const ModelSpec cantor = cantor_model();
  const double d = 1e-4;
  const auto k = compute_K(cantor, d, d, 1000);
  REQUIRE(k.converged);
  CHECK(hausdorff(hutchinson_step(cantor, k.cloud), k.cloud) <= 4 * d);
  const auto other = compute_K_from(cantor, points(1, d, {{0.5, 0, 0}}), d, 1000);
  REQUIRE(other.converged);
  CHECK(hausdorff(k.cloud, other.cloud) <= 2 * d);
}

TEST_CASE("individual attractors") {
  const ModelSpec m = malaria_model();
  SUBCASE("constant strategy reaches both ends of the heteroclinic curve") {
    const double d = 1e-3;
    const auto a = individual_attractor(m, up("(0)"), d);
    CHECK(a.converged);
    CHECK(a.cycle_length == 1);
    CHECK(distance_to(a.cloud, {0, 0, 0}) <= 2 * d);
    CHECK(distance_to(a.cloud, {11.0 / 15, 11.0 / 16, 0}) <= 2 * d);
  }
  SUBCASE("constant strategy matches the single-map attractor") {
    const double d = 2e-3;
    for (std::size_t j = 0; j < 2; ++j) {
      const ModelSpec single = submodel(m, {j});
      const auto a = individual_attractor(m, UPString(Word{}, Word({static_cast<Symbol>(j)})), d);
      // Exact fixed point of the snapped single-map operator.
      PointCloud fixed = seed_cloud(single, d);
      for (PointCloud next = hutchinson_step(single, fixed); !(next == fixed); next = hutchinson_step(single, fixed))
        fixed = std::move(next);
      CHECK(a.cloud == fixed);
      // compute_K may stop on a small Hausdorff step before the exact
      // fixed point; slow contraction leaves extra cells near the ends.
      const auto k = compute_K(single, d, d, 10000);
      CHECK(a.cloud.is_subset_of(k.cloud));
    }
  }
  SUBCASE("alternating strategy lies in K") {
    const double d = 2e-3;
    const auto k = compute_K(m, d, d, 10000);
    const auto a = individual_attractor(m, up("(10)"), d);
    CHECK(a.converged);
    CHECK(a.cycle_length == 2);
    CHECK(directed_distance(a.cloud, k.cloud) <= 2 * d);
    CHECK(directed_distance(a.cloud, hutchinson_step(m, a.cloud)) <= 2 * d);
  }
}

TEST_CASE("omega limits") {
  const ModelSpec tp = three_point_model();
  const auto cyc = omega_limit(tp, labels("A"), up("(0)"));
  CHECK(cyc.converged);
  CHECK(cyc.cloud == labels("BC"));
  CHECK(cyc.cycle_length == 2);

  const ModelSpec m = malaria_model();
  const double d = 1e-3;
  const auto single = omega_limit(m, points(2, d, {{0.5, 0.5, 0}}), up("(0)"));
  const auto full = individual_attractor(m, up("(0)"), d);
  CHECK(directed_distance(single.cloud, full.cloud) <= 2 * d);

  // Monotone in the seed.
  const auto small = omega_limit(m, points(2, d, {{0.2, 0.9, 0}}), up("1(10)"));
  const auto big = omega_limit(m, points(2, d, {{0.2, 0.9, 0}, {0.9, 0.1, 0}, {0.01, 0, 0}}), up("1(10)"));
  CHECK(small.cloud.is_subset_of(big.cloud));
}

TEST_CASE("line counterexample") {
  const ModelSpec line = line_counterexample();
  const double d = 1e-3;
  const auto seed = points(1, d, {{1, 0, 0}});
  const auto div = omega_limit(line, seed, up("(01)"));
  REQUIRE(div.violation);
  CHECK(div.violation->step == 20);
  CHECK(std::abs(div.violation->point[0]) == std::ldexp(1.0, 20));
  CHECK_FALSE(div.converged);
  for (const char* s : {"(0)", "(1)"}) {
    const auto a = individual_attractor(line, up(s), d);
    CHECK_FALSE(a.violation);
    CHECK(a.cloud == points(1, d, {{0, 0, 0}}));
  }
  const auto k = compute_K(line, d, d, 100);
  CHECK(k.violation);
  CHECK_FALSE(k.converged);
}

TEST_CASE("chaos game") {
  const ModelSpec cantor = cantor_model();
  ChaosOptions o;
  o.probs = {0.5, 0.5};
  o.x0 = {0.5, 0, 0};
  o.n = 20000;
  o.burnin = 100;
  o.delta = 1e-4;
  const auto f = [](const Point& p) { return p[0]; };
  const auto a = chaos_game(cantor, o, f), b = chaos_game(cantor, o, f);
  CHECK(a.cloud == b.cloud);
  CHECK(a.mean == b.mean);
  o.seed = 2;
  CHECK_FALSE(chaos_game(cantor, o, f).cloud == a.cloud);

  SUBCASE("degenerate probabilities follow one orbit") {
    o.probs = {1, 0};
    o.x0 = {0.9, 0, 0};
    o.n = 3;
    o.burnin = 0;
    const auto r = chaos_game(cantor, o, f);
    CHECK(r.cloud == points(1, 1e-4, {{0.3, 0, 0}, {0.1, 0, 0}, {0.1 / 3, 0, 0}}));
  }
  SUBCASE("invalid input") {
    o.probs = {0.5, 0.6};
    CHECK_THROWS_AS(chaos_game(cantor, o, f), std::invalid_argument);
    o.probs = {1.5, -0.5};
    CHECK_THROWS_AS(chaos_game(cantor, o, f), std::invalid_argument);
    o.probs = {1.0};
    CHECK_THROWS_AS(chaos_game(cantor, o, f), std::invalid_argument);
    o.probs = {0.5, 0.5};
    o.n = o.burnin;
    CHECK_THROWS_AS(chaos_game(cantor, o, f), std::invalid_argument);
  }
  SUBCASE("malaria scatter lies in K") {
    const ModelSpec m = malaria_model();
    const double d = 2e-3;
    const auto k = compute_K(m, d, d, 10000);
    ChaosOptions mo;
    mo.probs = {0.5, 0.5};
    mo.x0 = {0.5, 0.5, 0};
    mo.n = 50000;
    mo.delta = d;
    const auto r = chaos_game(m, mo, f);
    CHECK(directed_distance(r.cloud, k.cloud) <= 3 * d);
  }
}

TEST_CASE("cantor: each point of K is close to some A_w") {
  const ModelSpec cantor = cantor_model();
  const double d = 1e-4;
  const std::size_t depth = cantor_depth(d);
  const auto k = compute_K(cantor, d, d, 1000);
  for (std::size_t i = 0; i < k.cloud.size(); i += k.cloud.size() / 12) {
    const double x = k.cloud.point(i)[0];
    // Ternary code (digits 0/2) of the nearest level-`depth` interval.
    std::size_t best = 0;
    double best_gap = INFINITY;
    for (std::size_t code = 0; code < (std::size_t{1} << depth); ++code) {
      double left = 0, scale = 1;
      for (std::size_t n = 0; n < depth; ++n) {
        scale /= 3;
        if ((code >> (depth - 1 - n)) & 1) left += 2 * scale;
      }
      const double gap = std::max({0.0, left - x, x - (left + scale)});
      if (gap < best_gap) best_gap = gap, best = code;
    }
    // The last map applied decides the leading digit.
    std::vector<Symbol> digits;
    for (std::size_t n = 0; n < depth; ++n) digits.push_back((best >> (depth - 1 - n)) & 1);
    const std::vector<Symbol> w(digits.rbegin(), digits.rend());
    const auto a = individual_attractor(cantor, UPString(Word{}, Word(w)), d);
    CHECK_MESSAGE(distance_to(a.cloud, {x, 0, 0}) <= 2 * d, x);
  }
}

TEST_CASE("lemma inclusions on random strategies") {
  const ModelSpec m = malaria_model();
  const double d = 0.01;
  const auto k = compute_K(m, d, d, 10000);
  for (const char* s : {"(0)", "(1)", "(10)", "1(0)", "01(110)", "(0010)", "11(01)"}) {
    const UPString w = up(s);
    const auto a = individual_attractor(m, w, d);
    const auto as = individual_attractor(m, shift(w), d);
    CHECK(directed_distance(a.cloud, hutchinson_step(m, a.cloud)) <= 2 * d);
    CHECK(directed_distance(hutchinson_step(m, a.cloud), k.cloud) <= 2 * d);
    CHECK(directed_distance(a.cloud, as.cloud) <= 2 * d);
    if (w.is_periodic()) CHECK(hausdorff(a.cloud, as.cloud) <= 2 * d);
  }
}

TEST_CASE("self-map check") {
  CHECK(self_map_overshoot(malaria_model(), 0.02) == 0.0);
  CHECK(self_map_overshoot(cantor_model(), 0.01) == 0.0);
  MalariaParams bad = kPset0;
  bad.dt = 0.3;
  CHECK_THROWS_AS(malaria_model(bad, kPset1), std::invalid_argument);
}
