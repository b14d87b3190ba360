#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "choice_dyn/models.hpp"
#include "choice_dyn/setdyn.hpp"
#include "doctest.h"

using namespace choice_dyn;

TEST_CASE("malaria step gate and R0") {
  CHECK(step_bound(kPset0) == 0.125);
  CHECK(step_admissible(kPset0));
  MalariaParams p = kPset0;
  p.dt = 0.2;
  CHECK_FALSE(step_admissible(p));
  p.dt = 0.125;
  CHECK_FALSE(step_admissible(p));
  p = kPset0;
  p.a = 0;
  CHECK_FALSE(step_admissible(p));
  CHECK(basic_reproduction_number(kPset1) == doctest::Approx(20.0 / 6));
  const Point o = malaria_step(kPset0, {0, 0, 0});
  CHECK(o[0] == 0);
  CHECK(o[1] == 0);
}

TEST_CASE("malaria fixed points") {
  const auto f0 = fixed_points(kPset0);
  REQUIRE(f0.endemic);
  CHECK((*f0.endemic)[0] == doctest::Approx(11.0 / 15).epsilon(1e-15));
  CHECK((*f0.endemic)[1] == doctest::Approx(11.0 / 16).epsilon(1e-15));
  const auto f1 = fixed_points(kPset1);
  REQUIRE(f1.endemic);
  CHECK((*f1.endemic)[0] == doctest::Approx(7.0 / 25).epsilon(1e-15));
  CHECK((*f1.endemic)[1] == doctest::Approx(7.0 / 12).epsilon(1e-15));
  for (const auto& p : {kPset0, kPset1}) {
    const Point P = *fixed_points(p).endemic;
    const Point S = malaria_step(p, P);
    CHECK(std::abs(S[0] - P[0]) <= 1e-12);
    CHECK(std::abs(S[1] - P[1]) <= 1e-12);
  }
  CHECK_FALSE(fixed_points(MalariaParams{1, 1, 1, 1, 0.05}).endemic);
}

TEST_CASE("property: the unit square is invariant for admissible steps") {
  for (MalariaParams p : {kPset0, kPset1}) {
    for (double dt : {0.01, 0.05, 0.9 * step_bound(p)}) {
      p.dt = dt;
      REQUIRE(step_admissible(p));
      for (int i = 0; i <= 100; ++i) {
        for (int j = 0; j <= 100; ++j) {
          const Point s = malaria_step(p, {i / 100.0, j / 100.0, 0});
          CHECK((s[0] >= 0 && s[0] <= 1 && s[1] >= 0 && s[1] <= 1));
        }
      }
    }
  }
}

TEST_CASE("malaria model construction") {
  const ModelSpec m = malaria_model();
  CHECK(m.alphabet() == 2);
  CHECK(m.dim == 2);
  CHECK_FALSE(m.discrete);
  MalariaParams bad = kPset1;
  bad.dt = 0.2;
  CHECK_THROWS_AS(malaria_model(kPset0, bad), std::invalid_argument);
  CHECK(malaria_single(kPset0).alphabet() == 1);
}

TEST_CASE("line counterexample orbit") {
  const ModelSpec m = line_counterexample();
  Point x{1, 0, 0};
  const double expect[] = {-2, 4, -8, 16, -32};
  for (int n = 0; n < 5; ++n) {
    x = m.maps[n % 2](x);
    CHECK(x[0] == expect[n]);
  }
  CHECK(m.maps[0]({-3, 0, 0})[0] == 0);
  CHECK(m.maps[1]({3, 0, 0})[0] == 0);
}

TEST_CASE("cantor model and oracle") {
  CHECK(cantor_depth(1e-4) == 9);
  CHECK(cantor_depth(1.0 / 3) == 1);
  CHECK(cantor_oracle_distance(0.0, 9) == 0);
  CHECK(cantor_oracle_distance(1.0, 9) <= 1e-12);
  CHECK(cantor_oracle_distance(0.5, 9) >= 1.0 / 6 - 1e-12);
  CHECK(cantor_oracle_distance(0.25, 9) <= std::pow(3.0, -9));
  const auto k = compute_K(cantor_model(), 1e-4, 1e-4, 1000);
  CHECK(k.cloud.point(0)[0] == 0);
  CHECK(k.cloud.point(k.cloud.size() - 1)[0] == 1);
  for (const Point& p : k.cloud.points()) CHECK(cantor_oracle_distance(p[0], 9) <= 2e-4);
}

TEST_CASE("three-point maps") {
  const ModelSpec m = three_point_model();
  const Point A = three_point_state('A'), B = three_point_state('B'), C = three_point_state('C');
  CHECK(three_point_label(m.maps[0](A)) == "B");
  CHECK(three_point_label(m.maps[1](A)) == "A");
  CHECK(three_point_label(m.maps[0](C)) == "B");
  CHECK(three_point_label(m.maps[0](B)) == "C");
  CHECK(three_point_label(m.maps[1](B)) == "B");
  CHECK(three_point_label(m.maps[1](C)) == "A");
  CHECK(m.discrete);
  CHECK(m.states.size() == 3);
}

TEST_CASE("gestalt model") {
  const std::size_t L = 12;
  const ModelSpec m = gestalt_model({L});
  CHECK(m.states.size() == (std::size_t{1} << L));
  const Word v = Word::parse("001101011100");
  CHECK(gestalt_decode(gestalt_encode(v), L) == v);
  const Point pv{static_cast<double>(gestalt_encode(v)), 0, 0};
  CHECK(gestalt_decode(static_cast<std::uint64_t>(m.maps[0](pv)[0]), L).str() == "100110101110");
  CHECK(gestalt_decode(static_cast<std::uint64_t>(m.maps[1](pv)[0]), L).str() == "000110101110");

  SUBCASE("w_k = 0^{3k} 1 turns 001... into 0001001...") {
    for (std::size_t k = 1; k <= 3; ++k) {
      std::string w(3 * k, '0');
      w += '1';
      const PointCloud start =
          PointCloud::from_points(1, 0.0, std::vector<Point>{{static_cast<double>(gestalt_encode(v)), 0, 0}});
      const PointCloud out = apply_word(m, Word::parse(w), start);
      const std::string s = gestalt_decode(static_cast<std::uint64_t>(out.point(0)[0]), L).str();
      std::string expect = "0";
      for (std::size_t i = 0; i <= k; ++i) expect += "001";
      const std::size_t n = std::min(L, expect.size());
      CHECK(s.substr(0, n) == expect.substr(0, n));
    }
  }
  SUBCASE("maps only read the first three letters") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t a = rng() % (1u << L);
      const std::uint64_t b = (a & (0b111u << (L - 3))) | (rng() % (1u << (L - 3)));
      for (std::size_t j = 0; j < 2; ++j) {
        const auto sa = gestalt_decode(static_cast<std::uint64_t>(m.maps[j]({double(a), 0, 0})[0]), L);
        const auto sb = gestalt_decode(static_cast<std::uint64_t>(m.maps[j]({double(b), 0, 0})[0]), L);
        CHECK(sa.prefix(4) == sb.prefix(4));
        CHECK(sa.prefix(1) == Word({static_cast<Symbol>(gestalt_decode(a, L)[j == 0 ? 2 : 1])}));
      }
    }
  }
  SUBCASE("metric is d_sigma on words") {
    const Point x{double(gestalt_encode(Word::parse("000100100100"))), 0, 0};
    const Point y{double(gestalt_encode(Word::parse("000110100100"))), 0, 0};
    CHECK(model_distance(m, x, y) == 1.0 / 32);
    CHECK(model_distance(m, x, x) == 0);
  }
}

TEST_CASE("model_by_name") {
  for (const char* n : {"malaria", "malaria0", "malaria1", "cantor", "line", "three_point", "gestalt"})
    CHECK(model_by_name(n).maps.size() >= 1);
  CHECK_THROWS_AS(model_by_name("lorenz"), std::invalid_argument);
  CHECK(submodel(malaria_model(), {1}).alphabet() == 1);
  CHECK_THROWS(submodel(malaria_model(), {2}));
}
