#pragma once

// Concrete systems: the discrete Ross-Macdonald malaria model with two
// parameter sets, the piecewise-linear line counterexample, the middle-third
// Cantor system, the three-point animation of the golden+even shift, and the
// truncated symbolic model showing the Gestalt effect.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "choice_dyn/model.hpp"
#include "choice_dyn/symbolic.hpp"

namespace choice_dyn {

struct MalariaParams {
  double a = 0;  // human infection rate
  double b = 0;  // mosquito infection rate
  double r = 0;  // human recovery rate
  double m = 0;  // mosquito death rate
  double dt = 0.05;
};

inline constexpr MalariaParams kPset0{4, 6, 1, 2, 0.05};
inline constexpr MalariaParams kPset1{2, 10, 3, 2, 0.05};

/// min(1/(a+r), 1/(b+m)); the step map keeps the unit square invariant for dt below it.
double step_bound(const MalariaParams& p);
/// All rates positive and dt strictly below the step bound. Compared as
/// dt*(a+r) < 1 and dt*(b+m) < 1.
bool step_admissible(const MalariaParams& p);
double basic_reproduction_number(const MalariaParams& p);
Point malaria_step(const MalariaParams& p, const Point& x);

struct FixedPoints {
  Point origin{};
  std::optional<Point> endemic;  // present iff ab > rm
};
FixedPoints fixed_points(const MalariaParams& p);

/// Unit square, euclidean metric, S_0/S_1 the one-step maps of p0/p1.
/// Throws std::invalid_argument if either parameter set is inadmissible.
ModelSpec malaria_model(const MalariaParams& p0 = kPset0, const MalariaParams& p1 = kPset1);
/// Single-map system (X, S) for one parameter set.
ModelSpec malaria_single(const MalariaParams& p);

/// S_0(x) = 0 (x <= 0), -2x (x > 0); S_1(x) = -2x (x <= 0), 0 (x > 0).
/// Monitored on [-R, R], seeded on [-1, 1].
ModelSpec line_counterexample(double radius = 1e6);

/// S_0(x) = x/3, S_1(x) = x/3 + 2/3 on [0, 1].
ModelSpec cantor_model();
/// ceil(log_3(1/delta)).
std::size_t cantor_depth(double delta);
/// Distance from x to the union of the 2^depth closed level-`depth`
/// intervals, following the greedy ternary expansion of x.
double cantor_oracle_distance(double x, std::size_t depth);

/// Three states A, B, C with S_0: A->B, B->C, C->B and S_1: A->A, B->B, C->A.
ModelSpec three_point_model();
/// "A", "B" or "C" for a state of the three-point model.
std::string three_point_label(const Point& p);
Point three_point_state(char label);

struct GestaltConfig {
  std::size_t depth = 12;
};

/// Binary words of length L encoded as integers (first letter most
/// significant); S_0(v) = v(2).v and S_1(v) = v(1).v, truncated to L letters.
/// Metric d_sigma, delta = 0.
ModelSpec gestalt_model(GestaltConfig cfg = {});
std::uint64_t gestalt_encode(const Word& w);
Word gestalt_decode(std::uint64_t code, std::size_t depth);

/// Builds a model by name: "malaria", "malaria0", "malaria1", "cantor",
/// "line", "three_point", "gestalt".
ModelSpec model_by_name(const std::string& name, const MalariaParams& p0 = kPset0,
                        const MalariaParams& p1 = kPset1, GestaltConfig gestalt = {});

}  // namespace choice_dyn
