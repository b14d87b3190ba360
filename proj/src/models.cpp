#include "choice_dyn/models.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace choice_dyn {

double step_bound(const MalariaParams& p) { return std::min(1.0 / (p.a + p.r), 1.0 / (p.b + p.m)); }

bool step_admissible(const MalariaParams& p) {
  if (!(p.a > 0 && p.b > 0 && p.r > 0 && p.m > 0 && p.dt > 0)) return false;
  return p.dt * (p.a + p.r) < 1.0 && p.dt * (p.b + p.m) < 1.0;
}

double basic_reproduction_number(const MalariaParams& p) { return p.a * p.b / (p.r * p.m); }

Point malaria_step(const MalariaParams& p, const Point& x) {
  return {x[0] + p.dt * (p.a * x[1] * (1 - x[0]) - p.r * x[0]),
          x[1] + p.dt * (p.b * x[0] * (1 - x[1]) - p.m * x[1]), 0.0};
}

FixedPoints fixed_points(const MalariaParams& p) {
  FixedPoints out;
  const double excess = p.a * p.b - p.r * p.m;
  if (excess > 0) out.endemic = Point{excess / (p.b * (p.a + p.r)), excess / (p.a * (p.b + p.m)), 0.0};
  return out;
}

namespace {

void require_admissible(const MalariaParams& p, const char* which) {
  if (!step_admissible(p)) {
    throw std::invalid_argument(std::string("malaria ") + which + ": dt = " + std::to_string(p.dt) +
                                " violates dt < min(1/(a+r), 1/(b+m)) = " + std::to_string(step_bound(p)) +
                                " or a rate is not positive");
  }
}

Box unit_square() { return Box{{0, 0, 0}, {1, 1, 0}}; }

}  // namespace

ModelSpec malaria_model(const MalariaParams& p0, const MalariaParams& p1) {
  require_admissible(p0, "pset0");
  require_admissible(p1, "pset1");
  ModelSpec m;
  m.name = "malaria";
  m.dim = 2;
  m.bounds = unit_square();
  m.maps = {[p0](const Point& x) { return malaria_step(p0, x); },
            [p1](const Point& x) { return malaria_step(p1, x); }};
  return m;
}

ModelSpec malaria_single(const MalariaParams& p) {
  require_admissible(p, "pset");
  ModelSpec m;
  m.name = "malaria_single";
  m.dim = 2;
  m.bounds = unit_square();
  m.maps = {[p](const Point& x) { return malaria_step(p, x); }};
  return m;
}

ModelSpec line_counterexample(double radius) {
  ModelSpec m;
  m.name = "line";
  m.dim = 1;
  m.bounds = Box{{-radius, 0, 0}, {radius, 0, 0}};
  m.seed_box = Box{{-1, 0, 0}, {1, 0, 0}};
  m.maps = {[](const Point& x) { return Point{x[0] <= 0 ? 0.0 : -2 * x[0], 0, 0}; },
            [](const Point& x) { return Point{x[0] <= 0 ? -2 * x[0] : 0.0, 0, 0}; }};
  return m;
}

ModelSpec cantor_model() {
  ModelSpec m;
  m.name = "cantor";
  m.dim = 1;
  m.bounds = Box{{0, 0, 0}, {1, 0, 0}};
  m.maps = {[](const Point& x) { return Point{x[0] / 3, 0, 0}; },
            [](const Point& x) { return Point{x[0] / 3 + 2.0 / 3, 0, 0}; }};
  return m;
}

std::size_t cantor_depth(double delta) {
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("cantor_depth: delta must be in (0, 1)");
  // Integer search avoids log rounding at exact powers of three.
  std::size_t depth = 0;
  double scale = 1;
  while (scale > delta) {
    scale /= 3;
    ++depth;
  }
  return depth;
}

double cantor_oracle_distance(double x, std::size_t depth) {
  double lo = 0, len = 1;
  for (std::size_t level = 0;; ++level) {
    if (x < lo) return lo - x;
    if (x > lo + len) return x - (lo + len);
    if (level == depth) return 0;
    const double third = len / 3;
    if (x <= lo + third) {
      len = third;
    } else if (x >= lo + 2 * third) {
      lo += 2 * third;
      len = third;
    } else {
      return std::min(x - (lo + third), lo + 2 * third - x);
    }
  }
}

namespace {

constexpr std::array<Point, 3> kThreePoints = {Point{0, 0, 0}, Point{2, 0, 0}, Point{1, 2, 0}};

std::size_t three_point_index(const Point& p) {
  for (std::size_t i = 0; i < kThreePoints.size(); ++i)
    if (kThreePoints[i][0] == p[0] && kThreePoints[i][1] == p[1]) return i;
  throw std::domain_error("three_point_model: not a state");
}

}  // namespace

ModelSpec three_point_model() {
  // Indices 0, 1, 2 = A, B, C.
  static constexpr std::array<std::size_t, 3> s0 = {1, 2, 1};
  static constexpr std::array<std::size_t, 3> s1 = {0, 1, 0};
  ModelSpec m;
  m.name = "three_point";
  m.dim = 2;
  m.discrete = true;
  m.bounds = Box{{0, 0, 0}, {2, 2, 0}};
  m.states.assign(kThreePoints.begin(), kThreePoints.end());
  m.state_labels = {"A", "B", "C"};
  m.maps = {[](const Point& x) { return kThreePoints[s0[three_point_index(x)]]; },
            [](const Point& x) { return kThreePoints[s1[three_point_index(x)]]; }};
  return m;
}

std::string three_point_label(const Point& p) { return std::string(1, static_cast<char>('A' + three_point_index(p))); }

Point three_point_state(char label) {
  if (label < 'A' || label > 'C') throw std::invalid_argument("three_point_state: label must be A, B or C");
  return kThreePoints[static_cast<std::size_t>(label - 'A')];
}

std::uint64_t gestalt_encode(const Word& w) {
  if (w.size() > 52) throw std::invalid_argument("gestalt_encode: words longer than 52 letters are not representable");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 1) throw std::invalid_argument("gestalt_encode: binary words only");
    code = (code << 1) | w[i];
  }
  return code;
}

Word gestalt_decode(std::uint64_t code, std::size_t depth) {
  std::vector<Symbol> letters(depth);
  for (std::size_t i = 0; i < depth; ++i) letters[i] = static_cast<Symbol>((code >> (depth - 1 - i)) & 1U);
  return Word(std::move(letters));
}

ModelSpec gestalt_model(GestaltConfig cfg) {
  const std::size_t depth = cfg.depth;
  if (depth < 6 || depth > 52) throw std::invalid_argument("gestalt_model: depth must be in [6, 52]");
  const std::uint64_t count = std::uint64_t{1} << depth;
  auto letter = [depth](std::uint64_t v, std::size_t i) { return (v >> (depth - 1 - i)) & 1U; };
  auto prepend = [depth](std::uint64_t v, std::uint64_t c) { return (c << (depth - 1)) | (v >> 1); };

  ModelSpec m;
  m.name = "gestalt";
  m.dim = 1;
  m.discrete = true;
  m.bounds = Box{{0, 0, 0}, {static_cast<double>(count - 1), 0, 0}};
  m.states.reserve(count);
  for (std::uint64_t v = 0; v < count; ++v) m.states.push_back(Point{static_cast<double>(v), 0, 0});
  m.maps = {[=](const Point& x) {
              const auto v = static_cast<std::uint64_t>(x[0]);
              return Point{static_cast<double>(prepend(v, letter(v, 2))), 0, 0};
            },
            [=](const Point& x) {
              const auto v = static_cast<std::uint64_t>(x[0]);
              return Point{static_cast<double>(prepend(v, letter(v, 1))), 0, 0};
            }};
  m.metric = [depth](const Point& a, const Point& b) {
    const auto diff = static_cast<std::uint64_t>(a[0]) ^ static_cast<std::uint64_t>(b[0]);
    if (diff == 0) return 0.0;
    // First differing letter index i gives 2^-(i+1).
    const auto i = depth - static_cast<std::size_t>(std::bit_width(diff));
    return std::ldexp(1.0, -static_cast<int>(i + 1));
  };
  return m;
}

ModelSpec model_by_name(const std::string& name, const MalariaParams& p0, const MalariaParams& p1,
                        GestaltConfig gestalt) {
  if (name == "malaria") return malaria_model(p0, p1);
  if (name == "malaria0") return malaria_single(p0);
  if (name == "malaria1") return malaria_single(p1);
  if (name == "cantor") return cantor_model();
  if (name == "line") return line_counterexample();
  if (name == "three_point") return three_point_model();
  if (name == "gestalt") return gestalt_model(gestalt);
  throw std::invalid_argument("unknown model '" + name +
                              "' (known: malaria, malaria0, malaria1, cantor, line, three_point, gestalt)");
}

}  // namespace choice_dyn
