#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "choice_dyn/point_cloud.hpp"

namespace choice_dyn {

using MapFn = std::function<Point(const Point&)>;

struct Box {
  Point lo{};
  Point hi{};
};

/// A state space plus the evolution maps S_0..S_{N-1}.
///
/// `bounds` is the region points must stay in: images leaving it by more
/// than 10 lattice steps are reported as an absorbing-set violation, smaller
/// overshoots are clamped back. `seed_box`, when set, is the absorbing
/// candidate that seeds attractor computations (defaults to `bounds`).
/// Discrete models live on an exact integer lattice (delta = 0) and list
/// their states explicitly.
struct ModelSpec {
  std::string name;
  std::size_t dim = 1;
  std::vector<MapFn> maps;
  Box bounds;
  std::optional<Box> seed_box;
  bool discrete = false;
  std::vector<Point> states;
  Metric metric;
  std::vector<std::string> state_labels;

  std::size_t alphabet() const noexcept { return maps.size(); }
};

/// Raised when an iterate leaves the bounding region.
class AssumptionViolation : public std::runtime_error {
public:
  AssumptionViolation(const std::string& what, std::size_t step, Point point)
      : std::runtime_error(what), step_(step), point_(point) {}
  std::size_t step() const noexcept { return step_; }
  const Point& point() const noexcept { return point_; }

private:
  std::size_t step_;
  Point point_;
};

/// The same model restricted to the listed maps, renumbered 0..k-1.
ModelSpec submodel(const ModelSpec& m, const std::vector<std::size_t>& keep);

/// Validates delta against the model kind; throws std::invalid_argument.
void check_resolution(const ModelSpec& m, double delta);

/// Distance between two points under the model metric.
double model_distance(const ModelSpec& m, const Point& a, const Point& b);

}  // namespace choice_dyn
