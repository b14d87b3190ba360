#pragma once

// Set-valued dynamics on snapped point clouds: the Hutchinson-Barnsley
// operator, the global attractor K, individual attractors A_w, omega-limit
// sets and the chaos game.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "choice_dyn/model.hpp"
#include "choice_dyn/point_cloud.hpp"
#include "choice_dyn/symbolic.hpp"

namespace choice_dyn {

struct ViolationInfo {
  std::size_t step = 0;
  Point point{};
  std::string message;
};

struct AttractorReport {
  PointCloud cloud;
  std::size_t iterations = 0;
  /// Hausdorff distance between the last two compared iterates.
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  /// Length of the detected set cycle (tail computations only).
  std::size_t cycle_length = 0;
  std::optional<ViolationInfo> violation;
};

/// Every lattice point of the seed region (or every state of a discrete model).
PointCloud seed_cloud(const ModelSpec& m, double delta);

/// Snapped image of one map. `step` is only used in violation reports.
PointCloud apply_map(const ModelSpec& m, std::size_t symbol, const PointCloud& a, std::size_t step = 0);
/// Snapped union of the images under the listed maps.
PointCloud apply_maps(const ModelSpec& m, std::span<const std::size_t> symbols, const PointCloud& a,
                      std::size_t step = 0);
/// F(A) = S_0(A) u ... u S_{N-1}(A), snapped at A's resolution.
PointCloud hutchinson_step(const ModelSpec& m, const PointCloud& a, std::size_t step = 0);
/// S_w = S_{w(n-1)} o ... o S_{w(0)} applied pointwise, snapped once.
PointCloud apply_word(const ModelSpec& m, const Word& w, const PointCloud& a);

/// Iterates F from the seed cloud until a fixed cloud, a Hausdorff step
/// <= tol, or maxiter. Never throws on non-convergence.
AttractorReport compute_K(const ModelSpec& m, double delta, double tol, std::size_t maxiter);
AttractorReport compute_K_from(const ModelSpec& m, PointCloud seed, double tol, std::size_t maxiter);

struct TailOptions {
  /// Step budget before the window; default 10 * diameter / delta map
  /// applications (10 * state count for discrete models).
  std::optional<std::size_t> burnin;
  /// Longest cycle searched for and the union taken on failure; default
  /// 4 * |period|.
  std::optional<std::size_t> window;
};

/// A_w: union over one detected cycle of the snapped tail S_{w[n]}(seed).
AttractorReport individual_attractor(const ModelSpec& m, const UPString& w, double delta, TailOptions opts = {});
/// omega(B, w) from a caller-supplied seed cloud.
AttractorReport omega_limit(const ModelSpec& m, const PointCloud& seed, const UPString& w, TailOptions opts = {});

struct ChaosOptions {
  std::vector<double> probs;
  Point x0{};
  std::size_t n = 1'000'000;
  std::size_t burnin = 1000;
  std::uint64_t seed = 1;
  double delta = 1e-3;
};

struct ChaosResult {
  PointCloud cloud;
  double mean = 0;
};

/// Random iteration: picks S_j with probability probs[j] each step. Output
/// is a pure function of the options.
ChaosResult chaos_game(const ModelSpec& m, const ChaosOptions& opts,
                       const std::function<double(const Point&)>& observable);

/// Hausdorff distances under the model metric.
double model_hausdorff(const ModelSpec& m, const PointCloud& a, const PointCloud& b);
double model_directed(const ModelSpec& m, const PointCloud& a, const PointCloud& b);

/// Largest distance by which some S_j moves a seed point outside `bounds`
/// (0 when the bounding region is mapped into itself).
double self_map_overshoot(const ModelSpec& m, double delta);

}  // namespace choice_dyn
