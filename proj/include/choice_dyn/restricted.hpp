#pragma once

// Dynamics with choice restricted to a sofic subshift: vertex-indexed limit
// sets, attractor slices and the decomposition K_Lambda = A_0 u ... u A_{N-1}.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "choice_dyn/model.hpp"
#include "choice_dyn/point_cloud.hpp"
#include "choice_dyn/sofic.hpp"
#include "choice_dyn/symbolic.hpp"

namespace choice_dyn {

/// One limit cloud per presentation vertex: C_v collects the limits of
/// S_w(seed) over words w whose path ends at v.
struct VertexFamily {
  std::vector<PointCloud> clouds;
  std::vector<double> residuals;
  std::vector<bool> converged;
  std::size_t iterations = 0;

  bool all_converged() const;
};

/// Iterates C'_v = union over edges (u -j-> v) of S_j(C_u) from the seed cloud
/// at every vertex. Sweeps are synchronous.
VertexFamily vertex_limits(const ModelSpec& m, const SoficPresentation& p, double delta, double tol,
                           std::size_t maxiter);

/// Union of the family entries over start_vertices(p, u). Throws
/// std::domain_error when u is not in the subshift.
PointCloud slice(const ModelSpec& m, const SoficPresentation& p, const VertexFamily& family, const UPString& u);

struct SliceReport {
  std::vector<PointCloud> slices;
  /// Canonical text of every enumerated string in the subshift -> slice index.
  std::map<std::string, std::size_t> representatives;
  /// Distinct start-vertex sets realised by the enumerated strings.
  std::size_t start_set_count = 0;
  PointCloud k_lambda;
  std::vector<PointCloud> pieces;  // A_j, one per symbol
};

/// Slices of every UPString with |preperiod| + |period| <= period_bound that
/// lies in the subshift, deduplicated by cloud equality.
SliceReport enumerate_slices(const ModelSpec& m, const SoficPresentation& p, const VertexFamily& family,
                             std::size_t period_bound);

struct DecompositionCheck {
  double cover_residual = 0;  // d_H(K_Lambda, A_0 u ... u A_{N-1})
  double image_residual = 0;  // d_H(K_Lambda, S_0(A_0) u ... u S_{N-1}(A_{N-1}))
  bool passed = false;
};

/// Passes when cover_residual <= 2 delta and image_residual <= 4 delta (exact
/// equality for delta = 0).
DecompositionCheck verify_decomposition(const SliceReport& report, const ModelSpec& m, double delta);

}  // namespace choice_dyn
