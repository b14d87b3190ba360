#include "choice_dyn/restricted.hpp"

#include <algorithm>
#include <stdexcept>

#include "choice_dyn/setdyn.hpp"

namespace choice_dyn {

bool VertexFamily::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

VertexFamily vertex_limits(const ModelSpec& m, const SoficPresentation& p, double delta, double tol,
                           std::size_t maxiter) {
  if (p.empty()) throw std::invalid_argument("vertex_limits: empty subshift");
  if (p.alphabet() != m.alphabet())
    throw std::invalid_argument("vertex_limits: presentation alphabet does not match the number of maps");
  const std::size_t nv = p.vertex_count();
  const PointCloud seed = seed_cloud(m, delta);

  VertexFamily family;
  family.clouds.assign(nv, seed);
  family.residuals.assign(nv, 0.0);
  family.converged.assign(nv, false);

  for (std::size_t it = 1; it <= maxiter; ++it) {
    // Each (source, symbol) image is shared by every edge carrying it.
    std::map<std::pair<VertexId, Symbol>, PointCloud> images;
    for (const Edge& e : p.edges()) {
      auto key = std::make_pair(e.from, e.symbol);
      if (!images.contains(key)) images.emplace(key, apply_map(m, e.symbol, family.clouds[e.from], it));
    }
    std::vector<std::vector<PointCloud>> incoming(nv);
    for (const Edge& e : p.edges()) incoming[e.to].push_back(images.at({e.from, e.symbol}));

    std::vector<PointCloud> next(nv);
    for (VertexId v = 0; v < nv; ++v) {
      if (incoming[v].empty()) throw std::logic_error("vertex_limits: vertex without incoming edges");
      next[v] = unite(incoming[v]);
      if (next[v] == family.clouds[v]) {
        family.residuals[v] = 0;
      } else {
        family.residuals[v] = model_hausdorff(m, family.clouds[v], next[v]);
      }
      family.converged[v] = family.residuals[v] <= tol;
    }
    const bool fixed = std::equal(next.begin(), next.end(), family.clouds.begin());
    family.clouds = std::move(next);
    family.iterations = it;
    if (fixed || family.all_converged()) break;
  }
  return family;
}

PointCloud slice(const ModelSpec&, const SoficPresentation& p, const VertexFamily& family, const UPString& u) {
  const VertexSet start = start_vertices(p, u);
  if (start.empty()) throw std::domain_error("slice: strategy " + u.str() + " is not in the subshift");
  std::vector<PointCloud> parts;
  for (VertexId v : start.members()) parts.push_back(family.clouds.at(v));
  return unite(parts);
}

SliceReport enumerate_slices(const ModelSpec& m, const SoficPresentation& p, const VertexFamily& family,
                             std::size_t period_bound) {
  if (period_bound < 1) throw std::invalid_argument("enumerate_slices: period_bound must be >= 1");
  SliceReport report;
  std::map<VertexSet, std::size_t> by_start;
  for (const UPString& u : enumerate_upstrings(p.alphabet(), period_bound)) {
    const VertexSet start = start_vertices(p, u);
    if (start.empty()) continue;
    auto found = by_start.find(start);
    if (found == by_start.end()) {
      const PointCloud cloud = slice(m, p, family, u);
      const auto same = std::find(report.slices.begin(), report.slices.end(), cloud);
      const std::size_t index = static_cast<std::size_t>(same - report.slices.begin());
      if (same == report.slices.end()) report.slices.push_back(cloud);
      found = by_start.emplace(start, index).first;
    }
    report.representatives.emplace(u.str(), found->second);
  }
  report.start_set_count = by_start.size();

  report.k_lambda = unite(family.clouds);
  const double delta = report.k_lambda.delta();
  const NearestIndex index(report.k_lambda);
  for (std::size_t j = 0; j < m.alphabet(); ++j) {
    std::vector<Cell> members;
    for (std::size_t i = 0; i < report.k_lambda.size(); ++i) {
      const Point y = m.maps[j](report.k_lambda.point(i));
      bool inside;
      if (delta == 0) {
        inside = report.k_lambda.contains_point(y);
      } else if (m.metric) {
        inside = false;
        for (const Point& q : report.k_lambda.points()) {
          if (m.metric(y, q) <= delta) {
            inside = true;
            break;
          }
        }
      } else {
        inside = index.nearest(y) <= delta * (1 + 1e-9);
      }
      if (inside) members.push_back(report.k_lambda.cells()[i]);
    }
    report.pieces.push_back(PointCloud::from_sorted_cells(m.dim, delta, std::move(members)));
  }
  return report;
}

DecompositionCheck verify_decomposition(const SliceReport& report, const ModelSpec& m, double delta) {
  DecompositionCheck check;
  std::vector<PointCloud> nonempty;
  std::vector<PointCloud> images;
  for (std::size_t j = 0; j < report.pieces.size(); ++j) {
    if (report.pieces[j].empty()) continue;
    nonempty.push_back(report.pieces[j]);
    images.push_back(apply_map(m, j, report.pieces[j]));
  }
  if (nonempty.empty()) {
    check.cover_residual = check.image_residual = std::numeric_limits<double>::infinity();
    return check;
  }
  check.cover_residual = model_hausdorff(m, report.k_lambda, unite(nonempty));
  check.image_residual = model_hausdorff(m, report.k_lambda, unite(images));
  check.passed = delta == 0 ? (check.cover_residual == 0 && check.image_residual == 0)
                            : (check.cover_residual <= 2 * delta && check.image_residual <= 4 * delta);
  return check;
}

}  // namespace choice_dyn
