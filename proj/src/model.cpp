#include "choice_dyn/model.hpp"

#include <cmath>

namespace choice_dyn {

ModelSpec submodel(const ModelSpec& m, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("submodel: keep at least one map");
  ModelSpec out = m;
  out.maps.clear();
  for (std::size_t j : keep) {
    if (j >= m.maps.size()) throw std::out_of_range("submodel: map index out of range");
    out.maps.push_back(m.maps[j]);
  }
  out.name = m.name + "[";
  for (std::size_t i = 0; i < keep.size(); ++i) out.name += (i ? "," : "") + std::to_string(keep[i]);
  out.name += "]";
  return out;
}

void check_resolution(const ModelSpec& m, double delta) {
  if (m.discrete && delta != 0) throw std::invalid_argument(m.name + ": discrete models require delta = 0");
  if (!m.discrete && !(delta > 0)) throw std::invalid_argument(m.name + ": continuous models require delta > 0");
}

double model_distance(const ModelSpec& m, const Point& a, const Point& b) {
  if (m.metric) return m.metric(a, b);
  double s = 0;
  for (std::size_t k = 0; k < m.dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace choice_dyn
