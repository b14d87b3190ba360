#include "choice_dyn/sofic.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace choice_dyn {

bool VertexSet::empty() const noexcept { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }

std::size_t VertexSet::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<VertexId> VertexSet::members() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < bits_.size(); ++v)
    if (bits_[v]) out.push_back(v);
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  if (other.universe() != universe()) throw std::invalid_argument("VertexSet: universe mismatch");
  for (VertexId v = 0; v < bits_.size(); ++v)
    if (bits_[v] && !other.bits_[v]) return false;
  return true;
}

SoficPresentation::SoficPresentation(std::size_t alphabet, std::vector<std::string> vertex_names,
                                     std::vector<Edge> edges)
    : alphabet_(alphabet) {
  if (alphabet < 2) throw std::invalid_argument("SoficPresentation: alphabet size must be >= 2");
  const std::size_t n = vertex_names.size();
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) throw std::invalid_argument("SoficPresentation: edge references unknown vertex");
    if (e.symbol >= alphabet) throw std::invalid_argument("SoficPresentation: edge symbol outside alphabet");
  }

  // Drop vertices without an infinite forward path until none remain.
  std::vector<bool> alive(n, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (VertexId v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      const bool has_out = std::any_of(edges.begin(), edges.end(),
                                       [&](const Edge& e) { return e.from == v && alive[e.to]; });
      if (!has_out) {
        alive[v] = false;
        changed = true;
      }
    }
  }

  std::vector<VertexId> remap(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    remap[v] = names_.size();
    names_.push_back(std::move(vertex_names[v]));
  }
  for (const Edge& e : edges) {
    if (alive[e.from] && alive[e.to]) edges_.push_back({remap[e.from], e.symbol, remap[e.to]});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

SoficPresentation SoficPresentation::parse(std::string_view text, std::size_t alphabet) {
  std::map<std::string, VertexId> ids;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  auto id_of = [&](const std::string& name) {
    auto [it, inserted] = ids.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  Symbol max_symbol = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string from, to;
    long symbol = -1;
    if (!(fields >> from)) continue;
    std::string extra;
    if (!(fields >> symbol >> to) || symbol < 0 || (fields >> extra)) {
      throw std::invalid_argument("presentation line " + std::to_string(lineno) +
                                  ": expected \"FROM SYMBOL TO\"");
    }
    const VertexId f = id_of(from);
    const VertexId t = id_of(to);
    edges.push_back({f, static_cast<Symbol>(symbol), t});
    max_symbol = std::max(max_symbol, static_cast<Symbol>(symbol));
  }
  if (alphabet == 0) alphabet = std::max<std::size_t>(2, std::size_t{max_symbol} + 1);
  return SoficPresentation(alphabet, std::move(names), std::move(edges));
}

std::string SoficPresentation::to_text() const {
  std::ostringstream out;
  for (const Edge& e : edges_) out << names_[e.from] << ' ' << e.symbol << ' ' << names_[e.to] << '\n';
  return out.str();
}

VertexId SoficPresentation::vertex(std::string_view name) const {
  for (VertexId v = 0; v < names_.size(); ++v)
    if (names_[v] == name) return v;
  throw std::out_of_range("unknown vertex '" + std::string(name) + "'");
}

VertexSet SoficPresentation::successors(const VertexSet& from, Symbol s) const {
  VertexSet out(vertex_count());
  for (const Edge& e : edges_)
    if (e.symbol == s && from.contains(e.from)) out.insert(e.to);
  return out;
}

VertexSet SoficPresentation::predecessors(const VertexSet& to, Symbol s) const {
  VertexSet out(vertex_count());
  for (const Edge& e : edges_)
    if (e.symbol == s && to.contains(e.to)) out.insert(e.from);
  return out;
}

SoficPresentation full_shift(std::size_t alphabet) {
  std::vector<Edge> edges;
  for (std::size_t s = 0; s < alphabet; ++s) edges.push_back({0, static_cast<Symbol>(s), 0});
  return SoficPresentation(alphabet, {"F"}, std::move(edges));
}

SoficPresentation golden_mean() {
  // A: free to emit 1; B: just emitted 1.
  return SoficPresentation(2, {"A", "B"}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}});
}

SoficPresentation even_shift() {
  // E: even number of 0s since the last 1; O: odd.
  return SoficPresentation(2, {"E", "O"}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
}

SoficPresentation golden_even() {
  // A: after a 1; B: odd run of 0s; C: even (>= 2) run of 0s.
  return SoficPresentation(2, {"A", "B", "C"}, {{0, 0, 1}, {1, 0, 2}, {2, 0, 1}, {2, 1, 0}});
}

SoficPresentation builtin_presentation(std::string_view name) {
  if (name == "full" || name == "full_shift") return full_shift(2);
  if (name.starts_with("full:")) {
    const auto n = std::stoul(std::string(name.substr(5)));
    return full_shift(n);
  }
  if (name == "golden_mean") return golden_mean();
  if (name == "even_shift" || name == "even") return even_shift();
  if (name == "golden_even") return golden_even();
  throw std::invalid_argument("unknown subshift '" + std::string(name) +
                              "' (known: full, full:N, golden_mean, even_shift, golden_even)");
}

SoficPresentation intersect(const SoficPresentation& a, const SoficPresentation& b) {
  if (a.alphabet() != b.alphabet()) throw std::invalid_argument("intersect: alphabet sizes differ");
  const std::size_t nb = b.vertex_count();
  std::vector<std::string> names;
  for (VertexId u = 0; u < a.vertex_count(); ++u)
    for (VertexId v = 0; v < nb; ++v) names.push_back(a.vertex_names()[u] + "." + b.vertex_names()[v]);
  std::vector<Edge> edges;
  for (const Edge& ea : a.edges())
    for (const Edge& eb : b.edges())
      if (ea.symbol == eb.symbol) edges.push_back({ea.from * nb + eb.from, ea.symbol, ea.to * nb + eb.to});
  return SoficPresentation(a.alphabet(), std::move(names), std::move(edges));
}

namespace {

VertexSet walk(const SoficPresentation& p, const Word& w) {
  VertexSet current = p.all_vertices();
  for (std::size_t i = 0; i < w.size() && !current.empty(); ++i) current = p.successors(current, w[i]);
  return current;
}

}  // namespace

bool accepts(const SoficPresentation& p, const Word& w) { return !walk(p, w).empty(); }

VertexSet path_ends(const SoficPresentation& p, const Word& w) {
  VertexSet ends = walk(p, w);
  if (ends.empty()) throw std::domain_error("path_ends: word '" + w.str() + "' is not in the subshift");
  return ends;
}

VertexSet start_vertices(const SoficPresentation& p, const UPString& u) {
  const Word& per = u.period();
  auto pull_back = [&](VertexSet set, const Word& w) {
    for (std::size_t i = w.size(); i-- > 0;) set = p.predecessors(set, w[i]);
    return set;
  };
  // Greatest fixed point of the monotone period pull-back, from the top.
  VertexSet readable = p.all_vertices();
  for (;;) {
    VertexSet next = pull_back(readable, per);
    if (next == readable) break;
    readable = std::move(next);
  }
  return pull_back(std::move(readable), u.preperiod());
}

}  // namespace choice_dyn
