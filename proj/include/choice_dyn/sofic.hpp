#pragma once

// Labeled-graph presentations of one-sided sofic subshifts.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "choice_dyn/symbolic.hpp"

namespace choice_dyn {

using VertexId = std::size_t;

/// A subset of the vertices of one presentation.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe, bool full = false) : bits_(universe, full) {}

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(VertexId v) const { return bits_.at(v); }
  void insert(VertexId v) { bits_.at(v) = true; }
  bool empty() const noexcept;
  std::size_t count() const noexcept;
  std::vector<VertexId> members() const;
  bool is_subset_of(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.bits_ < b.bits_; }

private:
  std::vector<bool> bits_;
};

struct Edge {
  VertexId from;
  Symbol symbol;
  VertexId to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite labeled directed graph. Construction prunes every vertex that does
/// not start an infinite path, so each remaining vertex has out-degree >= 1.
/// Need not be right-resolving.
class SoficPresentation {
public:
  SoficPresentation(std::size_t alphabet, std::vector<std::string> vertex_names, std::vector<Edge> edges);

  /// One edge per line, "FROM SYMBOL TO"; '#' starts a comment. Vertex names
  /// are arbitrary tokens. Alphabet defaults to max symbol + 1 (at least 2).
  static SoficPresentation parse(std::string_view text, std::size_t alphabet = 0);
  std::string to_text() const;

  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t vertex_count() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& vertex_names() const noexcept { return names_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  VertexId vertex(std::string_view name) const;

  VertexSet all_vertices() const { return VertexSet(vertex_count(), true); }
  /// Vertices reachable from `from` along one edge labeled `s`.
  VertexSet successors(const VertexSet& from, Symbol s) const;
  /// Vertices with an edge labeled `s` into `to`.
  VertexSet predecessors(const VertexSet& to, Symbol s) const;

private:
  std::size_t alphabet_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
};

/// Built-in presentations: "full" / "full_shift" (N = 2), "full:N",
/// "golden_mean", "even_shift", "golden_even". Throws std::invalid_argument.
SoficPresentation builtin_presentation(std::string_view name);
SoficPresentation full_shift(std::size_t alphabet);
SoficPresentation golden_mean();
SoficPresentation even_shift();
SoficPresentation golden_even();

/// Label product of two presentations over the same alphabet, pruned.
SoficPresentation intersect(const SoficPresentation& a, const SoficPresentation& b);

bool accepts(const SoficPresentation& p, const Word& w);
/// Terminal vertices of paths labeled w. Throws std::domain_error when w is
/// not accepted.
VertexSet path_ends(const SoficPresentation& p, const Word& w);
/// Vertices from which the infinite string u can be read; empty iff u is not
/// in the subshift.
VertexSet start_vertices(const SoficPresentation& p, const UPString& u);

}  // namespace choice_dyn
