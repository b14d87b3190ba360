#include <algorithm>
#include <random>
#include <stdexcept>

#include "choice_dyn/sofic.hpp"
#include "doctest.h"

using namespace choice_dyn;

namespace {

UPString up(const char* s) { return UPString::parse(s); }

// Reference rule for golden_even words: no "11", and every maximal run of
// 0s enclosed by two 1s has even length.
bool golden_even_rule(const Word& w) {
  std::size_t last_one = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 1) continue;
    if (last_one != w.size()) {
      const std::size_t gap = i - last_one - 1;
      if (gap == 0 || gap % 2 != 0) return false;
    }
    last_one = i;
  }
  return true;
}

bool has_factor_11(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == 1 && w[i + 1] == 1) return true;
  return false;
}

void check_same_language(const SoficPresentation& a, const SoficPresentation& b, std::size_t max_len) {
  for (std::size_t len = 0; len <= max_len; ++len)
    for (const Word& w : enumerate_words(2, len)) CHECK_MESSAGE(accepts(a, w) == accepts(b, w), w.str());
}

}  // namespace

TEST_CASE("builtin shapes") {
  const auto gm = golden_mean();
  CHECK(gm.vertex_count() == 2);
  CHECK(gm.edges().size() == 3);
  const auto full = full_shift(2);
  CHECK(full.vertex_count() == 1);
  CHECK(full.edges().size() == 2);
  CHECK(golden_even().vertex_count() == 3);
  CHECK(builtin_presentation("full:3").alphabet() == 3);
  CHECK_THROWS_AS(builtin_presentation("nope"), std::invalid_argument);
}

TEST_CASE("golden mean forbids exactly the factor 11 up to length 8") {
  const auto gm = golden_mean();
  for (std::size_t len = 0; len <= 8; ++len)
    for (const Word& w : enumerate_words(2, len)) CHECK_MESSAGE(accepts(gm, w) == !has_factor_11(w), w.str());
}

TEST_CASE("golden_even acceptance") {
  const auto ge = golden_even();
  CHECK(accepts(ge, Word::parse("100")));
  CHECK(accepts(ge, Word::parse("0010000100")));
  CHECK(accepts(ge, Word::parse("1001")));
  CHECK_FALSE(accepts(ge, Word::parse("101")));
  CHECK_FALSE(accepts(ge, Word::parse("10001")));
  CHECK_FALSE(accepts(ge, Word::parse("11")));
  CHECK(accepts(ge, Word{}));
  for (std::size_t len = 0; len <= 10; ++len)
    for (const Word& w : enumerate_words(2, len)) CHECK_MESSAGE(accepts(ge, w) == golden_even_rule(w), w.str());
}

TEST_CASE("intersections") {
  check_same_language(intersect(golden_mean(), even_shift()), golden_even(), 10);
  check_same_language(intersect(golden_mean(), full_shift(2)), golden_mean(), 10);
  check_same_language(intersect(golden_mean(), golden_mean()), golden_mean(), 10);
}

TEST_CASE("path_ends") {
  const auto ge = golden_even();
  const VertexSet after1 = path_ends(ge, Word::parse("0001"));
  CHECK(after1.members() == std::vector<VertexId>{ge.vertex("A")});
  CHECK(path_ends(ge, Word::parse("1")) == after1);
  const VertexSet after0 = path_ends(ge, Word::parse("0"));
  CHECK(after0.members() == std::vector<VertexId>{ge.vertex("B"), ge.vertex("C")});
  const auto full = full_shift(2);
  CHECK(path_ends(full, Word::parse("0110")).count() == 1);
  CHECK_THROWS_AS(path_ends(ge, Word::parse("11")), std::domain_error);
}

TEST_CASE("start_vertices") {
  const auto ge = golden_even();
  CHECK_FALSE(start_vertices(ge, up("(100)")).empty());
  CHECK(start_vertices(full_shift(2), up("0(1)")).count() == 1);
  CHECK(start_vertices(golden_mean(), up("(1)")).empty());
  CHECK(start_vertices(ge, up("(10)")).empty());
  // Even run of 0s before the first 1 (including none) starts at A or C.
  const VertexSet even = start_vertices(ge, up("00(100)"));
  CHECK(even.members() == std::vector<VertexId>{ge.vertex("A"), ge.vertex("C")});
  CHECK(start_vertices(ge, up("(0)")).members() ==
        std::vector<VertexId>{ge.vertex("A"), ge.vertex("B"), ge.vertex("C")});
}

TEST_CASE("pruning and text round trip") {
  // D has no outgoing edge and E only leads to D: both go.
  const auto p = SoficPresentation::parse("A 0 A\nA 1 E\nE 0 D\n# comment\n");
  CHECK(p.vertex_count() == 1);
  CHECK(p.edges().size() == 1);
  const auto empty = SoficPresentation::parse("A 0 B\n");
  CHECK(empty.empty());
  const auto ge = golden_even();
  const auto back = SoficPresentation::parse(ge.to_text(), 2);
  CHECK(back.to_text() == ge.to_text());
  CHECK_THROWS_AS(SoficPresentation::parse("A x B\n"), std::invalid_argument);
  CHECK_THROWS_AS(SoficPresentation::parse("A 0\n"), std::invalid_argument);
}

TEST_CASE("property: pruned vertices all have successors") {
  for (const auto& p : {golden_mean(), even_shift(), golden_even(), intersect(golden_mean(), even_shift())}) {
    std::vector<int> outdeg(p.vertex_count(), 0);
    for (const Edge& e : p.edges()) ++outdeg[e.from];
    for (int d : outdeg) CHECK(d >= 1);
  }
}

TEST_CASE("property: language consistency and shift invariance") {
  for (const auto& p : {golden_mean(), even_shift(), golden_even()}) {
    for (std::size_t len = 0; len <= 10; ++len) {
      for (const Word& w : enumerate_words(2, len)) {
        const bool ok = accepts(p, w);
        if (ok) {
          CHECK_FALSE(path_ends(p, w).empty());
          std::vector<Symbol> tail(w.letters().begin() + (w.empty() ? 0 : 1), w.letters().end());
          CHECK(accepts(p, Word(tail)));
        } else {
          CHECK_THROWS_AS(path_ends(p, w), std::domain_error);
        }
      }
    }
  }
}

TEST_CASE("property: start vertices are compatible with the shift") {
  std::mt19937_64 rng(21);
  for (const auto& p : {golden_mean(), golden_even(), even_shift()}) {
    for (int i = 0; i < 50; ++i) {
      std::vector<Symbol> pre(rng() % 4), per(1 + rng() % 4);
      for (auto& s : pre) s = static_cast<Symbol>(rng() % 2);
      for (auto& s : per) s = static_cast<Symbol>(rng() % 2);
      const UPString u{Word(pre), Word(per)};
      const VertexSet next = start_vertices(p, shift(u));
      VertexSet expect(p.vertex_count());
      for (const Edge& e : p.edges())
        if (e.symbol == u.letter_at(0) && next.contains(e.to)) expect.insert(e.from);
      CHECK_MESSAGE(start_vertices(p, u) == expect, u.str());
    }
  }
}
