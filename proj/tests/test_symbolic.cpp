#include <algorithm>
#include <random>
#include <stdexcept>

#include "choice_dyn/symbolic.hpp"
#include "doctest.h"

using namespace choice_dyn;

namespace {

UPString up(const char* s) { return UPString::parse(s); }

UPString random_upstring(std::mt19937_64& rng, std::size_t alphabet = 2) {
  auto word = [&](std::size_t lo, std::size_t hi) {
    std::vector<Symbol> v(lo + rng() % (hi - lo + 1));
    for (auto& s : v) s = static_cast<Symbol>(rng() % alphabet);
    return Word(v);
  };
  return UPString(word(0, 4), word(1, 4));
}

}  // namespace

TEST_CASE("word parse, prefix and str") {
  const Word w = Word::parse("0110");
  CHECK(w.size() == 4);
  CHECK(w.str() == "0110");
  CHECK(w.prefix(2).str() == "01");
  CHECK(w.prefix(0).empty());
  CHECK(Word::parse("").empty());
  CHECK_THROWS_AS(Word::parse("01x"), std::invalid_argument);
}

TEST_CASE("upstring parse and canonical form") {
  CHECK(up("(00)").str() == "(0)");
  CHECK(up("0(10)").str() == "(01)");
  CHECK(up("000(100)").str() == "0(001)");
  CHECK(up("1(0)").str() == "1(0)");
  CHECK(up("01(0101)").str() == "(01)");
  CHECK(up("(10)").preperiod().empty());
  CHECK_THROWS_AS(UPString::parse("01"), std::invalid_argument);
  CHECK_THROWS_AS(UPString::parse("0()"), std::invalid_argument);
  CHECK_THROWS_AS(UPString::parse("(0"), std::invalid_argument);
}

TEST_CASE("letter_at follows preperiod then period") {
  const UPString s = up("10(011)");
  const char* expect = "10011011011";
  for (std::size_t k = 0; k < 11; ++k) CHECK(s.letter_at(k) == expect[k] - '0');
  CHECK(s.prefix(5).str() == "10011");
}

TEST_CASE("concat") {
  CHECK(concat(Word::parse("01"), up("(1)")) == UPString(Word::parse("01"), Word::parse("1")));
  CHECK(concat(Word{}, up("1(0)")) == up("1(0)"));
  CHECK(concat(Word::parse("10"), Word::parse("0110")).str() == "100110");
  // Absorbed into the period after normalization.
  CHECK(concat(Word::parse("1"), up("(01)")) == up("(10)"));
}

TEST_CASE("shift") {
  CHECK(shift(UPString(Word::parse("0"), Word::parse("10"))) == UPString(Word{}, Word::parse("10")));
  CHECK(shift(up("(1)")) == up("(1)"));
  CHECK(shift(up("(100)"), 3) == up("(100)"));
  CHECK(shift(up("(100)"), 1) == up("(001)"));
  CHECK(shift(up("11(0)"), 5) == up("(0)"));
}

TEST_CASE("d_sigma values") {
  CHECK(d_sigma(up("01(1)"), up("00(1)")).value() == 0.25);
  CHECK(d_sigma(up("(01)"), up("(01)")).is_zero());
  CHECK(d_sigma(up("(0)"), up("(1)")).value() == 0.5);
  CHECK(d_sigma(Word::parse("0110"), Word::parse("0111")).value() == 1.0 / 16);
  // Strings equal as sequences compare equal whatever their text form.
  CHECK(d_sigma(up("0(10)"), up("(01)")).is_zero());
  CHECK(d_sigma(up("010(1)"), up("011(1)")).value() == 1.0 / 8);
  CHECK(d_sigma(shift(up("010(1)")), shift(up("011(1)"))) <= DyadicDistance::pow2_neg(2));
}

TEST_CASE("d_sigma ordering is exact") {
  CHECK(DyadicDistance::zero() < DyadicDistance::pow2_neg(40));
  CHECK(DyadicDistance::pow2_neg(3) < DyadicDistance::pow2_neg(2));
}

TEST_CASE("enumerate_words") {
  const auto two = enumerate_words(2, 2);
  REQUIRE(two.size() == 4);
  CHECK(two[0].str() == "00");
  CHECK(two[1].str() == "01");
  CHECK(two[2].str() == "10");
  CHECK(two[3].str() == "11");
  const auto none = enumerate_words(2, 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());
  CHECK(enumerate_words(3, 2).size() == 9);
  CHECK_THROWS_AS(enumerate_words(2, 40), std::overflow_error);
}

TEST_CASE("enumerate_upstrings is canonical and unique") {
  const auto all = enumerate_upstrings(2, 3);
  // Bound 3: periods of length 1..3 with short preperiods; (0) and (1) at least.
  CHECK(std::find(all.begin(), all.end(), up("(0)")) != all.end());
  CHECK(std::find(all.begin(), all.end(), up("1(0)")) != all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(normalize(all[i]) == all[i]);
    CHECK(all[i].preperiod().size() + all[i].period().size() <= 3);
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(!(all[i] == all[j]));
  }
}

TEST_CASE("property: ultrametric bound") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const UPString u = random_upstring(rng), v = random_upstring(rng), z = random_upstring(rng);
    CHECK(d_sigma(u, z) <= std::max(d_sigma(u, v), d_sigma(v, z)));
  }
}

TEST_CASE("property: shift is 2-Lipschitz") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const UPString u = random_upstring(rng), v = random_upstring(rng);
    CHECK(d_sigma(shift(u), shift(v)).value() <= 2 * d_sigma(u, v).value());
  }
}

TEST_CASE("property: normalization idempotent and letter-preserving") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    std::vector<Symbol> pre(rng() % 5), per(1 + rng() % 4);
    for (auto& s : pre) s = static_cast<Symbol>(rng() % 3);
    for (auto& s : per) s = static_cast<Symbol>(rng() % 3);
    // Raw letter function of the unnormalized string.
    auto raw = [&](std::size_t k) { return k < pre.size() ? pre[k] : per[(k - pre.size()) % per.size()]; };
    const UPString s{Word(pre), Word(per)};
    CHECK(normalize(s) == s);
    const std::size_t depth = 4 * (pre.size() + per.size());
    for (std::size_t k = 0; k < depth; ++k) CHECK(s.letter_at(k) == raw(k));
  }
}

TEST_CASE("property: prefix + shift reproduces the string") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    const UPString s = random_upstring(rng);
    const std::size_t n = rng() % 7;
    const UPString back = concat(s.prefix(n), shift(s, n));
    CHECK(back == s);
    for (std::size_t k = 0; k < 4 * std::max<std::size_t>(n, 1); ++k) CHECK(back.letter_at(k) == s.letter_at(k));
  }
}
