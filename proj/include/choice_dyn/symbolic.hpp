#pragma once

// Finite words and ultimately periodic infinite strings over {0, ..., N-1}.

#include <compare>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace choice_dyn {

using Symbol = std::uint16_t;

class Word {
public:
  Word() = default;
  explicit Word(std::vector<Symbol> letters) : letters_(std::move(letters)) {}

  /// Parses a plain digit string ("0110"). The empty string is the empty word.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Symbol operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Symbol>& letters() const noexcept { return letters_; }

  Word prefix(std::size_t n) const;
  Symbol max_symbol() const;
  std::string str() const;

  friend auto operator<=>(const Word&, const Word&) = default;

private:
  std::vector<Symbol> letters_;
};

/// An infinite string preperiod.period.period..., kept in canonical form:
/// the period is primitive and the preperiod is as short as possible.
class UPString {
public:
  UPString(Word preperiod, Word period);

  /// Text form "PRE(PER)", e.g. "000(100)". Throws std::invalid_argument.
  static UPString parse(std::string_view text);

  const Word& preperiod() const noexcept { return pre_; }
  const Word& period() const noexcept { return per_; }
  bool is_periodic() const noexcept { return pre_.empty(); }

  Symbol letter_at(std::size_t k) const;
  Word prefix(std::size_t n) const;
  Symbol max_symbol() const;
  std::string str() const;

  friend auto operator<=>(const UPString&, const UPString&) = default;

private:
  Word pre_;
  Word per_;
};

/// Re-establishes canonical form; the constructor already calls this.
UPString normalize(const UPString& s);

Word concat(const Word& w, const Word& u);
UPString concat(const Word& w, const UPString& u);

UPString shift(const UPString& s);
UPString shift(const UPString& s, std::size_t n);

/// d_sigma(u, v) = 2^-m where m-1 is the length of the longest common
/// prefix. Stored as the exponent m so comparisons stay exact.
class DyadicDistance {
public:
  static DyadicDistance zero() { return DyadicDistance{}; }
  static DyadicDistance pow2_neg(std::uint32_t m) { return DyadicDistance{m}; }

  bool is_zero() const noexcept { return !exponent_; }
  std::optional<std::uint32_t> exponent() const noexcept { return exponent_; }
  double value() const noexcept;

  friend bool operator==(const DyadicDistance&, const DyadicDistance&) = default;
  friend std::strong_ordering operator<=>(const DyadicDistance& a, const DyadicDistance& b);

private:
  DyadicDistance() = default;
  explicit DyadicDistance(std::uint32_t m) : exponent_(m) {}
  std::optional<std::uint32_t> exponent_;
};

DyadicDistance d_sigma(const Word& u, const Word& v);
DyadicDistance d_sigma(const UPString& u, const UPString& v);
DyadicDistance d_sigma(const Word& u, const UPString& v);
DyadicDistance d_sigma(const UPString& u, const Word& v);

/// All N^m words of length m in lexicographic order. Throws
/// std::overflow_error when N^m exceeds `cap`.
std::vector<Word> enumerate_words(std::size_t alphabet, std::size_t length,
                                  std::size_t cap = std::size_t{1} << 24);

/// Every canonical UPString with |preperiod| + |period| <= bound, deduplicated.
std::vector<UPString> enumerate_upstrings(std::size_t alphabet, std::size_t bound);

}  // namespace choice_dyn
