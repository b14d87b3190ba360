#include "choice_dyn/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace choice_dyn {

namespace {

Symbol parse_digit(char c) {
  if (c < '0' || c > '9') {
    throw std::invalid_argument(std::string("invalid symbol '") + c +
                                "': expected a digit 0-9");
  }
  return static_cast<Symbol>(c - '0');
}

// Smallest d dividing |w| with w = (w[0..d))^(|w|/d).
std::size_t primitive_root_length(const std::vector<Symbol>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

Word Word::parse(std::string_view text) {
  std::vector<Symbol> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(parse_digit(c));
  return Word(std::move(letters));
}

Word Word::prefix(std::size_t n) const {
  if (n > letters_.size()) throw std::out_of_range("Word::prefix: n exceeds length");
  return Word(std::vector<Symbol>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Symbol Word::max_symbol() const {
  return letters_.empty() ? Symbol{0} : *std::max_element(letters_.begin(), letters_.end());
}

std::string Word::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Symbol s : letters_) {
    if (s > 9) throw std::domain_error("Word::str: symbol exceeds single-digit text form");
    out.push_back(static_cast<char>('0' + s));
  }
  return out;
}

UPString::UPString(Word preperiod, Word period) : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw std::invalid_argument("UPString: period must be nonempty");

  std::vector<Symbol> per = per_.letters();
  per.resize(primitive_root_length(per));

  // Absorb trailing preperiod letters into a rotated period.
  std::vector<Symbol> pre = pre_.letters();
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
  }
  pre_ = Word(std::move(pre));
  per_ = Word(std::move(per));
}

UPString UPString::parse(std::string_view text) {
  const auto open = text.find('(');
  const auto close = text.find(')');
  if (open == std::string_view::npos || close != text.size() - 1 || close <= open + 1 ||
      text.find('(', open + 1) != std::string_view::npos) {
    throw std::invalid_argument("cannot parse strategy '" + std::string(text) +
                                "': expected PRE(PER), digits only, nonempty PER, e.g. 000(100)");
  }
  return UPString(Word::parse(text.substr(0, open)),
                  Word::parse(text.substr(open + 1, close - open - 1)));
}

Symbol UPString::letter_at(std::size_t k) const {
  if (k < pre_.size()) return pre_[k];
  return per_[(k - pre_.size()) % per_.size()];
}

Word UPString::prefix(std::size_t n) const {
  std::vector<Symbol> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = letter_at(k);
  return Word(std::move(out));
}

Symbol UPString::max_symbol() const { return std::max(pre_.max_symbol(), per_.max_symbol()); }

std::string UPString::str() const { return pre_.str() + "(" + per_.str() + ")"; }

UPString normalize(const UPString& s) { return UPString(s.preperiod(), s.period()); }

Word concat(const Word& w, const Word& u) {
  std::vector<Symbol> out = w.letters();
  out.insert(out.end(), u.letters().begin(), u.letters().end());
  return Word(std::move(out));
}

UPString concat(const Word& w, const UPString& u) { return UPString(concat(w, u.preperiod()), u.period()); }

UPString shift(const UPString& s) {
  if (!s.preperiod().empty()) {
    const auto& p = s.preperiod().letters();
    return UPString(Word(std::vector<Symbol>(p.begin() + 1, p.end())), s.period());
  }
  std::vector<Symbol> per = s.period().letters();
  std::rotate(per.begin(), per.begin() + 1, per.end());
  return UPString(Word{}, Word(std::move(per)));
}

UPString shift(const UPString& s, std::size_t n) {
  if (n <= s.preperiod().size()) {
    const auto& p = s.preperiod().letters();
    return UPString(Word(std::vector<Symbol>(p.begin() + static_cast<std::ptrdiff_t>(n), p.end())),
                    s.period());
  }
  std::vector<Symbol> per = s.period().letters();
  const std::size_t r = (n - s.preperiod().size()) % per.size();
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(r), per.end());
  return UPString(Word{}, Word(std::move(per)));
}

double DyadicDistance::value() const noexcept {
  return exponent_ ? std::ldexp(1.0, -static_cast<int>(*exponent_)) : 0.0;
}

std::strong_ordering operator<=>(const DyadicDistance& a, const DyadicDistance& b) {
  if (a.is_zero() || b.is_zero()) return b.is_zero() <=> a.is_zero();
  // Larger exponent means smaller distance.
  return *b.exponent_ <=> *a.exponent_;
}

DyadicDistance d_sigma(const Word& u, const Word& v) {
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] != v[i]) return DyadicDistance::pow2_neg(static_cast<std::uint32_t>(i + 1));
  }
  if (u.size() == v.size()) return DyadicDistance::zero();
  return DyadicDistance::pow2_neg(static_cast<std::uint32_t>(n + 1));
}

DyadicDistance d_sigma(const UPString& u, const UPString& v) {
  // Two ultimately periodic strings that agree past both preperiods for one
  // common period agree forever.
  const std::size_t horizon = std::max(u.preperiod().size(), v.preperiod().size()) +
                              std::lcm(u.period().size(), v.period().size());
  for (std::size_t i = 0; i < horizon; ++i) {
    if (u.letter_at(i) != v.letter_at(i)) return DyadicDistance::pow2_neg(static_cast<std::uint32_t>(i + 1));
  }
  return DyadicDistance::zero();
}

DyadicDistance d_sigma(const Word& u, const UPString& v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v.letter_at(i)) return DyadicDistance::pow2_neg(static_cast<std::uint32_t>(i + 1));
  }
  return DyadicDistance::pow2_neg(static_cast<std::uint32_t>(u.size() + 1));
}

DyadicDistance d_sigma(const UPString& u, const Word& v) { return d_sigma(v, u); }

std::vector<Word> enumerate_words(std::size_t alphabet, std::size_t length, std::size_t cap) {
  if (alphabet == 0) throw std::invalid_argument("enumerate_words: alphabet must be nonempty");
  std::size_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > cap / alphabet) throw std::overflow_error("enumerate_words: N^m exceeds the configured cap");
    count *= alphabet;
  }
  std::vector<Word> out;
  out.reserve(count);
  std::vector<Symbol> letters(length, 0);
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(letters);
    // Odometer increment, last letter fastest.
    for (std::size_t i = length; i-- > 0;) {
      if (++letters[i] < alphabet) break;
      letters[i] = 0;
    }
  }
  return out;
}

std::vector<UPString> enumerate_upstrings(std::size_t alphabet, std::size_t bound) {
  std::set<UPString> seen;
  for (std::size_t per_len = 1; per_len <= bound; ++per_len) {
    const auto periods = enumerate_words(alphabet, per_len);
    for (std::size_t pre_len = 0; pre_len + per_len <= bound; ++pre_len) {
      const auto pres = enumerate_words(alphabet, pre_len);
      for (const auto& pre : pres) {
        for (const auto& per : periods) seen.emplace(pre, per);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace choice_dyn
