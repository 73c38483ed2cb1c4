#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcoinv/qpoly.hpp"

namespace qcoinv {

using Letter = int;

// A finite sequence of small non-negative letters. Letter 0 is legal and
// ordered below 1. Text form is a compact digit string when every letter
// is <= 9 ("231132"), comma-separated integers otherwise ("2,3,11").
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  Word(std::initializer_list<Letter> ls) : letters(ls) { check(); }
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) { check(); }

  static Word repeated(Letter l, long long count) {
    if (count < 0) throw std::invalid_argument("Word::repeated: negative count");
    return Word(std::vector<Letter>(static_cast<std::size_t>(count), l));
  }

  static Word parse(std::string_view s) {
    std::vector<Letter> ls;
    if (s.empty()) return {};
    if (s.find(',') != std::string_view::npos) {
      std::size_t pos = 0;
      while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string_view::npos) next = s.size();
        std::string tok(s.substr(pos, next - pos));
        try {
          std::size_t used = 0;
          int v = std::stoi(tok, &used);
          if (used != tok.size() || v < 0) throw std::invalid_argument("");
          ls.push_back(v);
        } catch (...) {
          throw std::invalid_argument("Word::parse: bad letter '" + tok + "'");
        }
        pos = next + 1;
        if (next == s.size()) break;
      }
    } else {
      for (char c : s) {
        if (c < '0' || c > '9')
          throw std::invalid_argument(std::string("Word::parse: bad char '") +
                                      c + "'");
        ls.push_back(c - '0');
      }
    }
    return Word(std::move(ls));
  }

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  Letter operator[](std::size_t idx) const { return letters[idx]; }
  auto begin() const { return letters.begin(); }
  auto end() const { return letters.end(); }

  long long count(Letter l) const {
    return std::count(letters.begin(), letters.end(), l);
  }
  Letter max_letter() const {
    return letters.empty() ? 0
                           : *std::max_element(letters.begin(), letters.end());
  }

  // Half-open 0-based range [from, to).
  Word slice(std::size_t from, std::size_t to) const {
    return Word(std::vector<Letter>(letters.begin() + from,
                                    letters.begin() + to));
  }

  Word operator+(const Word& rhs) const {
    std::vector<Letter> ls = letters;
    ls.insert(ls.end(), rhs.letters.begin(), rhs.letters.end());
    return Word(std::move(ls));
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

  std::string str() const {
    bool compact = std::all_of(letters.begin(), letters.end(),
                               [](Letter l) { return l <= 9; });
    std::string s;
    for (std::size_t idx = 0; idx < letters.size(); ++idx) {
      if (compact) {
        s += static_cast<char>('0' + letters[idx]);
      } else {
        if (idx) s += ',';
        s += std::to_string(letters[idx]);
      }
    }
    return s;
  }

 private:
  void check() const {
    for (Letter l : letters)
      if (l < 0) throw std::invalid_argument("Word: negative letter");
  }
};

// Letter frequencies of a rearrangement class: counts[l] = copies of letter
// l. Trailing zero counts are trimmed on construction.
struct Freqs {
  std::vector<long long> counts;

  Freqs() = default;
  explicit Freqs(std::vector<long long> c) : counts(std::move(c)) {
    for (long long v : counts)
      if (v < 0) throw std::invalid_argument("Freqs: negative count");
    trim();
  }

  static Freqs of(const Word& w) {
    std::vector<long long> c(w.empty() ? 0 : w.max_letter() + 1, 0);
    for (Letter l : w) ++c[static_cast<std::size_t>(l)];
    return Freqs(std::move(c));
  }

  static Freqs parse(std::string_view s) {
    std::vector<long long> c;
    std::size_t pos = 0;
    while (pos <= s.size() && !s.empty()) {
      std::size_t next = s.find(',', pos);
      if (next == std::string_view::npos) next = s.size();
      std::string tok(s.substr(pos, next - pos));
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("");
        c.push_back(v);
      } catch (...) {
        throw std::invalid_argument("Freqs::parse: bad count '" + tok + "'");
      }
      pos = next + 1;
      if (next == s.size()) break;
    }
    return Freqs(std::move(c));
  }

  long long total() const {
    long long t = 0;
    for (long long v : counts) t += v;
    return t;
  }

  long long count(Letter l) const {
    auto idx = static_cast<std::size_t>(l);
    return idx < counts.size() ? counts[idx] : 0;
  }

  Letter top_letter() const {
    return counts.empty() ? 0 : static_cast<Letter>(counts.size() - 1);
  }

  bool matches(const Word& w) const { return Freqs::of(w) == *this; }

  friend bool operator==(const Freqs&, const Freqs&) = default;

  std::string str() const {
    std::string s = "R(";
    bool first = true;
    for (std::size_t l = 0; l < counts.size(); ++l) {
      if (counts[l] == 0) continue;
      if (!first) s += ' ';
      first = false;
      s += std::to_string(l) + "^" + std::to_string(counts[l]);
    }
    return s + ")";
  }

 private:
  void trim() {
    while (!counts.empty() && counts.back() == 0) counts.pop_back();
  }
};

// 1-based position that may be infinite. Infinity compares strictly greater
// than every finite position and equal to itself (so inf <= inf holds).
class Position {
 public:
  static Position at(long long p) {
    if (p < 1) throw std::invalid_argument("Position::at: positions are >= 1");
    return Position(p);
  }
  static Position infinity() { return Position(kInf); }

  bool is_finite() const { return v_ != kInf; }
  long long value() const {
    if (!is_finite())
      throw std::logic_error("Position::value: infinite position");
    return v_;
  }

  friend bool operator==(Position, Position) = default;
  friend std::strong_ordering operator<=>(Position a, Position b) {
    return a.v_ <=> b.v_;
  }

  std::string str() const {
    return is_finite() ? std::to_string(v_) : std::string("inf");
  }

 private:
  explicit Position(long long v) : v_(v) {}
  static constexpr long long kInf = std::numeric_limits<long long>::max();
  long long v_;
};

// Number of pairs i < j with w_i < w_j.
inline long long coinv(const Word& w) {
  long long c = 0;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b)
      if (w[a] < w[b]) ++c;
  return c;
}

// Position of the leftmost occurrence of the top letter, from the left.
inline Position p_top(const Word& w, Letter top) {
  for (std::size_t idx = 0; idx < w.size(); ++idx)
    if (w[idx] == top) return Position::at(static_cast<long long>(idx) + 1);
  return Position::infinity();
}

// Position of the rightmost 1, counted from the right end after deleting
// every copy of the top letter.
inline Position p_one(const Word& w, Letter top) {
  long long from_right = 0;
  for (std::size_t idx = w.size(); idx-- > 0;) {
    if (w[idx] == top) continue;
    ++from_right;
    if (w[idx] == 1) return Position::at(from_right);
  }
  return Position::infinity();
}

enum class WordClass { greater, less_eq };

inline const char* str(WordClass c) {
  return c == WordClass::greater ? ">" : "<=";
}

// greater iff p_top(w) > p_one(w) under the Position ordering.
inline WordClass classify(const Word& w, Letter top) {
  return p_top(w, top) > p_one(w, top) ? WordClass::greater
                                       : WordClass::less_eq;
}

enum class Side { leftmost, rightmost };

// Physical 1-based slot of the leftmost/rightmost occurrence, from the left.
// Unlike p_one this ignores nothing and always counts from the left.
inline Position slot_of(const Word& w, Side side, Letter l) {
  if (side == Side::leftmost) {
    for (std::size_t idx = 0; idx < w.size(); ++idx)
      if (w[idx] == l) return Position::at(static_cast<long long>(idx) + 1);
  } else {
    for (std::size_t idx = w.size(); idx-- > 0;)
      if (w[idx] == l) return Position::at(static_cast<long long>(idx) + 1);
  }
  return Position::infinity();
}

inline constexpr unsigned long long default_cap = 10'000'000;

struct CapExceeded : std::runtime_error {
  unsigned long long count;
  CapExceeded(unsigned long long count_, bool exact, unsigned long long cap)
      : std::runtime_error("rearrangement class holds " +
                           std::string(exact ? "" : "at least ") +
                           std::to_string(count_) + " words, above the cap of " +
                           std::to_string(cap)),
        count(count_) {}
};

namespace detail {

// Number of distinct rearrangements, saturated at `cap_at` (the result is
// exact whenever it is <= cap_at).
inline unsigned long long rearrangement_count(const Freqs& f,
                                              unsigned long long cap_at) {
  using u128 = unsigned __int128;
  const u128 limit = cap_at;
  u128 total = 1;
  long long placed = 0;
  for (long long a : f.counts) {
    if (a == 0) continue;
    // multiply by C(placed + a, a), bailing out as soon as we pass the cap
    for (long long step = 1; step <= a; ++step) {
      total = total * static_cast<u128>(placed + step);
      total = total / static_cast<u128>(step);
      if (total > limit) return cap_at + 1 > cap_at ? cap_at + 1 : cap_at;
    }
    placed += a;
  }
  return static_cast<unsigned long long>(total);
}

}  // namespace detail

// Visit every distinct rearrangement exactly once, in ascending
// lexicographic order. Throws CapExceeded when the class is larger than
// `cap`.
template <class Fn>
void for_each_word(const Freqs& f, Fn&& fn,
                   unsigned long long cap = default_cap) {
  unsigned long long n = detail::rearrangement_count(f, cap);
  if (n > cap) {
    unsigned long long exact =
        detail::rearrangement_count(f, std::numeric_limits<std::uint64_t>::max() - 1);
    throw CapExceeded(exact, exact < std::numeric_limits<std::uint64_t>::max(),
                      cap);
  }
  std::vector<Letter> v;
  v.reserve(static_cast<std::size_t>(f.total()));
  for (std::size_t l = 0; l < f.counts.size(); ++l)
    for (long long c = 0; c < f.counts[l]; ++c)
      v.push_back(static_cast<Letter>(l));
  do {
    fn(Word(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

inline std::vector<Word> enumerate(const Freqs& f,
                                   unsigned long long cap = default_cap) {
  std::vector<Word> out;
  for_each_word(f, [&](const Word& w) { out.push_back(w); }, cap);
  return out;
}

// Brute-force generating function: sum of q^coinv(w) over the words of the
// class that satisfy `pred`. This is the universal oracle every closed form
// is checked against.
template <class Pred>
QPoly gf_if(const Freqs& f, Pred&& pred, unsigned long long cap = default_cap) {
  std::vector<QPoly::Coeff> acc;
  for_each_word(
      f,
      [&](const Word& w) {
        if (!pred(w)) return;
        auto c = static_cast<std::size_t>(coinv(w));
        if (acc.size() <= c) acc.resize(c + 1, 0);
        acc[c] = detail::add_checked(acc[c], 1);
      },
      cap);
  return QPoly(std::move(acc));
}

inline QPoly gf(const Freqs& f, unsigned long long cap = default_cap) {
  return gf_if(f, [](const Word&) { return true; }, cap);
}

// Frequency vector with the given (letter, count) pairs; nullopt when any
// count is negative, which encodes an empty class in degenerate identities.
inline std::optional<Freqs> make_class(
    std::initializer_list<std::pair<Letter, long long>> parts) {
  std::vector<long long> counts;
  for (auto [l, c] : parts) {
    if (c < 0) return std::nullopt;
    auto idx = static_cast<std::size_t>(l);
    if (counts.size() <= idx) counts.resize(idx + 1, 0);
    counts[idx] += c;
  }
  return Freqs(std::move(counts));
}

// R(1^{L-k} 2^{N-L} 3^k), the three-letter class.
inline std::optional<Freqs> class_x(int N, int L, int k) {
  return make_class({{1, L - k}, {2, N - L}, {3, k}});
}

// R(1^{L-k} 2^{a_2} ... (n-1)^{a_{n-1}} n^k) over the alphabet 1..n.
inline std::optional<Freqs> class_w(int n, int L, int k,
                                    const std::vector<int>& a) {
  if (n < 3 || static_cast<int>(a.size()) != n - 2)
    throw std::invalid_argument("class_w: need middle counts a_2..a_{n-1}");
  std::vector<long long> counts(static_cast<std::size_t>(n) + 1, 0);
  if (L - k < 0 || k < 0) return std::nullopt;
  counts[1] = L - k;
  counts[static_cast<std::size_t>(n)] = k;
  for (int m = 0; m < n - 2; ++m) {
    if (a[static_cast<std::size_t>(m)] < 0) return std::nullopt;
    counts[static_cast<std::size_t>(m) + 2] = a[static_cast<std::size_t>(m)];
  }
  return Freqs(std::move(counts));
}

// Middle-letter class R(2^{a_2} ... (n-1)^{a_{n-1}}).
inline std::optional<Freqs> class_middle(int n, const std::vector<int>& a) {
  if (n < 3 || static_cast<int>(a.size()) != n - 2)
    throw std::invalid_argument("class_middle: need counts a_2..a_{n-1}");
  std::vector<long long> counts(static_cast<std::size_t>(n), 0);
  for (int m = 0; m < n - 2; ++m) {
    if (a[static_cast<std::size_t>(m)] < 0) return std::nullopt;
    counts[static_cast<std::size_t>(m) + 2] = a[static_cast<std::size_t>(m)];
  }
  return Freqs(std::move(counts));
}

}  // namespace qcoinv
