#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcoinv/words.hpp"

namespace qcoinv {

// A word together with an explicit non-negative weight shift c, modeling an
// element of the shifted weighted set q^c S.
struct ShiftedWord {
  Word word;
  long long shift = 0;

  long long weight() const { return coinv(word) + shift; }
  friend bool operator==(const ShiftedWord&, const ShiftedWord&) = default;

  std::string str() const {
    return shift == 0 ? word.str()
                      : word.str() + "·q^" + std::to_string(shift);
  }
};

// A pair of words with a single shift; weight is the Cartesian-product
// weight coinv(left) + coinv(right) + shift.
struct ShiftedPair {
  Word left;
  Word right;
  long long shift = 0;

  long long weight() const { return coinv(left) + coinv(right) + shift; }
  friend bool operator==(const ShiftedPair&, const ShiftedPair&) = default;

  std::string str() const {
    std::string s = "(" + left.str() + ", " + right.str() + ")";
    if (shift != 0) s += "·q^" + std::to_string(shift);
    return s;
  }
};

namespace fault {

// Failure injection used only by the verification suite to prove that the
// sweeps are sensitive, not vacuous. When a step is active the corresponding
// map deliberately emits a wrong word.
enum class Step {
  none,
  strip_head,
  strip_tail,
  split_threes,
  swap_adjacent,
  assemble,
  assemble_no3,
  assemble_no1,
  collapse_middle,
  merge_middle,
};

inline Step& active() {
  static Step s = Step::none;
  return s;
}

inline void corrupt(Step here, Word& w) {
  if (active() == here && w.size() >= 2)
    std::swap(w.letters[0], w.letters[1]);
}

}  // namespace fault

namespace bij {

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

inline void require_alphabet(const Word& w, std::vector<Letter> allowed,
                             const std::string& who) {
  for (Letter l : w) {
    bool ok = false;
    for (Letter a : allowed) ok = ok || l == a;
    require(ok, who + ": unexpected letter " + std::to_string(l));
  }
}

}  // namespace detail

// Replace every occurrence of `from` by `to`.
inline Word replaced(const Word& w, Letter from, Letter to) {
  std::vector<Letter> out(w.begin(), w.end());
  for (Letter& l : out)
    if (l == from) l = to;
  return Word(std::move(out));
}

// Strip the maximal lo-prefix together with the first hi letter:
// lo^s hi w' -> w', with shift s * (number of hi letters). The default
// alphabet {0, 3} matches the zero/three words these maps act on.
inline ShiftedWord strip_head(const Word& w, Letter lo = 0, Letter hi = 3) {
  detail::require_alphabet(w, {lo, hi}, "strip_head");
  long long first = -1;
  for (std::size_t idx = 0; idx < w.size(); ++idx)
    if (w[idx] == hi) {
      first = static_cast<long long>(idx);
      break;
    }
  detail::require(first >= 0, "strip_head: no " + std::to_string(hi) +
                                  " to strip");
  long long s = first;
  Word rest = w.slice(static_cast<std::size_t>(first) + 1, w.size());
  fault::corrupt(fault::Step::strip_head, rest);
  return {std::move(rest), s * w.count(hi)};
}

// Inverse of strip_head on the class with A+1-B lo letters and B hi
// letters: the prefix length is recovered as s = A+1-B-(lo count of w').
inline Word restore_head(const Word& wp, long long A, long long B,
                         Letter lo = 0, Letter hi = 3) {
  detail::require_alphabet(wp, {lo, hi}, "restore_head");
  detail::require(B >= 1, "restore_head: need at least one high letter");
  detail::require(wp.count(hi) == B - 1,
                  "restore_head: high-letter count mismatch");
  long long s = A + 1 - B - wp.count(lo);
  detail::require(s >= 0, "restore_head: recovered prefix length is negative");
  return Word::repeated(lo, s) + Word::repeated(hi, 1) + wp;
}

// Strip the rightmost lo letter and the hi letters after it:
// w' lo hi^s -> w', with shift s * (number of lo letters). Defaults to the
// one/two words.
inline ShiftedWord strip_tail(const Word& w, Letter lo = 1, Letter hi = 2) {
  detail::require_alphabet(w, {lo, hi}, "strip_tail");
  long long last = -1;
  for (std::size_t idx = w.size(); idx-- > 0;)
    if (w[idx] == lo) {
      last = static_cast<long long>(idx);
      break;
    }
  detail::require(last >= 0,
                  "strip_tail: no " + std::to_string(lo) + " to strip");
  long long s = static_cast<long long>(w.size()) - 1 - last;
  Word rest = w.slice(0, static_cast<std::size_t>(last));
  fault::corrupt(fault::Step::strip_tail, rest);
  return {std::move(rest), s * w.count(lo)};
}

inline Word restore_tail(const Word& wp, long long A, long long B,
                         Letter lo = 1, Letter hi = 2) {
  detail::require_alphabet(wp, {lo, hi}, "restore_tail");
  detail::require(B >= 1, "restore_tail: need at least one low letter");
  detail::require(wp.count(lo) == B - 1,
                  "restore_tail: low-letter count mismatch");
  long long s = A + 1 - B - wp.count(hi);
  detail::require(s >= 0, "restore_tail: recovered suffix length is negative");
  return wp + Word::repeated(lo, 1) + Word::repeated(hi, s);
}

// Factor a {1,2,3} word into the mask showing where its 3s sit (1,2 -> 0)
// and the subword of its 1s and 2s. coinv(v) = coinv(mask) + coinv(rest).
inline std::pair<Word, Word> split_threes(const Word& v) {
  detail::require_alphabet(v, {1, 2, 3}, "split_threes");
  std::vector<Letter> mask, rest;
  for (Letter l : v) {
    if (l == 3) {
      mask.push_back(3);
    } else {
      mask.push_back(0);
      rest.push_back(l);
    }
  }
  Word y(std::move(mask));
  fault::corrupt(fault::Step::split_threes, y);
  return {std::move(y), Word(std::move(rest))};
}

// Refill the 0 slots of the mask with the letters of z, left to right.
inline Word join_threes(const Word& y, const Word& z) {
  detail::require_alphabet(y, {0, 3}, "join_threes");
  detail::require_alphabet(z, {1, 2}, "join_threes");
  detail::require(y.count(0) == static_cast<long long>(z.size()),
                  "join_threes: slot count does not match filler length");
  std::vector<Letter> out;
  out.reserve(y.size());
  std::size_t zi = 0;
  for (Letter l : y) out.push_back(l == 3 ? 3 : z[zi++]);
  return Word(std::move(out));
}

// Interchange the frequencies of letters l and l+1: swap the two labels,
// then reverse their merged subsequence in place. Preserves coinv and is an
// involution.
inline Word swap_adjacent(const Word& v, Letter l) {
  detail::require(l >= 0, "swap_adjacent: negative letter");
  std::vector<std::size_t> where;
  std::vector<Letter> sub;
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (v[idx] == l || v[idx] == l + 1) {
      where.push_back(idx);
      sub.push_back(v[idx] == l ? l + 1 : l);
    }
  }
  std::vector<Letter> out(v.begin(), v.end());
  for (std::size_t t = 0; t < where.size(); ++t)
    out[where[t]] = sub[sub.size() - 1 - t];
  Word w(std::move(out));
  fault::corrupt(fault::Step::swap_adjacent, w);
  return w;
}

// Collapse the middle letters 2..n-1 of a word over 1..n to the single
// letter 2 and the top letter n to 3, splitting off the middle letters in
// order. coinv(w) = coinv(core) + coinv(middles).
inline std::pair<Word, Word> collapse_middle(const Word& w, Letter n) {
  detail::require(n >= 3, "collapse_middle: alphabet top must be >= 3");
  std::vector<Letter> core, mid;
  for (Letter l : w) {
    detail::require(l >= 1 && l <= n,
                    "collapse_middle: letter " + std::to_string(l) +
                        " outside 1.." + std::to_string(n));
    if (l == 1) {
      core.push_back(1);
    } else if (l == n) {
      core.push_back(3);
    } else {
      core.push_back(2);
      mid.push_back(l);
    }
  }
  Word y(std::move(core));
  fault::corrupt(fault::Step::collapse_middle, y);
  return {std::move(y), Word(std::move(mid))};
}

// Inverse of collapse_middle: refill the 2 slots of the core with the
// middle letters and relabel 3 back to n.
inline Word expand_middle(const Word& y, const Word& z, Letter n) {
  detail::require(n >= 3, "expand_middle: alphabet top must be >= 3");
  detail::require_alphabet(y, {1, 2, 3}, "expand_middle");
  for (Letter l : z)
    detail::require(l >= 2 && l <= n - 1,
                    "expand_middle: filler letter outside 2..n-1");
  detail::require(y.count(2) == static_cast<long long>(z.size()),
                  "expand_middle: slot count does not match filler length");
  std::vector<Letter> out;
  out.reserve(y.size());
  std::size_t zi = 0;
  for (Letter l : y) {
    if (l == 1)
      out.push_back(1);
    else if (l == 2)
      out.push_back(z[zi++]);
    else
      out.push_back(n);
  }
  return Word(std::move(out));
}

// Merge a {0,3} frame with a word of middle letters: each 0 becomes a 1 and
// the 3 slots take the letters of z, left to right.
inline Word merge_middle(const Word& y, const Word& z) {
  detail::require_alphabet(y, {0, 3}, "merge_middle");
  for (Letter l : z)
    detail::require(l >= 2, "merge_middle: filler letters must be >= 2");
  detail::require(y.count(3) == static_cast<long long>(z.size()),
                  "merge_middle: slot count does not match filler length");
  std::vector<Letter> out;
  out.reserve(y.size());
  std::size_t zi = 0;
  for (Letter l : y) out.push_back(l == 0 ? 1 : z[zi++]);
  Word w(std::move(out));
  fault::corrupt(fault::Step::merge_middle, w);
  return w;
}

// Inverse of merge_middle: 1 -> 0, extract the letters >= 2 in order and
// overwrite their slots with 3.
inline std::pair<Word, Word> split_middle(const Word& v) {
  std::vector<Letter> frame, mid;
  for (Letter l : v) {
    detail::require(l >= 1, "split_middle: letters must be >= 1");
    if (l == 1) {
      frame.push_back(0);
    } else {
      frame.push_back(3);
      mid.push_back(l);
    }
  }
  return {Word(std::move(frame)), Word(std::move(mid))};
}

// The slot construction: place the leftmost 3 at slot j, write y into the
// slots right of it (0 = still empty), walk the empty slots right to left
// placing i-1 twos and then the rightmost 1, and fill what is left from z,
// left to right. Produces the word of the three-letter class with
// p_one = i and p_top = j, with weight law
//   coinv(w) = coinv(y) + coinv(z) + (j-1)k + (L-k)(i-1).
inline Word assemble(int i, int j, int k, int L, int N, const Word& y,
                     const Word& z) {
  detail::require(k > 0, "assemble: k = 0 has no threes, use assemble_no3");
  detail::require(k < L, "assemble: k = L has no ones, use assemble_no1");
  detail::require(L <= N, "assemble: L must be <= N");
  detail::require(i >= 1 && i <= N - L + 1,
                  "assemble: i outside 1..N-L+1");
  detail::require(j >= 1 && j <= N - k + 1,
                  "assemble: j outside 1..N-k+1");
  detail::require_alphabet(y, {0, 3}, "assemble");
  detail::require(y.count(0) == N - j - k + 1 && y.count(3) == k - 1,
                  "assemble: mask content inconsistent with (j, k, N)");
  detail::require_alphabet(z, {1, 2}, "assemble");
  detail::require(z.count(1) == L - k - 1 && z.count(2) == N - L - i + 1,
                  "assemble: filler content inconsistent with (i, k, L, N)");

  constexpr Letter kEmpty = -1;
  std::vector<Letter> slot(static_cast<std::size_t>(N), kEmpty);
  slot[static_cast<std::size_t>(j - 1)] = 3;
  for (std::size_t t = 0; t < y.size(); ++t)
    if (y[t] == 3) slot[static_cast<std::size_t>(j) + t] = 3;
  int placed = 0;
  for (std::size_t idx = slot.size(); idx-- > 0 && placed < i;) {
    if (slot[idx] != kEmpty) continue;
    slot[idx] = placed < i - 1 ? 2 : 1;
    ++placed;
  }
  std::size_t zi = 0;
  for (Letter& l : slot)
    if (l == kEmpty) l = z[zi++];
  Word w(std::move(slot));
  fault::corrupt(fault::Step::assemble, w);
  return w;
}

struct SlotParts {
  int i;
  int j;
  Word y;  // mask of the slots right of the leftmost 3
  Word z;  // ones and twos strictly before the rightmost 1
};

// Inverse of assemble. The word must contain both a 1 and a 3; degenerate
// classes go through disassemble_no3 / disassemble_no1 instead.
inline SlotParts disassemble(const Word& w) {
  detail::require_alphabet(w, {1, 2, 3}, "disassemble");
  detail::require(w.count(3) > 0,
                  "disassemble: no 3 present, use disassemble_no3");
  detail::require(w.count(1) > 0,
                  "disassemble: no 1 present, use disassemble_no1");
  int j = static_cast<int>(slot_of(w, Side::leftmost, 3).value());
  int i = static_cast<int>(p_one(w, 3).value());
  std::vector<Letter> mask;
  for (std::size_t idx = static_cast<std::size_t>(j); idx < w.size(); ++idx)
    mask.push_back(w[idx] == 3 ? 3 : 0);
  auto r1 = static_cast<std::size_t>(slot_of(w, Side::rightmost, 1).value());
  std::vector<Letter> fill;
  for (std::size_t idx = 0; idx + 1 < r1; ++idx)
    if (w[idx] != 3) fill.push_back(w[idx]);
  return {i, j, Word(std::move(mask)), Word(std::move(fill))};
}

// Degenerate construction for the class with no top letters: w = z 1 2^{i-1}
// has p_one = i and coinv(w) = coinv(z) + L(i-1).
inline Word assemble_no3(int i, int L, int N, const Word& z) {
  detail::require(L >= 1 && L <= N, "assemble_no3: need 0 < L <= N");
  detail::require(i >= 1 && i <= N - L + 1, "assemble_no3: i outside 1..N-L+1");
  detail::require_alphabet(z, {1, 2}, "assemble_no3");
  detail::require(z.count(1) == L - 1 && z.count(2) == N - i - L + 1,
                  "assemble_no3: content inconsistent with (i, L, N)");
  Word w = z + Word::repeated(1, 1) + Word::repeated(2, i - 1);
  fault::corrupt(fault::Step::assemble_no3, w);
  return w;
}

struct TailParts {
  int i;
  Word z;
};

inline TailParts disassemble_no3(const Word& w) {
  detail::require_alphabet(w, {1, 2}, "disassemble_no3");
  detail::require(w.count(1) > 0, "disassemble_no3: no 1 present");
  auto r1 = static_cast<std::size_t>(slot_of(w, Side::rightmost, 1).value());
  int i = static_cast<int>(w.size() - r1) + 1;
  return {i, w.slice(0, r1 - 1)};
}

// Degenerate construction for the class with no ones: w = 2^{j-1} 3 y has
// p_top = j and coinv(w) = coinv(y) + L(j-1).
inline Word assemble_no1(int j, int L, int N, const Word& y) {
  detail::require(L >= 1 && L <= N, "assemble_no1: need 0 < L <= N");
  detail::require(j >= 1 && j <= N - L + 1, "assemble_no1: j outside 1..N-L+1");
  detail::require_alphabet(y, {2, 3}, "assemble_no1");
  detail::require(y.count(2) == N - L - j + 1 && y.count(3) == L - 1,
                  "assemble_no1: content inconsistent with (j, L, N)");
  Word w = Word::repeated(2, j - 1) + Word::repeated(3, 1) + y;
  fault::corrupt(fault::Step::assemble_no1, w);
  return w;
}

struct HeadParts {
  int j;
  Word y;
};

inline HeadParts disassemble_no1(const Word& w) {
  detail::require_alphabet(w, {2, 3}, "disassemble_no1");
  detail::require(w.count(3) > 0, "disassemble_no1: no 3 present");
  auto l3 = static_cast<std::size_t>(slot_of(w, Side::leftmost, 3).value());
  int j = static_cast<int>(l3);
  return {j, w.slice(l3, w.size())};
}

}  // namespace bij
}  // namespace qcoinv
