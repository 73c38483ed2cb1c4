#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcoinv/bijections.hpp"
#include "qcoinv/words.hpp"

namespace qcoinv::pipe {

// Step-by-step log of a composed bijection. Weights include the explicit
// shifts, so the total is conserved across every trace; the per-step shift
// deltas sum to the final shift of the target.
struct TraceStep {
  std::string label;
  std::string input;
  std::string output;
  long long shift_delta = 0;
};

struct TraceRecord {
  std::vector<TraceStep> steps;
  long long initial_weight = 0;
  long long final_weight = 0;
  // Shift already carried by the input object; nonzero for inverse traces,
  // whose input is an element of the shifted class.
  long long initial_shift = 0;

  void add(std::string label, std::string in, std::string out,
           long long delta) {
    steps.push_back({std::move(label), std::move(in), std::move(out), delta});
  }

  long long shift_sum() const {
    long long s = 0;
    for (const auto& st : steps) s += st.shift_delta;
    return s;
  }

  std::string str() const {
    std::string s;
    for (const auto& st : steps) {
      s += st.label + ": " + st.input + " -> " + st.output + " [shift " +
           (st.shift_delta >= 0 ? "+" : "") + std::to_string(st.shift_delta) +
           "]\n";
    }
    return s;
  }
};

struct PipelineResult {
  ShiftedPair target;
  int i = -1;  // recovered rightmost-1 position, when applicable
  int j = -1;  // recovered leftmost-top position, when applicable
  int k = -1;  // number of top letters in the source word
};

struct ShiftResult {
  Word word;
  int k = 0;
};

namespace detail {

using bij::detail::require;

inline void require_class(const Word& w, int N, int L, int k,
                          const std::string& who) {
  auto f = class_x(N, L, k);
  require(f && f->matches(w), who + ": word is not in the (N, L, k) class");
}

inline void check_weight(long long got, long long want,
                         const std::string& who) {
  if (got != want)
    throw std::logic_error(who + ": weight law violated (" +
                           std::to_string(got) + " != " +
                           std::to_string(want) + ")");
}

inline std::string pair_str(const ShiftedWord& a, const ShiftedWord& b) {
  return "(" + a.str() + ", " + b.str() + ")";
}

}  // namespace detail

// Contract a greater-class word with p_one = i to a single word of
// R(1^{L-k-1} 2^{N-L-i+1} 3^k) carrying shift k + (i-1)L. For k = 0 this is
// the plain tail strip; otherwise disassemble, regrow the zero prefix of the
// mask, and merge.
inline ShiftedWord reduce_gt(const Word& w, int L, int N, int k, int i,
                             TraceRecord* tr = nullptr) {
  detail::require(k >= 0 && k < L, "reduce_gt: requires 0 <= k < L");
  detail::require_class(w, N, L, k, "reduce_gt");
  detail::require(classify(w, 3) == WordClass::greater,
                  "reduce_gt: word is not in the greater class");
  detail::require(p_one(w, 3) == Position::at(i), "reduce_gt: p_one mismatch");

  if (k == 0) {
    auto parts = bij::disassemble_no3(w);
    ShiftedWord out{parts.z, static_cast<long long>(L) * (i - 1)};
    if (tr) tr->add("disassemble_no3", w.str(), out.str(), out.shift);
    detail::check_weight(out.weight(), coinv(w), "reduce_gt");
    return out;
  }

  auto d = bij::disassemble(w);
  int j = d.j;
  long long mask_shift = static_cast<long long>(j - i - 1) * k;
  long long rest_shift = k + static_cast<long long>(L) * (i - 1);
  if (tr)
    tr->add("disassemble", w.str(),
            detail::pair_str({d.y, mask_shift}, {d.z, rest_shift}),
            mask_shift + rest_shift);
  Word grown = bij::restore_head(d.y, N - i - 1, k);
  if (tr)
    tr->add("restore_head", ShiftedWord{d.y, mask_shift}.str(), grown.str(),
            -mask_shift);
  Word merged = bij::join_threes(grown, d.z);
  if (tr)
    tr->add("join_threes", detail::pair_str({grown, 0}, {d.z, rest_shift}),
            ShiftedWord{merged, rest_shift}.str(), 0);
  ShiftedWord out{merged, rest_shift};
  detail::check_weight(out.weight(), coinv(w), "reduce_gt");
  return out;
}

inline Word reduce_gt_inv(const ShiftedWord& sw, int L, int N, int k, int i,
                          TraceRecord* tr = nullptr) {
  detail::require(k >= 0 && k < L, "reduce_gt_inv: requires 0 <= k < L");
  long long expect = k + static_cast<long long>(L) * (i - 1);
  detail::require(sw.shift == expect, "reduce_gt_inv: shift mismatch");
  if (k == 0) {
    Word w = bij::assemble_no3(i, L, N, sw.word);
    if (tr) tr->add("assemble_no3", sw.str(), w.str(), -sw.shift);
    detail::check_weight(coinv(w), sw.weight(), "reduce_gt_inv");
    return w;
  }
  auto [mask, rest] = bij::split_threes(sw.word);
  if (tr)
    tr->add("split_threes", sw.str(),
            detail::pair_str({mask, 0}, {rest, sw.shift}), 0);
  ShiftedWord cut = bij::strip_head(mask);
  long long s = cut.shift / k;
  int j = i + 1 + static_cast<int>(s);
  if (tr)
    tr->add("strip_head", mask.str(), cut.str(), cut.shift);
  Word w = bij::assemble(i, j, k, L, N, cut.word, rest);
  if (tr)
    tr->add("assemble", detail::pair_str(cut, {rest, sw.shift}), w.str(),
            -(cut.shift + sw.shift));
  detail::check_weight(coinv(w), sw.weight(), "reduce_gt_inv");
  return w;
}

// Contract a less-or-equal-class word with p_top = j to a single word of
// R(1^{L-k} 2^{N-L-j+1} 3^{k-1}) carrying shift (j-1)L. For k = L this is
// the plain head strip.
inline ShiftedWord reduce_le(const Word& w, int L, int N, int k, int j,
                             TraceRecord* tr = nullptr) {
  detail::require(k > 0 && k <= L, "reduce_le: requires 0 < k <= L");
  detail::require_class(w, N, L, k, "reduce_le");
  detail::require(classify(w, 3) == WordClass::less_eq,
                  "reduce_le: word is not in the less-or-equal class");
  detail::require(p_top(w, 3) == Position::at(j), "reduce_le: p_top mismatch");

  if (k == L) {
    auto parts = bij::disassemble_no1(w);
    ShiftedWord out{parts.y, static_cast<long long>(L) * (j - 1)};
    if (tr) tr->add("disassemble_no1", w.str(), out.str(), out.shift);
    detail::check_weight(out.weight(), coinv(w), "reduce_le");
    return out;
  }

  auto d = bij::disassemble(w);
  int i = d.i;
  long long mask_shift = static_cast<long long>(L) * (j - 1);
  long long rest_shift = static_cast<long long>(i - j) * (L - k);
  if (tr)
    tr->add("disassemble", w.str(),
            detail::pair_str({d.y, mask_shift}, {d.z, rest_shift}),
            mask_shift + rest_shift);
  Word grown = bij::restore_tail(d.z, N - k - j, L - k);
  if (tr)
    tr->add("restore_tail", ShiftedWord{d.z, rest_shift}.str(), grown.str(),
            -rest_shift);
  Word merged = bij::join_threes(d.y, grown);
  if (tr)
    tr->add("join_threes", detail::pair_str({d.y, mask_shift}, {grown, 0}),
            ShiftedWord{merged, mask_shift}.str(), 0);
  ShiftedWord out{merged, mask_shift};
  detail::check_weight(out.weight(), coinv(w), "reduce_le");
  return out;
}

inline Word reduce_le_inv(const ShiftedWord& sw, int L, int N, int k, int j,
                          TraceRecord* tr = nullptr) {
  detail::require(k > 0 && k <= L, "reduce_le_inv: requires 0 < k <= L");
  long long expect = static_cast<long long>(L) * (j - 1);
  detail::require(sw.shift == expect, "reduce_le_inv: shift mismatch");
  if (k == L) {
    Word w = bij::assemble_no1(j, L, N, sw.word);
    if (tr) tr->add("assemble_no1", sw.str(), w.str(), -sw.shift);
    detail::check_weight(coinv(w), sw.weight(), "reduce_le_inv");
    return w;
  }
  auto [mask, rest] = bij::split_threes(sw.word);
  if (tr)
    tr->add("split_threes", sw.str(),
            detail::pair_str({mask, sw.shift}, {rest, 0}), 0);
  ShiftedWord cut = bij::strip_tail(rest);
  long long sp = cut.shift / (L - k);
  int i = j + static_cast<int>(sp);
  if (tr) tr->add("strip_tail", rest.str(), cut.str(), cut.shift);
  Word w = bij::assemble(i, j, k, L, N, mask, cut.word);
  if (tr)
    tr->add("assemble", detail::pair_str({mask, sw.shift}, cut), w.str(),
            -(cut.shift + sw.shift));
  detail::check_weight(coinv(w), sw.weight(), "reduce_le_inv");
  return w;
}

// Factor the whole greater class into R(0^L 3^{N-L}) x R(1^{L-k-1} 2^k)
// with shift k: reduce at the recovered p_one, swap the 2/3 frequencies,
// split off the threes, and regrow the zero tail of the mask.
inline PipelineResult factor_gt(const Word& w, int L, int N, int k,
                                TraceRecord* tr = nullptr) {
  detail::require(k >= 0 && k < L, "factor_gt: requires 0 <= k < L");
  detail::require_class(w, N, L, k, "factor_gt");
  detail::require(classify(w, 3) == WordClass::greater,
                  "factor_gt: word is not in the greater class");
  int i = static_cast<int>(p_one(w, 3).value());

  ShiftedWord t = reduce_gt(w, L, N, k, i, tr);
  Word swapped = bij::swap_adjacent(t.word, 2);
  if (tr)
    tr->add("swap_adjacent", t.str(), ShiftedWord{swapped, t.shift}.str(), 0);
  auto [mask, rest] = bij::split_threes(swapped);
  long long mask_shift = static_cast<long long>(L) * (i - 1);
  long long rest_shift = k;
  if (tr)
    tr->add("split_threes", ShiftedWord{swapped, t.shift}.str(),
            detail::pair_str({mask, mask_shift}, {rest, rest_shift}), 0);
  Word grown = bij::restore_tail(mask, N - 1, L, 0, 3);
  if (tr)
    tr->add("restore_tail", ShiftedWord{mask, mask_shift}.str(), grown.str(),
            -mask_shift);
  PipelineResult out;
  out.target = {grown, rest, rest_shift};
  out.i = i;
  out.k = k;
  detail::check_weight(out.target.weight(), coinv(w), "factor_gt");
  return out;
}

inline Word factor_gt_inv(const ShiftedPair& p, int L, int N, int k,
                          TraceRecord* tr = nullptr) {
  detail::require(k >= 0 && k < L, "factor_gt_inv: requires 0 <= k < L");
  detail::require(p.shift == k, "factor_gt_inv: shift mismatch");
  ShiftedWord cut = bij::strip_tail(p.left, 0, 3);
  detail::require(cut.shift % L == 0, "factor_gt_inv: malformed mask");
  int i = static_cast<int>(cut.shift / L) + 1;
  if (tr) tr->add("strip_tail", p.left.str(), cut.str(), cut.shift);
  Word joined = bij::join_threes(cut.word, p.right);
  if (tr)
    tr->add("join_threes", detail::pair_str(cut, {p.right, p.shift}),
            ShiftedWord{joined, cut.shift + p.shift}.str(), 0);
  Word swapped = bij::swap_adjacent(joined, 2);
  long long carried = cut.shift + p.shift;
  if (tr)
    tr->add("swap_adjacent", ShiftedWord{joined, carried}.str(),
            ShiftedWord{swapped, carried}.str(), 0);
  Word w = reduce_gt_inv({swapped, carried}, L, N, k, i, tr);
  detail::check_weight(coinv(w), p.weight(), "factor_gt_inv");
  return w;
}

// Factor the whole less-or-equal class into R(0^L 3^{N-L}) x
// R(1^{L-k} 2^{k-1}) with no residual shift.
inline PipelineResult factor_le(const Word& w, int L, int N, int k,
                                TraceRecord* tr = nullptr) {
  detail::require(k > 0 && k <= L, "factor_le: requires 0 < k <= L");
  detail::require_class(w, N, L, k, "factor_le");
  detail::require(classify(w, 3) == WordClass::less_eq,
                  "factor_le: word is not in the less-or-equal class");
  int j = static_cast<int>(p_top(w, 3).value());

  ShiftedWord t = reduce_le(w, L, N, k, j, tr);
  Word swapped = bij::swap_adjacent(t.word, 2);
  if (tr)
    tr->add("swap_adjacent", t.str(), ShiftedWord{swapped, t.shift}.str(), 0);
  auto [mask, rest] = bij::split_threes(swapped);
  long long mask_shift = static_cast<long long>(L) * (j - 1);
  if (tr)
    tr->add("split_threes", ShiftedWord{swapped, t.shift}.str(),
            detail::pair_str({mask, mask_shift}, {rest, 0}), 0);
  Word grown = bij::restore_tail(mask, N - 1, L, 0, 3);
  if (tr)
    tr->add("restore_tail", ShiftedWord{mask, mask_shift}.str(), grown.str(),
            -mask_shift);
  PipelineResult out;
  out.target = {grown, rest, 0};
  out.j = j;
  out.k = k;
  detail::check_weight(out.target.weight(), coinv(w), "factor_le");
  return out;
}

inline Word factor_le_inv(const ShiftedPair& p, int L, int N, int k,
                          TraceRecord* tr = nullptr) {
  detail::require(k > 0 && k <= L, "factor_le_inv: requires 0 < k <= L");
  detail::require(p.shift == 0, "factor_le_inv: shift mismatch");
  ShiftedWord cut = bij::strip_tail(p.left, 0, 3);
  detail::require(cut.shift % L == 0, "factor_le_inv: malformed mask");
  int j = static_cast<int>(cut.shift / L) + 1;
  if (tr) tr->add("strip_tail", p.left.str(), cut.str(), cut.shift);
  Word joined = bij::join_threes(cut.word, p.right);
  if (tr)
    tr->add("join_threes", detail::pair_str(cut, {p.right, 0}),
            ShiftedWord{joined, cut.shift}.str(), 0);
  Word swapped = bij::swap_adjacent(joined, 2);
  if (tr)
    tr->add("swap_adjacent", ShiftedWord{joined, cut.shift}.str(),
            ShiftedWord{swapped, cut.shift}.str(), 0);
  Word w = reduce_le_inv({swapped, cut.shift}, L, N, k, j, tr);
  detail::check_weight(coinv(w), p.weight(), "factor_le_inv");
  return w;
}

namespace detail {

struct ClassShape {
  int N;
  int L;
  int k;
};

inline ClassShape shape_of_core(const Word& core) {
  int k = static_cast<int>(core.count(3));
  int L = static_cast<int>(core.count(1)) + k;
  return {static_cast<int>(core.size()), L, k};
}

}  // namespace detail

// General-alphabet version of factor_gt: collapse the middle letters first,
// factor the three-letter core, then merge the {0,3} component back with
// the middles. Target is a pair in
// q^k R(1^L 2^{a_2} ... (n-1)^{a_{n-1}}) x R(1^{L-k-1} 2^k).
inline PipelineResult general_factor_gt(const Word& w, Letter n,
                                        TraceRecord* tr = nullptr) {
  auto [core, mid] = bij::collapse_middle(w, n);
  if (tr && tr->steps.empty() && tr->initial_weight == 0 &&
      tr->initial_shift == 0)
    tr->initial_weight = coinv(w);
  if (tr)
    tr->add("collapse_middle", w.str(), detail::pair_str({core, 0}, {mid, 0}),
            0);
  auto [N, L, k] = detail::shape_of_core(core);
  PipelineResult r = factor_gt(core, L, N, k, tr);
  Word merged = bij::merge_middle(r.target.left, mid);
  if (tr)
    tr->add("merge_middle",
            "(" + r.target.left.str() + ", " +
                ShiftedWord{r.target.right, r.target.shift}.str() + ", " +
                mid.str() + ")",
            ShiftedPair{merged, r.target.right, r.target.shift}.str(), 0);
  r.target.left = merged;
  detail::check_weight(r.target.weight(), coinv(w), "general_factor_gt");
  return r;
}

inline Word general_factor_gt_inv(const ShiftedPair& p, Letter n, int k,
                                  TraceRecord* tr = nullptr) {
  auto [frame, mid] = bij::split_middle(p.left);
  if (tr)
    tr->add("split_middle", p.str(),
            "(" + frame.str() + ", " + p.right.str() + ", " + mid.str() + ")" +
                (p.shift ? "·q^" + std::to_string(p.shift) : ""),
            0);
  int N = static_cast<int>(frame.size());
  int L = static_cast<int>(frame.count(0));
  Word core = factor_gt_inv({frame, p.right, p.shift}, L, N, k, tr);
  Word w = bij::expand_middle(core, mid, n);
  if (tr)
    tr->add("expand_middle", detail::pair_str({core, 0}, {mid, 0}), w.str(),
            0);
  detail::check_weight(coinv(w), p.weight(), "general_factor_gt_inv");
  return w;
}

inline PipelineResult general_factor_le(const Word& w, Letter n,
                                        TraceRecord* tr = nullptr) {
  auto [core, mid] = bij::collapse_middle(w, n);
  if (tr && tr->steps.empty() && tr->initial_weight == 0 &&
      tr->initial_shift == 0)
    tr->initial_weight = coinv(w);
  if (tr)
    tr->add("collapse_middle", w.str(), detail::pair_str({core, 0}, {mid, 0}),
            0);
  auto [N, L, k] = detail::shape_of_core(core);
  PipelineResult r = factor_le(core, L, N, k, tr);
  Word merged = bij::merge_middle(r.target.left, mid);
  if (tr)
    tr->add("merge_middle",
            "(" + r.target.left.str() + ", " + r.target.right.str() + ", " +
                mid.str() + ")",
            ShiftedPair{merged, r.target.right, 0}.str(), 0);
  r.target.left = merged;
  detail::check_weight(r.target.weight(), coinv(w), "general_factor_le");
  return r;
}

inline Word general_factor_le_inv(const ShiftedPair& p, Letter n, int k,
                                  TraceRecord* tr = nullptr) {
  auto [frame, mid] = bij::split_middle(p.left);
  if (tr)
    tr->add("split_middle", p.str(),
            "(" + frame.str() + ", " + p.right.str() + ", " + mid.str() + ")",
            0);
  int N = static_cast<int>(frame.size());
  int L = static_cast<int>(frame.count(0));
  Word core = factor_le_inv({frame, p.right, p.shift}, L, N, k, tr);
  Word w = bij::expand_middle(core, mid, n);
  if (tr)
    tr->add("expand_middle", detail::pair_str({core, 0}, {mid, 0}), w.str(),
            0);
  detail::check_weight(coinv(w), p.weight(), "general_factor_le_inv");
  return w;
}

// General-alphabet contraction at fixed p_one = i; target is a pair in
// q^{k+(i-1)L} R(1^{L-k-1} 2^{N-L-i+1} 3^k) x R(2^{a_2} ... (n-1)^{a_{n-1}}).
inline PipelineResult general_reduce_gt(const Word& w, Letter n, int i,
                                        TraceRecord* tr = nullptr) {
  auto [core, mid] = bij::collapse_middle(w, n);
  if (tr && tr->steps.empty() && tr->initial_weight == 0 &&
      tr->initial_shift == 0)
    tr->initial_weight = coinv(w);
  if (tr)
    tr->add("collapse_middle", w.str(), detail::pair_str({core, 0}, {mid, 0}),
            0);
  auto [N, L, k] = detail::shape_of_core(core);
  ShiftedWord sw = reduce_gt(core, L, N, k, i, tr);
  PipelineResult r;
  r.target = {sw.word, mid, sw.shift};
  r.i = i;
  r.k = k;
  detail::check_weight(r.target.weight(), coinv(w), "general_reduce_gt");
  return r;
}

inline Word general_reduce_gt_inv(const ShiftedPair& p, Letter n, int k,
                                  int i) {
  int L = static_cast<int>(p.left.count(1)) + k + 1;
  int N = static_cast<int>(p.left.size()) + i;
  Word core = reduce_gt_inv({p.left, p.shift}, L, N, k, i);
  Word w = bij::expand_middle(core, p.right, n);
  detail::check_weight(coinv(w), p.weight(), "general_reduce_gt_inv");
  return w;
}

inline PipelineResult general_reduce_le(const Word& w, Letter n, int j,
                                        TraceRecord* tr = nullptr) {
  auto [core, mid] = bij::collapse_middle(w, n);
  if (tr && tr->steps.empty() && tr->initial_weight == 0 &&
      tr->initial_shift == 0)
    tr->initial_weight = coinv(w);
  if (tr)
    tr->add("collapse_middle", w.str(), detail::pair_str({core, 0}, {mid, 0}),
            0);
  auto [N, L, k] = detail::shape_of_core(core);
  ShiftedWord sw = reduce_le(core, L, N, k, j, tr);
  PipelineResult r;
  r.target = {sw.word, mid, sw.shift};
  r.j = j;
  r.k = k;
  detail::check_weight(r.target.weight(), coinv(w), "general_reduce_le");
  return r;
}

inline Word general_reduce_le_inv(const ShiftedPair& p, Letter n, int k,
                                  int j) {
  int L = static_cast<int>(p.left.count(1)) + k;
  int N = static_cast<int>(p.left.size()) + j;
  Word core = reduce_le_inv({p.left, p.shift}, L, N, k, j);
  Word w = bij::expand_middle(core, p.right, n);
  detail::check_weight(coinv(w), p.weight(), "general_reduce_le_inv");
  return w;
}

// The weight-shifting bijection between the greater class with k top
// letters and the less-or-equal class with k+1, computed by the short
// route: contract at (i, j), regrow the mask prefix, strip the filler tail,
// and reassemble one level up at (i', j') with j' = i. Drops the weight by
// exactly k.
inline ShiftResult shift_up(const Word& w, Letter n,
                            TraceRecord* tr = nullptr) {
  auto [core, mid] = bij::collapse_middle(w, n);
  if (tr && tr->steps.empty() && tr->initial_weight == 0 &&
      tr->initial_shift == 0)
    tr->initial_weight = coinv(w);
  if (tr)
    tr->add("collapse_middle", w.str(), detail::pair_str({core, 0}, {mid, 0}),
            0);
  auto [N, L, k] = detail::shape_of_core(core);
  detail::require(classify(core, 3) == WordClass::greater,
                  "shift_up: word is not in the greater class");
  int i = static_cast<int>(p_one(core, 3).value());

  Word mask, rest;
  long long carried = k + static_cast<long long>(L) * (i - 1);
  if (k == 0) {
    auto parts = bij::disassemble_no3(core);
    rest = parts.z;
    mask = Word::repeated(0, N - i);
    if (tr)
      tr->add("disassemble_no3", core.str(),
              detail::pair_str({mask, 0}, {rest, carried}), carried);
  } else {
    auto d = bij::disassemble(core);
    rest = d.z;
    long long mask_shift = static_cast<long long>(d.j - i - 1) * k;
    if (tr)
      tr->add("disassemble", core.str(),
              detail::pair_str({d.y, mask_shift}, {d.z, carried}),
              mask_shift + carried);
    mask = bij::restore_head(d.y, N - i - 1, k);
    if (tr)
      tr->add("restore_head", ShiftedWord{d.y, mask_shift}.str(), mask.str(),
              -mask_shift);
  }

  int kp = k + 1;
  Word up;
  if (kp == L) {
    detail::require(rest.count(1) == 0, "shift_up: filler should have no 1s");
    Word widened = bij::replaced(mask, 0, 2);
    if (tr) tr->add("relabel_mask", mask.str(), widened.str(), 0);
    up = bij::assemble_no1(i, L, N, widened);
    long long absorbed = static_cast<long long>(L) * (i - 1);
    if (tr)
      tr->add("assemble_no1", ShiftedWord{widened, absorbed}.str(),
              ShiftedWord{up, k}.str(), -absorbed);
  } else {
    ShiftedWord cut = bij::strip_tail(rest);
    int sp = static_cast<int>(cut.shift / (L - k - 1));
    int jp = N - kp + 1 - static_cast<int>(mask.count(0));
    if (jp != i)
      throw std::logic_error(
          "shift_up: recovered leftmost-top slot disagrees with p_one");
    int ip = sp + jp;
    if (tr) tr->add("strip_tail", rest.str(), cut.str(), cut.shift);
    up = bij::assemble(ip, jp, kp, L, N, mask, cut.word);
    long long absorbed =
        static_cast<long long>(jp - 1) * kp +
        static_cast<long long>(L - kp) * (ip - 1);
    if (tr)
      tr->add("assemble", detail::pair_str({mask, 0}, cut),
              ShiftedWord{up, k}.str(), -absorbed);
  }

  Word out = bij::expand_middle(up, mid, n);
  if (tr) {
    tr->add("expand_middle", detail::pair_str({up, 0}, {mid, 0}),
            ShiftedWord{out, k}.str(), 0);
    tr->final_weight = coinv(out) + k;
  }
  if (coinv(w) - coinv(out) != k)
    throw std::logic_error("shift_up: weight did not drop by k");
  if (classify(out, n) != WordClass::less_eq)
    throw std::logic_error("shift_up: image is not in the less-or-equal class");
  return {out, k};
}

inline ShiftResult shift_down(const Word& wp, Letter n,
                              TraceRecord* tr = nullptr) {
  auto [core, mid] = bij::collapse_middle(wp, n);
  auto [N, L, kp] = detail::shape_of_core(core);
  detail::require(classify(core, 3) == WordClass::less_eq,
                  "shift_down: word is not in the less-or-equal class");
  detail::require(kp >= 1, "shift_down: no top letters to remove");
  int jp = static_cast<int>(p_top(core, 3).value());
  int k = kp - 1;
  if (tr && tr->steps.empty()) {
    tr->initial_weight = coinv(wp) + k;
    tr->initial_shift = k;
  }
  if (tr)
    tr->add("collapse_middle", ShiftedWord{wp, k}.str(),
            detail::pair_str({core, 0}, {mid, 0}) +
                (k ? "·q^" + std::to_string(k) : ""),
            0);

  Word mask, rest;
  long long mask_shift = static_cast<long long>(L) * (jp - 1);
  if (kp == L) {
    auto parts = bij::disassemble_no1(core);
    mask = bij::replaced(parts.y, 2, 0);
    rest = Word::repeated(2, N - L - jp + 1);
    if (tr)
      tr->add("disassemble_no1", core.str(),
              detail::pair_str({mask, mask_shift}, {rest, 0}), mask_shift);
  } else {
    auto d = bij::disassemble(core);
    mask = d.y;
    long long rest_shift =
        static_cast<long long>(d.i - jp) * (L - kp);
    if (tr)
      tr->add("disassemble", core.str(),
              detail::pair_str({d.y, mask_shift}, {d.z, rest_shift}),
              mask_shift + rest_shift);
    rest = bij::restore_tail(d.z, N - jp - kp, L - kp);
    if (tr)
      tr->add("restore_tail", ShiftedWord{d.z, rest_shift}.str(), rest.str(),
              -rest_shift);
  }

  Word down;
  if (k == 0) {
    detail::require(mask.count(3) == 0,
                    "shift_down: mask should carry no top letters");
    down = bij::assemble_no3(jp, L, N, rest);
    if (tr)
      tr->add("assemble_no3", ShiftedWord{rest, mask_shift}.str(), down.str(),
              -mask_shift);
  } else {
    ShiftedWord cut = bij::strip_head(mask);
    int s = static_cast<int>(cut.shift / k);
    int j = jp + 1 + s;
    if (tr) tr->add("strip_head", mask.str(), cut.str(), cut.shift);
    down = bij::assemble(jp, j, k, L, N, cut.word, rest);
    long long absorbed = static_cast<long long>(j - 1) * k +
                         static_cast<long long>(L - k) * (jp - 1);
    if (tr)
      tr->add("assemble", detail::pair_str(cut, {rest, mask_shift}),
              down.str(), -absorbed);
  }

  Word out = bij::expand_middle(down, mid, n);
  if (tr) {
    tr->add("expand_middle", detail::pair_str({down, 0}, {mid, 0}), out.str(),
            0);
    tr->final_weight = coinv(out);
  }
  if (coinv(out) - coinv(wp) != k)
    throw std::logic_error("shift_down: weight did not rise by k");
  if (classify(out, n) != WordClass::greater)
    throw std::logic_error("shift_down: image is not in the greater class");
  return {out, k};
}

// Long route for the same bijection: factor the greater class, drop the q^k
// shift, and run the less-or-equal factorization backwards one level up.
// Agrees pointwise with shift_up; its trace shows every intermediate of the
// two factorizations.
inline ShiftResult shift_up_composed(const Word& w, Letter n,
                                     TraceRecord* tr = nullptr) {
  PipelineResult f = general_factor_gt(w, n, tr);
  int k = f.k;
  Word out =
      general_factor_le_inv({f.target.left, f.target.right, 0}, n, k + 1, tr);
  if (tr) tr->final_weight = coinv(out) + k;
  if (coinv(w) - coinv(out) != k)
    throw std::logic_error("shift_up_composed: weight did not drop by k");
  if (classify(out, n) != WordClass::less_eq)
    throw std::logic_error(
        "shift_up_composed: image is not in the less-or-equal class");
  return {out, k};
}

inline ShiftResult shift_down_composed(const Word& wp, Letter n,
                                       TraceRecord* tr = nullptr) {
  if (tr && tr->steps.empty()) {
    long long kin = wp.count(n) - 1;
    tr->initial_weight = coinv(wp) + kin;
    tr->initial_shift = kin;
  }
  PipelineResult f = general_factor_le(wp, n, tr);
  int k = f.k - 1;
  Word out = general_factor_gt_inv(
      {f.target.left, f.target.right, k}, n, k, tr);
  if (tr) tr->final_weight = coinv(out);
  if (coinv(out) - coinv(wp) != k)
    throw std::logic_error("shift_down_composed: weight did not rise by k");
  if (classify(out, n) != WordClass::greater)
    throw std::logic_error(
        "shift_down_composed: image is not in the greater class");
  return {out, k};
}

}  // namespace qcoinv::pipe
