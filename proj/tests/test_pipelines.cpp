#include <doctest.h>

#include <set>
#include <stdexcept>

#include "qcoinv/pipelines.hpp"
#include "qcoinv/qpoly.hpp"
#include "qcoinv/words.hpp"

using namespace qcoinv;
using namespace qcoinv::pipe;

namespace {

Word W(const char* s) { return Word::parse(s); }

void check_trace(const TraceRecord& tr, long long final_shift) {
  CHECK(tr.initial_weight == tr.final_weight);
  CHECK(tr.initial_shift + tr.shift_sum() == final_shift);
}

}  // namespace

TEST_CASE("reduce_gt on the worked example") {
  TraceRecord tr;
  tr.initial_weight = coinv(W("2112332213232"));
  ShiftedWord out = reduce_gt(W("2112332213232"), 7, 13, 4, 3, &tr);
  CHECK(out.word == W("2331123232"));
  CHECK(out.shift == 18);
  CHECK(out.weight() == 35);
  // intermediates carry the published shift split
  CHECK(tr.steps[0].output == "(30003030·q^4, 211222·q^18)");
  CHECK(tr.steps[1].output == "0330003030");
  CHECK(tr.steps[2].output == "2331123232·q^18");
}

TEST_CASE("reduce_gt at k = 0 strips the tail") {
  ShiftedWord out = reduce_gt(W("121"), 2, 3, 0, 1);
  CHECK(out.word == W("12"));
  CHECK(out.shift == 0);
  CHECK(out.weight() == coinv(W("121")));
}

TEST_CASE("reduce_gt round trip over a full slice") {
  const int N = 4, L = 2, k = 1;
  for (int i = 1; i <= N - L + 1; ++i) {
    int seen = 0;
    for_each_word(*class_x(N, L, k), [&](const Word& w) {
      if (classify(w, 3) != WordClass::greater) return;
      if (p_one(w, 3) != Position::at(i)) return;
      ++seen;
      ShiftedWord out = reduce_gt(w, L, N, k, i);
      CHECK(out.weight() == coinv(w));
      CHECK(reduce_gt_inv(out, L, N, k, i) == w);
    });
    if (i <= N - L) CHECK(seen > 0);
  }
}

TEST_CASE("reduce_le reproduces the reverse-direction data") {
  TraceRecord tr;
  tr.initial_weight = coinv(W("2131332223232"));
  ShiftedWord out = reduce_le(W("2131332223232"), 7, 13, 5, 3, &tr);
  CHECK(out.word == W("2331123232"));
  CHECK(out.shift == 14);
  CHECK(tr.steps[0].output == "(0330003030·q^14, 21·q^6)");
  CHECK(reduce_le_inv(out, 7, 13, 5, 3) == W("2131332223232"));
}

TEST_CASE("reduce_le at k = L strips the head") {
  ShiftedWord out = reduce_le(W("32"), 1, 2, 1, 1);
  CHECK(out.word == W("2"));
  CHECK(out.shift == 0);
}

TEST_CASE("reduce_le round trip over a full slice") {
  const int N = 4, L = 2, k = 1;
  for (int j = 1; j <= N - k + 1; ++j) {
    for_each_word(*class_x(N, L, k), [&](const Word& w) {
      if (classify(w, 3) != WordClass::less_eq) return;
      if (p_top(w, 3) != Position::at(j)) return;
      ShiftedWord out = reduce_le(w, L, N, k, j);
      CHECK(out.weight() == coinv(w));
      CHECK(reduce_le_inv(out, L, N, k, j) == w);
    });
  }
}

TEST_CASE("factor_gt on the worked example") {
  TraceRecord tr;
  tr.initial_weight = coinv(W("2112332213232"));
  PipelineResult r = factor_gt(W("2112332213232"), 7, 13, 4, &tr);
  CHECK(r.target == ShiftedPair{W("3030003003033"), W("211222"), 4});
  CHECK(r.i == 3);
  CHECK(r.target.weight() == 35);
  CHECK(tr.shift_sum() == 4);
  CHECK(tr.steps[3].output == "3231123223·q^18");
  CHECK(tr.steps[4].output == "(3030003003·q^14, 211222·q^4)");
  CHECK(tr.steps[5].output == "3030003003033");
}

TEST_CASE("factor_gt generating-function corollary at tiny size") {
  // the k = 0 greater class at N = 2, L = 1 is the whole two-letter class
  QPoly lhs = gf_if(*class_x(2, 1, 0), [](const Word& w) {
    return classify(w, 3) == WordClass::greater;
  });
  CHECK(lhs == q_binomial(2, 1) * q_binomial(0, 0));
}

TEST_CASE("factor_gt round trips over all small classes") {
  for (int N = 1; N <= 6; ++N)
    for (int L = 1; L <= N; ++L)
      for (int k = 0; k < L; ++k)
        for_each_word(*class_x(N, L, k), [&](const Word& w) {
          if (classify(w, 3) != WordClass::greater) return;
          PipelineResult r = factor_gt(w, L, N, k);
          CHECK(r.target.weight() == coinv(w));
          CHECK(factor_gt_inv(r.target, L, N, k) == w);
        });
}

TEST_CASE("factor_le inverse rebuilds the reverse-direction word") {
  Word y = factor_le_inv({W("3030003003033"), W("211222"), 0}, 7, 13, 5);
  CHECK(y == W("2131332223232"));
}

TEST_CASE("factor_le generating-function corollary at tiny size") {
  QPoly lhs = gf_if(*class_x(2, 1, 1), [](const Word& w) {
    return classify(w, 3) == WordClass::less_eq;
  });
  CHECK(lhs == q_binomial(2, 1) * q_binomial(0, 0));
}

TEST_CASE("factor_le round trips over all small classes") {
  for (int N = 1; N <= 6; ++N)
    for (int L = 1; L <= N; ++L)
      for (int k = 1; k <= L; ++k)
        for_each_word(*class_x(N, L, k), [&](const Word& w) {
          if (classify(w, 3) != WordClass::less_eq) return;
          PipelineResult r = factor_le(w, L, N, k);
          CHECK(r.target.shift == 0);
          CHECK(r.target.weight() == coinv(w));
          CHECK(factor_le_inv(r.target, L, N, k) == w);
        });
}

TEST_CASE("pipelines reject words outside their class") {
  CHECK_THROWS_AS(factor_gt(W("2332"), 2, 4, 2, nullptr),
                  std::invalid_argument);  // k = L
  CHECK_THROWS_AS(factor_le(W("1212"), 2, 4, 0, nullptr),
                  std::invalid_argument);  // k = 0
  CHECK_THROWS_AS(reduce_gt(W("3211"), 3, 4, 1, 1),
                  std::invalid_argument);  // less-or-equal word
}

TEST_CASE("general_factor_gt on the published example") {
  PipelineResult r = general_factor_gt(W("3112443214243"), 4);
  CHECK(r.target == ShiftedPair{W("3121113112123"), W("211222"), 4});
  CHECK(r.k == 4);
  CHECK(r.target.weight() == 39);
  CHECK(coinv(W("3121113112123")) == 29);
  CHECK(coinv(W("211222")) == 6);
  CHECK(general_factor_gt_inv(r.target, 4, 4) == W("3112443214243"));
}

TEST_CASE("general pipelines match the three-letter ones when n = 3") {
  for (int N = 1; N <= 5; ++N)
    for (int L = 1; L <= N; ++L)
      for (int k = 0; k < L; ++k)
        for_each_word(*class_x(N, L, k), [&](const Word& w) {
          if (classify(w, 3) != WordClass::greater) return;
          PipelineResult grand = general_factor_gt(w, 3);
          PipelineResult primed = factor_gt(w, L, N, k);
          auto [core, mid] = bij::collapse_middle(w, 3);
          CHECK(grand.target.right == primed.target.right);
          CHECK(grand.target.shift == primed.target.shift);
          CHECK(grand.target.left ==
                bij::merge_middle(primed.target.left, mid));
          CHECK(grand.i == primed.i);
        });
}

TEST_CASE("general pipelines round trip at n = 4") {
  for (int L = 1; L <= 4; ++L) {
    int N = L + 2;
    if (N > 6) break;
    for (int k = 0; k <= L; ++k)
      for_each_word(*class_w(4, L, k, {1, 1}), [&](const Word& w) {
        if (classify(w, 4) == WordClass::greater) {
          PipelineResult r = general_factor_gt(w, 4);
          CHECK(r.target.weight() == coinv(w));
          CHECK(general_factor_gt_inv(r.target, 4, k) == w);
          int i = static_cast<int>(p_one(w, 4).value());
          PipelineResult rr = general_reduce_gt(w, 4, i);
          CHECK(rr.target.weight() == coinv(w));
          CHECK(general_reduce_gt_inv(rr.target, 4, k, i) == w);
        } else {
          PipelineResult r = general_factor_le(w, 4);
          CHECK(r.target.weight() == coinv(w));
          CHECK(general_factor_le_inv(r.target, 4, k) == w);
          int j = static_cast<int>(p_top(w, 4).value());
          PipelineResult rr = general_reduce_le(w, 4, j);
          CHECK(rr.target.weight() == coinv(w));
          CHECK(general_reduce_le_inv(rr.target, 4, k, j) == w);
        }
      });
  }
}

TEST_CASE("generating functions of the pipeline domains match closed forms") {
  for (int N = 1; N <= 6; ++N)
    for (int L = 1; L <= N; ++L)
      for (int k = 0; k <= L; ++k) {
        QPoly gt = gf_if(*class_x(N, L, k), [](const Word& w) {
          return classify(w, 3) == WordClass::greater;
        });
        QPoly le = gf_if(*class_x(N, L, k), [](const Word& w) {
          return classify(w, 3) == WordClass::less_eq;
        });
        CHECK(gt == (q_multinomial(N, {L, N - L}) *
                     q_multinomial(L - 1, {L - 1 - k, k}))
                        .shifted(k));
        CHECK(le == q_multinomial(N, {L, N - L}) *
                        q_multinomial(L - 1, {L - k, k - 1}));
        for (int i = 1; i <= N - L + 1; ++i) {
          QPoly sliced = gf_if(*class_x(N, L, k), [&](const Word& w) {
            return classify(w, 3) == WordClass::greater &&
                   p_one(w, 3) == Position::at(i);
          });
          CHECK(sliced ==
                q_multinomial(N - i, {L - k - 1, N - L - i + 1, k})
                    .shifted(k + static_cast<long long>(i - 1) * L));
        }
        for (int j = 1; j <= N - k + 1; ++j) {
          QPoly sliced = gf_if(*class_x(N, L, k), [&](const Word& w) {
            return classify(w, 3) == WordClass::less_eq &&
                   p_top(w, 3) == Position::at(j);
          });
          CHECK(sliced ==
                q_multinomial(N - j, {L - k, N - L - j + 1, k - 1})
                    .shifted(static_cast<long long>(j - 1) * L));
        }
      }
}

TEST_CASE("shift_up on the published example") {
  TraceRecord tr;
  ShiftResult r = shift_up(W("3112443214243"), 4, &tr);
  CHECK(r.word == W("3141442324243"));
  CHECK(r.k == 4);
  CHECK(coinv(r.word) == 35);
  CHECK(p_top(r.word, 4) == Position::at(3));
  CHECK(p_one(r.word, 4) == Position::at(6));
  CHECK(classify(r.word, 4) == WordClass::less_eq);
  check_trace(tr, 4);
  CHECK(shift_down(r.word, 4).word == W("3112443214243"));
}

TEST_CASE("shift_up is a bijection with pointwise weight drop") {
  for (int N = 1; N <= 5; ++N)
    for (int L = 1; L <= N; ++L)
      for (int k = 0; k < L; ++k) {
        std::set<Word> image;
        long long domain = 0;
        for_each_word(*class_x(N, L, k), [&](const Word& w) {
          if (classify(w, 3) != WordClass::greater) return;
          ++domain;
          ShiftResult r = shift_up(w, 3);
          CHECK(coinv(w) - coinv(r.word) == k);
          CHECK(classify(r.word, 3) == WordClass::less_eq);
          CHECK(shift_down(r.word, 3).word == w);
          image.insert(r.word);
        });
        std::set<Word> codomain;
        for_each_word(*class_x(N, L, k + 1), [&](const Word& w) {
          if (classify(w, 3) == WordClass::less_eq) codomain.insert(w);
        });
        CHECK(image == codomain);
        CHECK(static_cast<long long>(image.size()) == domain);
      }
}

TEST_CASE("short and long routes agree pointwise") {
  for (int N = 1; N <= 5; ++N)
    for (int L = 1; L <= N; ++L)
      for (int k = 0; k < L; ++k)
        for_each_word(*class_x(N, L, k), [&](const Word& w) {
          if (classify(w, 3) != WordClass::greater) return;
          CHECK(shift_up(w, 3).word == shift_up_composed(w, 3).word);
        });
  for (int L = 1; L <= 3; ++L)
    for (int k = 0; k < L; ++k)
      for_each_word(*class_w(4, L, k, {1, 1}), [&](const Word& w) {
        if (classify(w, 4) != WordClass::greater) return;
        CHECK(shift_up(w, 4).word == shift_up_composed(w, 4).word);
      });
}

TEST_CASE("composed traces conserve weight and sum their shifts") {
  TraceRecord fwd;
  ShiftResult up = shift_up_composed(W("3112443214243"), 4, &fwd);
  CHECK(fwd.initial_weight == 39);
  CHECK(fwd.final_weight == 39);
  check_trace(fwd, up.k);

  TraceRecord bwd;
  ShiftResult down = shift_down_composed(up.word, 4, &bwd);
  CHECK(down.word == W("3112443214243"));
  CHECK(bwd.initial_shift == 4);
  CHECK(bwd.initial_weight == 39);
  CHECK(bwd.final_weight == 39);
  check_trace(bwd, 0);
}

TEST_CASE("shift traces at the boundary dispatches") {
  // k = 0 entry and k' = L exit in one word; weight is conserved at k = 0
  TraceRecord both;
  ShiftResult r = shift_up(W("12"), 3, &both);
  CHECK(r.word == W("23"));
  CHECK(r.k == 0);
  CHECK(coinv(W("12")) == coinv(W("23")));
  check_trace(both, 0);
  CHECK(both.str().find("disassemble_no3") != std::string::npos);
  CHECK(both.str().find("assemble_no1") != std::string::npos);
  CHECK(shift_down(W("23"), 3).word == W("12"));
  CHECK(shift_up(W("21"), 3).word == W("32"));

  // k' = L exit only
  TraceRecord top;
  ShiftResult r2 = shift_up(W("13"), 3, &top);
  CHECK(r2.word == W("33"));
  CHECK(r2.k == 1);
  check_trace(top, 1);
  CHECK(top.str().find("relabel_mask") != std::string::npos);
  TraceRecord down;
  CHECK(shift_down(W("33"), 3, &down).word == W("13"));
  check_trace(down, 0);
  CHECK(down.initial_shift == 1);

  // k = 0 entry only, composed route
  TraceRecord composed;
  ShiftResult r3 = shift_up_composed(W("112"), 3, &composed);
  CHECK(r3.k == 0);
  CHECK(classify(r3.word, 3) == WordClass::less_eq);
  check_trace(composed, 0);
}

TEST_CASE("true-goal generating function identity at small scale") {
  for (int N = 1; N <= 6; ++N)
    for (int L = 1; L <= N; ++L)
      for (int k = 0; k < L; ++k) {
        QPoly gt = gf_if(*class_x(N, L, k), [](const Word& w) {
          return classify(w, 3) == WordClass::greater;
        });
        QPoly le = gf_if(*class_x(N, L, k + 1), [](const Word& w) {
          return classify(w, 3) == WordClass::less_eq;
        });
        CHECK(gt == le.shifted(k));
      }
}

TEST_CASE("trace text format") {
  TraceRecord tr;
  shift_up_composed(W("3112443214243"), 4, &tr);
  std::string text = tr.str();
  CHECK(text.find("collapse_middle: 3112443214243 -> (2112332213232, "
                  "323223) [shift +0]") != std::string::npos);
  CHECK(text.find("[shift +22]") != std::string::npos);
  CHECK(text.find("[shift -14]") != std::string::npos);
}
