#include <doctest.h>

#include <set>
#include <stdexcept>

#include "qcoinv/bijections.hpp"
#include "qcoinv/words.hpp"

using namespace qcoinv;

namespace {
Word W(const char* s) { return Word::parse(s); }
}  // namespace

TEST_CASE("strip_head") {
  ShiftedWord out = bij::strip_head(W("0330003030"));
  CHECK(out.word == W("30003030"));
  CHECK(out.shift == 4);  // one leading zero times four 3s
  CHECK(bij::strip_head(W("30")) == ShiftedWord{W("0"), 0});
  CHECK_THROWS_AS(bij::strip_head(W("000")), std::invalid_argument);
  CHECK_THROWS_AS(bij::strip_head(W("012")), std::invalid_argument);
}

TEST_CASE("restore_head recovers the prefix length from the content") {
  CHECK(bij::restore_head(W("30003030"), 9, 4) == W("0330003030"));
  CHECK_THROWS_AS(bij::restore_head(W("30003030"), 9, 5),
                  std::invalid_argument);  // wrong high count
  CHECK_THROWS_AS(bij::restore_head(W("000000"), 4, 1),
                  std::invalid_argument);  // recovered s < 0
}

TEST_CASE("strip_head round trip over a full class") {
  int A = 3, B = 2;  // R(0^2 3^2)
  int seen = 0;
  for_each_word(*make_class({{0, A + 1 - B}, {3, B}}), [&](const Word& w) {
    ++seen;
    ShiftedWord out = bij::strip_head(w);
    CHECK(bij::restore_head(out.word, A, B) == w);
    CHECK(out.weight() == coinv(w));
  });
  CHECK(seen == 6);
}

TEST_CASE("strip_tail") {
  ShiftedWord out = bij::strip_tail(W("211222"));
  CHECK(out.word == W("21"));
  CHECK(out.shift == 6);  // three trailing 2s times two 1s
  CHECK(bij::strip_tail(W("21221")) == ShiftedWord{W("2122"), 0});
  CHECK_THROWS_AS(bij::strip_tail(W("222")), std::invalid_argument);

  for_each_word(*make_class({{1, 2}, {2, 2}}), [&](const Word& w) {
    ShiftedWord cut = bij::strip_tail(w);
    CHECK(bij::restore_tail(cut.word, 3, 2) == w);
    CHECK(cut.weight() == coinv(w));
  });
}

TEST_CASE("strip_tail on the zero/three alphabet") {
  ShiftedWord out = bij::strip_tail(W("3030003003033"), 0, 3);
  CHECK(out.word == W("3030003003"));
  CHECK(out.shift == 14);  // two trailing 3s times seven 0s
  CHECK(bij::restore_tail(out.word, 12, 7, 0, 3) == W("3030003003033"));
}

TEST_CASE("split_threes and join_threes") {
  auto [y, z] = bij::split_threes(W("231132"));
  CHECK(y == W("030030"));
  CHECK(z == W("2112"));
  CHECK(bij::join_threes(W("303000"), W("1212")) == W("313212"));
  auto [y3, z3] = bij::split_threes(W("333"));
  CHECK(y3 == W("333"));
  CHECK(z3 == Word{});
  CHECK_THROWS_AS(bij::join_threes(W("300"), W("1")), std::invalid_argument);
}

TEST_CASE("split_threes preserves weight additively") {
  for_each_word(*make_class({{1, 2}, {2, 2}, {3, 2}}), [&](const Word& v) {
    auto [y, z] = bij::split_threes(v);
    CHECK(coinv(v) == coinv(y) + coinv(z));
    CHECK(bij::join_threes(y, z) == v);
  });
}

TEST_CASE("swap_adjacent") {
  CHECK(bij::swap_adjacent(W("2311323331"), 2) == W("2211232231"));
  CHECK(bij::swap_adjacent(W("111"), 2) == W("111"));
  CHECK(bij::swap_adjacent(W("1221"), 1) == W("2112"));
  CHECK(coinv(W("1221")) == coinv(W("2112")));
  CHECK(bij::swap_adjacent(W("444"), 2) == W("444"));
}

TEST_CASE("swap_adjacent is a coinv-preserving involution") {
  for_each_word(*make_class({{1, 1}, {2, 1}, {3, 1}}), [&](const Word& v) {
    Word once = bij::swap_adjacent(v, 2);
    CHECK(coinv(once) == coinv(v));
    CHECK(bij::swap_adjacent(once, 2) == v);
  });
  for_each_word(*make_class({{1, 2}, {2, 3}, {3, 1}}), [&](const Word& v) {
    Word once = bij::swap_adjacent(v, 2);
    CHECK(coinv(once) == coinv(v));
    CHECK(Freqs::of(once).count(2) == 1);
    CHECK(Freqs::of(once).count(3) == 3);
    CHECK(bij::swap_adjacent(once, 2) == v);
  });
}

TEST_CASE("collapse_middle") {
  auto [y, z] = bij::collapse_middle(W("3112443214243"), 4);
  CHECK(y == W("2112332213232"));
  CHECK(z == W("323223"));
  CHECK(coinv(W("3112443214243")) == 39);
  CHECK(coinv(y) == 35);
  CHECK(coinv(z) == 4);

  auto [y3, z3] = bij::collapse_middle(W("123"), 3);
  CHECK(y3 == W("123"));
  CHECK(z3 == W("2"));

  CHECK(bij::expand_middle(y, z, 4) == W("3112443214243"));
  CHECK_THROWS_AS(bij::collapse_middle(W("105"), 4), std::invalid_argument);
  CHECK_THROWS_AS(bij::expand_middle(W("22"), W("2"), 4),
                  std::invalid_argument);
}

TEST_CASE("merge_middle and split_middle") {
  Word merged = bij::merge_middle(W("3030003003033"), W("323223"));
  CHECK(merged == W("3121113112123"));
  CHECK(coinv(W("3030003003033")) == 25);
  CHECK(coinv(W("323223")) == 4);
  CHECK(coinv(merged) == 29);
  CHECK(bij::merge_middle(W("000"), Word{}) == W("111"));
  auto [y, z] = bij::split_middle(merged);
  CHECK(y == W("3030003003033"));
  CHECK(z == W("323223"));
  CHECK_THROWS_AS(bij::merge_middle(W("30"), Word{}), std::invalid_argument);
  CHECK_THROWS_AS(bij::merge_middle(W("30"), W("1")), std::invalid_argument);
}

TEST_CASE("assemble builds the published example") {
  Word w = bij::assemble(5, 3, 4, 6, 13, W("0030003030"), W("2122"));
  CHECK(w == W("2132231223232"));
  CHECK(p_one(w, 3) == Position::at(5));
  CHECK(p_top(w, 3) == Position::at(3));
  CHECK(coinv(W("0030003030")) == 13);
  CHECK(coinv(W("2122")) == 2);
  CHECK(coinv(w) == 31);
  CHECK(31 == 13 + 2 + 2 * 4 + 2 * 4);
}

TEST_CASE("assemble rejects the degenerate shapes") {
  CHECK_THROWS_WITH_AS(
      bij::assemble(1, 1, 0, 2, 3, W("000"), W("12")),
      doctest::Contains("assemble_no3"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      bij::assemble(1, 1, 2, 2, 3, W("03"), Word{}),
      doctest::Contains("assemble_no1"), std::invalid_argument);
  CHECK_THROWS_AS(bij::assemble(9, 3, 4, 6, 13, W("0030003030"), W("2122")),
                  std::invalid_argument);
  CHECK_THROWS_AS(bij::assemble(5, 3, 4, 6, 13, W("0030003031"), W("2122")),
                  std::invalid_argument);
}

TEST_CASE("disassemble inverts assemble exhaustively") {
  const int N = 5, L = 3, k = 1;
  for (int i = 1; i <= N - L + 1; ++i)
    for (int j = 1; j <= N - k + 1; ++j) {
      auto masks = make_class({{0, N - j - k + 1}, {3, k - 1}});
      auto rests = make_class({{1, L - k - 1}, {2, N - L - i + 1}});
      if (!masks || !rests) continue;
      for_each_word(*masks, [&](const Word& y) {
        for_each_word(*rests, [&](const Word& z) {
          Word w = bij::assemble(i, j, k, L, N, y, z);
          auto parts = bij::disassemble(w);
          CHECK(parts.i == i);
          CHECK(parts.j == j);
          CHECK(parts.y == y);
          CHECK(parts.z == z);
          CHECK(coinv(w) ==
                coinv(y) + coinv(z) + (j - 1) * k + (L - k) * (i - 1));
        });
      });
    }
}

TEST_CASE("disassemble routes degenerate words to the special maps") {
  CHECK_THROWS_WITH_AS(bij::disassemble(W("1122")),
                       doctest::Contains("disassemble_no3"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(bij::disassemble(W("2233")),
                       doctest::Contains("disassemble_no1"),
                       std::invalid_argument);
}

TEST_CASE("assemble_no3") {
  Word w = bij::assemble_no3(2, 2, 4, W("21"));
  CHECK(w == W("2112"));
  CHECK(p_one(w, 3) == Position::at(2));
  CHECK(coinv(w) == coinv(W("21")) + 2 * 1);
  CHECK(bij::assemble_no3(1, 2, 3, W("12")) == W("121"));
  auto parts = bij::disassemble_no3(W("2112"));
  CHECK(parts.i == 2);
  CHECK(parts.z == W("21"));
  CHECK_THROWS_AS(bij::assemble_no3(2, 2, 4, W("22")), std::invalid_argument);
}

TEST_CASE("assemble_no1") {
  Word w = bij::assemble_no1(2, 2, 4, W("32"));
  CHECK(w == W("2332"));
  CHECK(p_top(w, 3) == Position::at(2));
  CHECK(coinv(w) == coinv(W("32")) + 2 * 1);
  CHECK(bij::assemble_no1(1, 3, 4, W("233")) == W("3233"));
  auto parts = bij::disassemble_no1(W("2332"));
  CHECK(parts.j == 2);
  CHECK(parts.y == W("32"));
  CHECK_THROWS_AS(bij::assemble_no1(2, 2, 4, W("33")), std::invalid_argument);
}

TEST_CASE("position criterion for assembled words") {
  // leftmost 3 sits left of the rightmost 1 exactly when i + j + k <= N + 1
  for (int N = 2; N <= 7; ++N)
    for (int L = 2; L <= N; ++L)
      for (int k = 1; k < L; ++k)
        for (int i = 1; i <= N - L + 1; ++i)
          for (int j = 1; j <= N - k + 1; ++j) {
            auto masks = make_class({{0, N - j - k + 1}, {3, k - 1}});
            auto rests = make_class({{1, L - k - 1}, {2, N - L - i + 1}});
            if (!masks || !rests) continue;
            for_each_word(*masks, [&](const Word& y) {
              for_each_word(*rests, [&](const Word& z) {
                Word w = bij::assemble(i, j, k, L, N, y, z);
                bool left = slot_of(w, Side::leftmost, 3) <
                            slot_of(w, Side::rightmost, 1);
                CHECK(left == (i + j + k <= N + 1));
              });
            });
          }
}

TEST_CASE("replaced") {
  CHECK(bij::replaced(W("0030"), 0, 2) == W("2232"));
  CHECK(bij::replaced(Word{}, 0, 2) == Word{});
}
