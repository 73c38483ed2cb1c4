#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcoinv/bijections.hpp"
#include "qcoinv/pipelines.hpp"
#include "qcoinv/qpoly.hpp"
#include "qcoinv/words.hpp"

namespace qcoinv::verify {

using nlohmann::json;

// Catalog of the identities the brute-force oracle is checked against.
enum class IdentityId {
  EQ1,
  MULTINOM_SYM,
  PROP_FG_SUM,
  PROP_H_FACTOR,
  PROP_K_SYM,
  T2A,
  T2B,
  T2C,
  E91P,
  E92P,
  E93P,
  E94P,
  E91,
  E92,
  E93,
  E94,
  TRUE_GOAL,
};

inline const std::vector<std::pair<IdentityId, const char*>>& identity_names() {
  static const std::vector<std::pair<IdentityId, const char*>> names = {
      {IdentityId::EQ1, "EQ1"},
      {IdentityId::MULTINOM_SYM, "MULTINOM_SYM"},
      {IdentityId::PROP_FG_SUM, "PROP_FG_SUM"},
      {IdentityId::PROP_H_FACTOR, "PROP_H_FACTOR"},
      {IdentityId::PROP_K_SYM, "PROP_K_SYM"},
      {IdentityId::T2A, "T2A"},
      {IdentityId::T2B, "T2B"},
      {IdentityId::T2C, "T2C"},
      {IdentityId::E91P, "E91P"},
      {IdentityId::E92P, "E92P"},
      {IdentityId::E93P, "E93P"},
      {IdentityId::E94P, "E94P"},
      {IdentityId::E91, "E91"},
      {IdentityId::E92, "E92"},
      {IdentityId::E93, "E93"},
      {IdentityId::E94, "E94"},
      {IdentityId::TRUE_GOAL, "TRUE_GOAL"},
  };
  return names;
}

inline const char* name(IdentityId id) {
  for (const auto& [i, n] : identity_names())
    if (i == id) return n;
  return "?";
}

inline std::optional<IdentityId> identity_from(std::string_view s) {
  for (const auto& [i, n] : identity_names())
    if (s == n) return i;
  return std::nullopt;
}

// Parameter pack shared by all checks. Fields default to -1 / empty and
// each identity reads only what it needs.
struct Params {
  int n = -1;
  int N = -1;
  int L = -1;
  int k = -1;
  int i = -1;
  int j = -1;
  std::vector<int> a;           // middle-letter multiplicities a_2..a_{n-1}
  int A = -1, B = -1, C = -1;   // sizes for the preliminary identities
  std::vector<long long> freqs; // raw letter frequencies, index = letter
  unsigned long long cap = default_cap;

  json to_json() const {
    json p = json::object();
    if (n >= 0) p["n"] = n;
    if (N >= 0) p["N"] = N;
    if (L >= 0) p["L"] = L;
    if (k >= 0) p["k"] = k;
    if (i >= 0) p["i"] = i;
    if (j >= 0) p["j"] = j;
    if (!a.empty()) p["a"] = a;
    if (A >= 0) p["A"] = A;
    if (B >= 0) p["B"] = B;
    if (C >= 0) p["C"] = C;
    if (!freqs.empty()) p["freqs"] = freqs;
    return p;
  }

  std::string str() const { return to_json().dump(); }
};

struct Counterexample {
  std::string word;
  std::string expected;
  std::string actual;
};

struct Report {
  std::string identity;
  Params params;
  QPoly lhs;
  QPoly rhs;
  bool pass = false;
  std::vector<Counterexample> counterexamples;
  std::string note;
  double elapsed_seconds = 0.0;

  json to_json(bool include_elapsed = true) const {
    json r;
    r["identity"] = identity;
    r["params"] = params.to_json();
    r["lhs"] = lhs.coeffs();
    r["rhs"] = rhs.coeffs();
    r["verdict"] = pass ? "pass" : "fail";
    json cs = json::array();
    for (const auto& c : counterexamples)
      cs.push_back({{"word", c.word},
                    {"expected", c.expected},
                    {"actual", c.actual}});
    r["counterexamples"] = cs;
    if (!note.empty()) r["note"] = note;
    if (include_elapsed) r["elapsed_seconds"] = elapsed_seconds;
    return r;
  }

  std::string line() const {
    std::string s = pass ? "pass" : "FAIL";
    s += "  " + identity + " " + params.str();
    if (!pass && !note.empty()) s += "  [" + note + "]";
    return s;
  }
};

namespace detail {

inline void need(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

// Generating function over an optional class (empty class when nullopt).
template <class Pred>
QPoly gf_opt(const std::optional<Freqs>& f, Pred&& pred,
             unsigned long long cap) {
  if (!f) return {};
  return gf_if(*f, pred, cap);
}

inline QPoly gf_opt(const std::optional<Freqs>& f, unsigned long long cap) {
  return gf_opt(f, [](const Word&) { return true; }, cap);
}

inline unsigned long long size_opt(const std::optional<Freqs>& f,
                                   unsigned long long cap) {
  if (!f) return 0;
  unsigned long long n = qcoinv::detail::rearrangement_count(*f, cap);
  if (n > cap) throw CapExceeded(n, false, cap);
  return n;
}

inline std::vector<long long> middle_parts(const Params& p) {
  return std::vector<long long>(p.a.begin(), p.a.end());
}

template <class Fn>
Report timed(std::string identity, const Params& p, Fn&& body) {
  Report r;
  r.identity = std::move(identity);
  r.params = p;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
    r.pass = r.lhs == r.rhs && r.counterexamples.empty() && r.note.empty();
  } catch (const std::exception& e) {
    r.pass = false;
    r.note = e.what();
  }
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return r;
}

inline void add_counterexample(Report& r, const std::string& word,
                               std::string expected, std::string actual) {
  constexpr std::size_t kMax = 8;
  if (r.counterexamples.size() < kMax)
    r.counterexamples.push_back(
        {word, std::move(expected), std::move(actual)});
  if (r.note.empty()) r.note = "counterexamples found";
}

}  // namespace detail

// lhs = brute-force generating function over the identity's word set;
// rhs = the closed form evaluated in exact polynomial arithmetic.
inline Report check_identity(IdentityId id, const Params& p) {
  using detail::need;
  const unsigned long long cap = p.cap;

  switch (id) {
    case IdentityId::EQ1: {
      need(!p.freqs.empty(), "EQ1 needs freqs");
      Freqs f(p.freqs);
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = gf(f, cap);
        r.rhs = q_multinomial(f.total(), f.counts);
      });
    }
    case IdentityId::MULTINOM_SYM: {
      need(!p.freqs.empty(), "MULTINOM_SYM needs freqs");
      Freqs f(p.freqs);
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = gf(f, cap);
        std::vector<long long> rev(f.counts.rbegin(), f.counts.rend());
        r.rhs = q_multinomial(f.total(), rev);
      });
    }
    case IdentityId::PROP_FG_SUM: {
      need(p.A >= 0 && p.B >= 1 && p.B <= p.A + 1,
           "PROP_FG_SUM needs 1 <= B <= A+1");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(make_class({{0, p.A + 1 - p.B}, {3, p.B}}), cap);
        QPoly sum;
        for (int s = 0; s <= p.A + 1 - p.B; ++s)
          sum += q_binomial(p.A - s, p.B - 1).shifted(
              static_cast<long long>(s) * p.B);
        r.rhs = sum;
      });
    }
    case IdentityId::PROP_H_FACTOR: {
      need(p.A >= 0 && p.B >= 0 && p.C >= 0,
           "PROP_H_FACTOR needs A, B, C >= 0");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs =
            detail::gf_opt(make_class({{1, p.A}, {2, p.B}, {3, p.C}}), cap);
        r.rhs = q_multinomial(p.A + p.B + p.C, {p.A + p.B, p.C}) *
                q_multinomial(p.A + p.B, {p.A, p.B});
      });
    }
    case IdentityId::PROP_K_SYM: {
      need(p.A >= 0 && p.B >= 0 && p.C >= 0, "PROP_K_SYM needs A, B, C >= 0");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs =
            detail::gf_opt(make_class({{1, p.A}, {2, p.B}, {3, p.C}}), cap);
        r.rhs = q_multinomial(p.A + p.B + p.C, {p.A, p.C, p.B});
      });
    }
    case IdentityId::T2A: {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N && p.k > 0 && p.k < p.L,
           "T2A needs 0 < k < L <= N");
      need(p.i >= 1 && p.i <= p.N - p.L + 1, "T2A: i outside 1..N-L+1");
      need(p.j >= 1 && p.j <= p.N - p.k + 1, "T2A: j outside 1..N-k+1");
      return detail::timed(name(id), p, [&](Report& r) {
        const bool crit_expected = p.i + p.j + p.k <= p.N + 1;
        r.lhs = detail::gf_opt(
            class_x(p.N, p.L, p.k),
            [&](const Word& w) {
              if (p_one(w, 3) != Position::at(p.i) ||
                  p_top(w, 3) != Position::at(p.j))
                return false;
              bool left = slot_of(w, Side::leftmost, 3) <
                          slot_of(w, Side::rightmost, 1);
              if (left != crit_expected)
                detail::add_counterexample(
                    r, w.str(),
                    std::string("leftmost-3 before rightmost-1: ") +
                        (crit_expected ? "true" : "false"),
                    left ? "true" : "false");
              return true;
            },
            cap);
        r.rhs = (q_binomial(p.N - p.j, p.k - 1) *
                 q_binomial(p.N - p.i - p.k, p.L - p.k - 1))
                    .shifted(static_cast<long long>(p.j - 1) * p.k +
                             static_cast<long long>(p.L - p.k) * (p.i - 1));
      });
    }
    case IdentityId::T2B: {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N, "T2B needs 0 < L <= N");
      need(p.i >= 1 && p.i <= p.N - p.L + 1, "T2B: i outside 1..N-L+1");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_x(p.N, p.L, 0),
            [&](const Word& w) { return p_one(w, 3) == Position::at(p.i); },
            cap);
        r.rhs = q_binomial(p.N - p.i, p.L - 1)
                    .shifted(static_cast<long long>(p.L) * (p.i - 1));
      });
    }
    case IdentityId::T2C: {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N, "T2C needs 0 < L <= N");
      need(p.j >= 1 && p.j <= p.N - p.L + 1, "T2C: j outside 1..N-L+1");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_x(p.N, p.L, p.L),
            [&](const Word& w) { return p_top(w, 3) == Position::at(p.j); },
            cap);
        r.rhs = q_binomial(p.N - p.j, p.L - 1)
                    .shifted(static_cast<long long>(p.j - 1) * p.L);
      });
    }
    case IdentityId::E91P: {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N && p.k >= 0 && p.k <= p.L,
           "E91P needs 0 <= k <= L <= N");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_x(p.N, p.L, p.k),
            [&](const Word& w) { return classify(w, 3) == WordClass::greater; },
            cap);
        r.rhs = (q_multinomial(p.N, {p.L, p.N - p.L}) *
                 q_multinomial(p.L - 1, {p.L - 1 - p.k, p.k}))
                    .shifted(p.k);
      });
    }
    case IdentityId::E92P: {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N && p.k >= 0 && p.k <= p.L,
           "E92P needs 0 <= k <= L <= N");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_x(p.N, p.L, p.k),
            [&](const Word& w) { return classify(w, 3) == WordClass::less_eq; },
            cap);
        r.rhs = q_multinomial(p.N, {p.L, p.N - p.L}) *
                q_multinomial(p.L - 1, {p.L - p.k, p.k - 1});
      });
    }
    case IdentityId::E93P: {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N && p.k >= 0 && p.k <= p.L,
           "E93P needs 0 <= k <= L <= N");
      need(p.i >= 1 && p.i <= p.N - p.L + 1, "E93P: i outside 1..N-L+1");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_x(p.N, p.L, p.k),
            [&](const Word& w) {
              return classify(w, 3) == WordClass::greater &&
                     p_one(w, 3) == Position::at(p.i);
            },
            cap);
        r.rhs = q_multinomial(p.N - p.i,
                              {p.L - p.k - 1, p.N - p.L - p.i + 1, p.k})
                    .shifted(p.k + static_cast<long long>(p.i - 1) * p.L);
      });
    }
    case IdentityId::E94P: {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N && p.k >= 0 && p.k <= p.L,
           "E94P needs 0 <= k <= L <= N");
      need(p.j >= 1 && p.j <= p.N - p.k + 1, "E94P: j outside 1..N-k+1");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_x(p.N, p.L, p.k),
            [&](const Word& w) {
              return classify(w, 3) == WordClass::less_eq &&
                     p_top(w, 3) == Position::at(p.j);
            },
            cap);
        r.rhs = q_multinomial(p.N - p.j,
                              {p.L - p.k, p.N - p.L - p.j + 1, p.k - 1})
                    .shifted(static_cast<long long>(p.j - 1) * p.L);
      });
    }
    case IdentityId::E91:
    case IdentityId::E92: {
      need(p.n >= 3 && static_cast<int>(p.a.size()) == p.n - 2,
           "needs n and a_2..a_{n-1}");
      need(p.L >= 1 && p.k >= 0 && p.k <= p.L, "needs 0 <= k <= L");
      int Nv = p.L;
      for (int am : p.a) Nv += am;
      need(p.N < 0 || p.N == Nv, "N inconsistent with L + sum(a)");
      return detail::timed(name(id), p, [&](Report& r) {
        bool greater = id == IdentityId::E91;
        r.lhs = detail::gf_opt(
            class_w(p.n, p.L, p.k, p.a),
            [&](const Word& w) {
              return classify(w, p.n) ==
                     (greater ? WordClass::greater : WordClass::less_eq);
            },
            cap);
        std::vector<long long> parts = {p.L};
        for (int am : p.a) parts.push_back(am);
        QPoly front = q_multinomial(Nv, parts);
        r.rhs = greater ? (front * q_binomial(p.L - 1, p.k)).shifted(p.k)
                        : front * q_binomial(p.L - 1, p.k - 1);
      });
    }
    case IdentityId::E93: {
      need(p.n >= 3 && static_cast<int>(p.a.size()) == p.n - 2,
           "E93 needs n and a_2..a_{n-1}");
      need(p.L >= 1 && p.k >= 0 && p.k <= p.L, "E93 needs 0 <= k <= L");
      int Nv = p.L;
      for (int am : p.a) Nv += am;
      need(p.N < 0 || p.N == Nv, "N inconsistent with L + sum(a)");
      need(p.i >= 1 && p.i <= Nv - p.L + 1, "E93: i outside 1..N-L+1");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_w(p.n, p.L, p.k, p.a),
            [&](const Word& w) {
              return classify(w, p.n) == WordClass::greater &&
                     p_one(w, p.n) == Position::at(p.i);
            },
            cap);
        r.rhs = (q_multinomial(Nv - p.L, detail::middle_parts(p)) *
                 q_multinomial(Nv - p.i,
                               {p.L - p.k - 1, Nv - p.L - p.i + 1, p.k}))
                    .shifted(p.k + static_cast<long long>(p.i - 1) * p.L);
      });
    }
    case IdentityId::E94: {
      need(p.n >= 3 && static_cast<int>(p.a.size()) == p.n - 2,
           "E94 needs n and a_2..a_{n-1}");
      need(p.L >= 1 && p.k >= 0 && p.k <= p.L, "E94 needs 0 <= k <= L");
      int Nv = p.L;
      for (int am : p.a) Nv += am;
      need(p.N < 0 || p.N == Nv, "N inconsistent with L + sum(a)");
      need(p.j >= 1 && p.j <= Nv - p.k + 1, "E94: j outside 1..N-k+1");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_w(p.n, p.L, p.k, p.a),
            [&](const Word& w) {
              return classify(w, p.n) == WordClass::less_eq &&
                     p_top(w, p.n) == Position::at(p.j);
            },
            cap);
        r.rhs = (q_multinomial(Nv - p.L, detail::middle_parts(p)) *
                 q_multinomial(Nv - p.j,
                               {p.L - p.k, Nv - p.L - p.j + 1, p.k - 1}))
                    .shifted(static_cast<long long>(p.j - 1) * p.L);
      });
    }
    case IdentityId::TRUE_GOAL: {
      int n = p.n >= 3 ? p.n : 3;
      std::vector<int> a = p.a;
      if (n == 3 && a.empty()) {
        need(p.N >= 1 && p.L >= 1 && p.L <= p.N, "TRUE_GOAL needs N and L");
        a = {p.N - p.L};
      }
      need(static_cast<int>(a.size()) == n - 2, "TRUE_GOAL needs a_2..a_{n-1}");
      need(p.L >= 1 && p.k >= 0 && p.k < p.L, "TRUE_GOAL needs 0 <= k < L");
      return detail::timed(name(id), p, [&](Report& r) {
        r.lhs = detail::gf_opt(
            class_w(n, p.L, p.k, a),
            [&](const Word& w) { return classify(w, n) == WordClass::greater; },
            cap);
        r.rhs = detail::gf_opt(
                    class_w(n, p.L, p.k + 1, a),
                    [&](const Word& w) {
                      return classify(w, n) == WordClass::less_eq;
                    },
                    cap)
                    .shifted(p.k);
      });
    }
  }
  throw std::invalid_argument("check_identity: unknown identity");
}

// ---------------------------------------------------------------------------
// Bijection checks: for each map, enumerate its declared domain and verify
// codomain membership, inverse-composes-to-identity, the exact weight law,
// and surjectivity (by set equality against the enumerated codomain where
// the codomain is a filtered class, by cardinality otherwise).
// ---------------------------------------------------------------------------

namespace detail {

struct BijContext {
  Report* r;
  unsigned long long cap;

  void mismatch(const Word& w, std::string expected, std::string actual) {
    add_counterexample(*r, w.str(), std::move(expected), std::move(actual));
  }
};

}  // namespace detail

inline const std::vector<std::string>& bijection_names() {
  static const std::vector<std::string> names = {
      "strip_head",        "strip_tail",        "split_threes",
      "swap_adjacent",     "collapse_middle",   "merge_middle",
      "assemble",          "assemble_no3",      "assemble_no1",
      "reduce_gt",         "reduce_le",         "factor_gt",
      "factor_le",         "general_factor_gt", "general_factor_le",
      "general_reduce_gt", "general_reduce_le", "shift_up",
  };
  return names;
}

inline Report check_bijection(std::string_view which, const Params& p) {
  using detail::need;
  const unsigned long long cap = p.cap;
  const std::string who(which);

  auto run = [&](auto&& body) {
    return detail::timed(who, p, [&](Report& r) {
      detail::BijContext ctx{&r, cap};
      body(ctx, r);
    });
  };

  if (which == "strip_head" || which == "strip_tail") {
    need(p.A >= 0 && p.B >= 1 && p.B <= p.A + 1, who + " needs 1 <= B <= A+1");
    const bool head = which == "strip_head";
    const Letter lo = head ? 0 : 1, hi = head ? 3 : 2;
    return run([&](detail::BijContext& ctx, Report& r) {
      auto dom = head ? make_class({{lo, p.A + 1 - p.B}, {hi, p.B}})
                      : make_class({{lo, p.B}, {hi, p.A + 1 - p.B}});
      std::set<std::pair<long long, Word>> image;
      unsigned long long domain_size = 0;
      r.lhs = detail::gf_opt(dom, cap);
      const Letter keep = head ? hi : lo;   // B-1 copies survive
      const Letter other = head ? lo : hi;  // A+1-B-s copies survive
      if (dom)
        for_each_word(
            *dom,
            [&](const Word& w) {
              ++domain_size;
              ShiftedWord out = head ? bij::strip_head(w, lo, hi)
                                     : bij::strip_tail(w, lo, hi);
              long long s = out.shift / p.B;
              if (s < 0 || s > p.A + 1 - p.B ||
                  out.word.count(keep) != p.B - 1 ||
                  out.word.count(other) != p.A + 1 - p.B - s)
                ctx.mismatch(w, "image in the declared codomain", out.str());
              if (out.weight() != coinv(w))
                ctx.mismatch(w, "weight " + std::to_string(coinv(w)),
                             std::to_string(out.weight()));
              Word back = head ? bij::restore_head(out.word, p.A, p.B, lo, hi)
                               : bij::restore_tail(out.word, p.A, p.B, lo, hi);
              if (back != w) ctx.mismatch(w, w.str(), back.str());
              image.insert({s, out.word});
            },
            cap);
      unsigned long long codomain_size = 0;
      QPoly rhs;
      for (int s = 0; s <= p.A + 1 - p.B; ++s) {
        auto piece = make_class({{head ? 0 : 1, head ? p.A + 1 - p.B - s
                                                     : p.B - 1},
                                 {head ? 3 : 2, head ? p.B - 1
                                                     : p.A + 1 - p.B - s}});
        codomain_size += detail::size_opt(piece, cap);
        rhs += detail::gf_opt(piece, cap).shifted(
            static_cast<long long>(s) * p.B);
      }
      r.rhs = rhs;
      if (image.size() != domain_size || codomain_size != domain_size)
        r.note = "not a bijection: image size " +
                 std::to_string(image.size()) + ", domain " +
                 std::to_string(domain_size) + ", codomain " +
                 std::to_string(codomain_size);
    });
  }

  if (which == "split_threes" || which == "swap_adjacent") {
    need(p.A >= 0 && p.B >= 0 && p.C >= 0, who + " needs A, B, C >= 0");
    const bool split = which == "split_threes";
    return run([&](detail::BijContext& ctx, Report& r) {
      auto dom = make_class({{1, p.A}, {2, p.B}, {3, p.C}});
      r.lhs = detail::gf_opt(dom, cap);
      std::set<std::pair<Word, Word>> pairs;
      std::set<Word> image;
      unsigned long long domain_size = 0;
      if (dom)
        for_each_word(
            *dom,
            [&](const Word& v) {
              ++domain_size;
              if (split) {
                auto [y, z] = bij::split_threes(v);
                if (y.count(0) != p.A + p.B || y.count(3) != p.C ||
                    z.count(1) != p.A || z.count(2) != p.B)
                  ctx.mismatch(v, "split into the declared classes",
                               y.str() + " / " + z.str());
                if (coinv(y) + coinv(z) != coinv(v))
                  ctx.mismatch(v, "weight " + std::to_string(coinv(v)),
                               std::to_string(coinv(y) + coinv(z)));
                if (bij::join_threes(y, z) != v)
                  ctx.mismatch(v, v.str(), bij::join_threes(y, z).str());
                pairs.insert({y, z});
              } else {
                Word out = bij::swap_adjacent(v, 2);
                if (out.count(1) != p.A || out.count(2) != p.C ||
                    out.count(3) != p.B)
                  ctx.mismatch(v, "frequencies of 2 and 3 interchanged",
                               out.str());
                if (coinv(out) != coinv(v))
                  ctx.mismatch(v, "weight " + std::to_string(coinv(v)),
                               std::to_string(coinv(out)));
                if (bij::swap_adjacent(out, 2) != v)
                  ctx.mismatch(v, v.str(), bij::swap_adjacent(out, 2).str());
                image.insert(out);
              }
            },
            cap);
      if (split) {
        auto ymask = make_class({{0, p.A + p.B}, {3, p.C}});
        auto zrest = make_class({{1, p.A}, {2, p.B}});
        r.rhs = detail::gf_opt(ymask, cap) * detail::gf_opt(zrest, cap);
        unsigned long long codomain =
            detail::size_opt(ymask, cap) * detail::size_opt(zrest, cap);
        if (pairs.size() != domain_size || codomain != domain_size)
          r.note = "not a bijection onto the product";
      } else {
        auto target = make_class({{1, p.A}, {2, p.C}, {3, p.B}});
        r.rhs = detail::gf_opt(target, cap);
        if (image.size() != domain_size ||
            detail::size_opt(target, cap) != domain_size)
          r.note = "not a bijection onto the swapped class";
      }
    });
  }

  if (which == "collapse_middle") {
    need(p.n >= 3 && static_cast<int>(p.a.size()) == p.n - 2 && p.L >= 1 &&
             p.k >= 0 && p.k <= p.L,
         who + " needs n, a, 0 <= k <= L");
    return run([&](detail::BijContext& ctx, Report& r) {
      int Nv = p.L;
      for (int am : p.a) Nv += am;
      auto dom = class_w(p.n, p.L, p.k, p.a);
      auto xcls = class_x(Nv, p.L, p.k);
      auto mid = class_middle(p.n, p.a);
      r.lhs = detail::gf_opt(dom, cap);
      r.rhs = detail::gf_opt(xcls, cap) * detail::gf_opt(mid, cap);
      std::set<std::pair<Word, Word>> pairs;
      unsigned long long domain_size = 0;
      if (dom)
        for_each_word(
            *dom,
            [&](const Word& w) {
              ++domain_size;
              auto [core, z] = bij::collapse_middle(w, p.n);
              if (!xcls || !xcls->matches(core) || !mid || !mid->matches(z))
                ctx.mismatch(w, "pair in the declared classes",
                             core.str() + " / " + z.str());
              if (coinv(core) + coinv(z) != coinv(w))
                ctx.mismatch(w, "weight " + std::to_string(coinv(w)),
                             std::to_string(coinv(core) + coinv(z)));
              if (bij::expand_middle(core, z, p.n) != w)
                ctx.mismatch(w, w.str(),
                             bij::expand_middle(core, z, p.n).str());
              pairs.insert({core, z});
            },
            cap);
      unsigned long long codomain =
          detail::size_opt(xcls, cap) * detail::size_opt(mid, cap);
      if (pairs.size() != domain_size || codomain != domain_size)
        r.note = "not a bijection onto the product";
    });
  }

  if (which == "merge_middle") {
    need(p.n >= 3 && static_cast<int>(p.a.size()) == p.n - 2 && p.L >= 1,
         who + " needs n, a, L");
    return run([&](detail::BijContext& ctx, Report& r) {
      int Nv = p.L;
      for (int am : p.a) Nv += am;
      auto frames = make_class({{0, p.L}, {3, Nv - p.L}});
      auto mid = class_middle(p.n, p.a);
      std::vector<long long> target_counts(static_cast<std::size_t>(p.n), 0);
      target_counts[1] = p.L;
      for (int m = 0; m < p.n - 2; ++m)
        target_counts[static_cast<std::size_t>(m) + 2] =
            p.a[static_cast<std::size_t>(m)];
      Freqs target(std::move(target_counts));
      r.lhs = detail::gf_opt(frames, cap) * detail::gf_opt(mid, cap);
      r.rhs = gf(target, cap);
      std::set<Word> image;
      unsigned long long domain_size = 0;
      if (frames && mid)
        for_each_word(
            *frames,
            [&](const Word& y) {
              for_each_word(
                  *mid,
                  [&](const Word& z) {
                    ++domain_size;
                    Word v = bij::merge_middle(y, z);
                    if (!target.matches(v))
                      ctx.mismatch(y, "image in " + target.str(), v.str());
                    if (coinv(v) != coinv(y) + coinv(z))
                      ctx.mismatch(
                          y, "weight " + std::to_string(coinv(y) + coinv(z)),
                          std::to_string(coinv(v)));
                    auto [fy, fz] = bij::split_middle(v);
                    if (fy != y || fz != z)
                      ctx.mismatch(v, y.str() + " / " + z.str(),
                                   fy.str() + " / " + fz.str());
                    image.insert(v);
                  },
                  cap);
            },
            cap);
      unsigned long long codomain = detail::size_opt(
          std::optional<Freqs>(target), cap);
      if (image.size() != domain_size || codomain != domain_size)
        r.note = "not a bijection onto the merged class";
    });
  }

  if (which == "assemble") {
    need(p.N >= 1 && p.L >= 1 && p.L <= p.N && p.k > 0 && p.k < p.L,
         who + " needs 0 < k < L <= N");
    need(p.i >= 1 && p.j >= 1, who + " needs i and j");
    return run([&](detail::BijContext& ctx, Report& r) {
      auto masks = make_class({{0, p.N - p.j - p.k + 1}, {3, p.k - 1}});
      auto rests =
          make_class({{1, p.L - p.k - 1}, {2, p.N - p.L - p.i + 1}});
      long long shift = static_cast<long long>(p.j - 1) * p.k +
                        static_cast<long long>(p.L - p.k) * (p.i - 1);
      r.lhs = (detail::gf_opt(masks, cap) * detail::gf_opt(rests, cap))
                  .shifted(shift);
      std::set<Word> image;
      const bool crit_expected = p.i + p.j + p.k <= p.N + 1;
      if (masks && rests && p.i <= p.N - p.L + 1 && p.j <= p.N - p.k + 1)
        for_each_word(
            *masks,
            [&](const Word& y) {
              for_each_word(
                  *rests,
                  [&](const Word& z) {
                    Word w = bij::assemble(p.i, p.j, p.k, p.L, p.N, y, z);
                    auto cls = class_x(p.N, p.L, p.k);
                    if (!cls->matches(w) ||
                        p_one(w, 3) != Position::at(p.i) ||
                        p_top(w, 3) != Position::at(p.j))
                      ctx.mismatch(w, "member with the prescribed positions",
                                   w.str());
                    if (coinv(w) != coinv(y) + coinv(z) + shift)
                      ctx.mismatch(
                          w,
                          "weight " +
                              std::to_string(coinv(y) + coinv(z) + shift),
                          std::to_string(coinv(w)));
                    auto parts = bij::disassemble(w);
                    if (parts.i != p.i || parts.j != p.j || parts.y != y ||
                        parts.z != z)
                      ctx.mismatch(w, y.str() + " / " + z.str(),
                                   parts.y.str() + " / " + parts.z.str());
                    bool left = slot_of(w, Side::leftmost, 3) <
                                slot_of(w, Side::rightmost, 1);
                    if (left != crit_expected)
                      ctx.mismatch(w,
                                   std::string("position criterion: ") +
                                       (crit_expected ? "true" : "false"),
                                   left ? "true" : "false");
                    image.insert(w);
                  },
                  cap);
            },
            cap);
      std::set<Word> codomain;
      QPoly rhs;
      {
        std::vector<QPoly::Coeff> acc;
        auto cls = class_x(p.N, p.L, p.k);
        if (cls)
          for_each_word(
              *cls,
              [&](const Word& w) {
                if (p_one(w, 3) != Position::at(p.i) ||
                    p_top(w, 3) != Position::at(p.j))
                  return;
                codomain.insert(w);
                auto c = static_cast<std::size_t>(coinv(w));
                if (acc.size() <= c) acc.resize(c + 1, 0);
                ++acc[c];
              },
              cap);
        rhs = QPoly(std::move(acc));
      }
      r.rhs = rhs;
      if (image != codomain)
        r.note = "image differs from the enumerated codomain";
    });
  }

  if (which == "assemble_no3" || which == "assemble_no1") {
    const bool no3 = which == "assemble_no3";
    need(p.N >= 1 && p.L >= 1 && p.L <= p.N, who + " needs 0 < L <= N");
    int pos = no3 ? p.i : p.j;
    need(pos >= 1, who + (no3 ? " needs i" : " needs j"));
    return run([&](detail::BijContext& ctx, Report& r) {
      auto dom = no3 ? make_class({{1, p.L - 1}, {2, p.N - pos - p.L + 1}})
                     : make_class({{2, p.N - p.L - pos + 1}, {3, p.L - 1}});
      long long shift = static_cast<long long>(p.L) * (pos - 1);
      r.lhs = detail::gf_opt(dom, cap).shifted(shift);
      std::set<Word> image;
      if (dom && pos <= p.N - p.L + 1)
        for_each_word(
            *dom,
            [&](const Word& part) {
              Word w = no3 ? bij::assemble_no3(pos, p.L, p.N, part)
                           : bij::assemble_no1(pos, p.L, p.N, part);
              Position want = Position::at(pos);
              Position got = no3 ? p_one(w, 3) : p_top(w, 3);
              if (got != want)
                ctx.mismatch(w, "position " + want.str(), got.str());
              if (coinv(w) != coinv(part) + shift)
                ctx.mismatch(w,
                             "weight " + std::to_string(coinv(part) + shift),
                             std::to_string(coinv(w)));
              if (no3) {
                auto parts = bij::disassemble_no3(w);
                if (parts.i != pos || parts.z != part)
                  ctx.mismatch(w, part.str(), parts.z.str());
              } else {
                auto parts = bij::disassemble_no1(w);
                if (parts.j != pos || parts.y != part)
                  ctx.mismatch(w, part.str(), parts.y.str());
              }
              image.insert(w);
            },
            cap);
      std::set<Word> codomain;
      QPoly rhs;
      {
        std::vector<QPoly::Coeff> acc;
        auto cls = no3 ? class_x(p.N, p.L, 0) : class_x(p.N, p.L, p.L);
        if (cls && pos <= p.N - p.L + 1)
          for_each_word(
              *cls,
              [&](const Word& w) {
                Position got = no3 ? p_one(w, 3) : p_top(w, 3);
                if (got != Position::at(pos)) return;
                codomain.insert(w);
                auto c = static_cast<std::size_t>(coinv(w));
                if (acc.size() <= c) acc.resize(c + 1, 0);
                ++acc[c];
              },
              cap);
        rhs = QPoly(std::move(acc));
      }
      r.rhs = rhs;
      if (image != codomain)
        r.note = "image differs from the enumerated codomain";
    });
  }

  if (which == "reduce_gt" || which == "reduce_le") {
    const bool gt = which == "reduce_gt";
    need(p.N >= 1 && p.L >= 1 && p.L <= p.N, who + " needs 0 < L <= N");
    need(gt ? (p.k >= 0 && p.k < p.L) : (p.k > 0 && p.k <= p.L),
         who + ": k out of range");
    int pos = gt ? p.i : p.j;
    need(pos >= 1, who + (gt ? " needs i" : " needs j"));
    return run([&](detail::BijContext& ctx, Report& r) {
      auto dom = class_x(p.N, p.L, p.k);
      long long shift =
          gt ? p.k + static_cast<long long>(p.L) * (pos - 1)
             : static_cast<long long>(p.L) * (pos - 1);
      auto target =
          gt ? make_class({{1, p.L - p.k - 1},
                           {2, p.N - p.L - pos + 1},
                           {3, p.k}})
             : make_class(
                   {{1, p.L - p.k}, {2, p.N - p.L - pos + 1}, {3, p.k - 1}});
      std::set<Word> image;
      unsigned long long domain_size = 0;
      std::vector<QPoly::Coeff> acc;
      if (dom)
        for_each_word(
            *dom,
            [&](const Word& w) {
              WordClass want = gt ? WordClass::greater : WordClass::less_eq;
              Position at = Position::at(pos);
              if (classify(w, 3) != want) return;
              if ((gt ? p_one(w, 3) : p_top(w, 3)) != at) return;
              ++domain_size;
              auto c = static_cast<std::size_t>(coinv(w));
              if (acc.size() <= c) acc.resize(c + 1, 0);
              ++acc[c];
              ShiftedWord out = gt ? pipe::reduce_gt(w, p.L, p.N, p.k, pos)
                                   : pipe::reduce_le(w, p.L, p.N, p.k, pos);
              if (out.shift != shift || !target || !target->matches(out.word))
                ctx.mismatch(w, "image in the declared shifted class",
                             out.str());
              if (out.weight() != coinv(w))
                ctx.mismatch(w, "weight " + std::to_string(coinv(w)),
                             std::to_string(out.weight()));
              Word back = gt
                              ? pipe::reduce_gt_inv(out, p.L, p.N, p.k, pos)
                              : pipe::reduce_le_inv(out, p.L, p.N, p.k, pos);
              if (back != w) ctx.mismatch(w, w.str(), back.str());
              image.insert(out.word);
            },
            cap);
      r.lhs = QPoly(std::move(acc));
      r.rhs = detail::gf_opt(target, cap).shifted(shift);
      unsigned long long codomain = detail::size_opt(target, cap);
      if (image.size() != domain_size || codomain != domain_size)
        r.note = "not a bijection onto the contracted class";
    });
  }

  if (which == "factor_gt" || which == "factor_le") {
    const bool gt = which == "factor_gt";
    need(p.N >= 1 && p.L >= 1 && p.L <= p.N, who + " needs 0 < L <= N");
    need(gt ? (p.k >= 0 && p.k < p.L) : (p.k > 0 && p.k <= p.L),
         who + ": k out of range");
    return run([&](detail::BijContext& ctx, Report& r) {
      auto dom = class_x(p.N, p.L, p.k);
      auto frames = make_class({{0, p.L}, {3, p.N - p.L}});
      auto rests = gt ? make_class({{1, p.L - p.k - 1}, {2, p.k}})
                      : make_class({{1, p.L - p.k}, {2, p.k - 1}});
      long long shift = gt ? p.k : 0;
      std::set<std::pair<Word, Word>> image;
      unsigned long long domain_size = 0;
      std::vector<QPoly::Coeff> acc;
      if (dom)
        for_each_word(
            *dom,
            [&](const Word& w) {
              WordClass want = gt ? WordClass::greater : WordClass::less_eq;
              if (classify(w, 3) != want) return;
              ++domain_size;
              auto c = static_cast<std::size_t>(coinv(w));
              if (acc.size() <= c) acc.resize(c + 1, 0);
              ++acc[c];
              pipe::PipelineResult out =
                  gt ? pipe::factor_gt(w, p.L, p.N, p.k)
                     : pipe::factor_le(w, p.L, p.N, p.k);
              if (out.target.shift != shift || !frames ||
                  !frames->matches(out.target.left) || !rests ||
                  !rests->matches(out.target.right))
                ctx.mismatch(w, "pair in the declared shifted product",
                             out.target.str());
              if (out.target.weight() != coinv(w))
                ctx.mismatch(w, "weight " + std::to_string(coinv(w)),
                             std::to_string(out.target.weight()));
              Word back =
                  gt ? pipe::factor_gt_inv(out.target, p.L, p.N, p.k)
                     : pipe::factor_le_inv(out.target, p.L, p.N, p.k);
              if (back != w) ctx.mismatch(w, w.str(), back.str());
              image.insert({out.target.left, out.target.right});
            },
            cap);
      r.lhs = QPoly(std::move(acc));
      r.rhs = (detail::gf_opt(frames, cap) * detail::gf_opt(rests, cap))
                  .shifted(shift);
      unsigned long long codomain =
          detail::size_opt(frames, cap) * detail::size_opt(rests, cap);
      if (image.size() != domain_size || codomain != domain_size)
        r.note = "not a bijection onto the product";
    });
  }

  if (which == "general_factor_gt" || which == "general_factor_le" ||
      which == "general_reduce_gt" || which == "general_reduce_le") {
    const bool gt = which == "general_factor_gt" ||
                    which == "general_reduce_gt";
    const bool reduce = which == "general_reduce_gt" ||
                        which == "general_reduce_le";
    need(p.n >= 3 && static_cast<int>(p.a.size()) == p.n - 2 && p.L >= 1,
         who + " needs n, a, L");
    need(gt ? (p.k >= 0 && p.k < p.L) : (p.k > 0 && p.k <= p.L),
         who + ": k out of range");
    int pos = gt ? p.i : p.j;
    if (reduce) need(pos >= 1, who + " needs the fixed position");
    return run([&](detail::BijContext& ctx, Report& r) {
      int Nv = p.L;
      for (int am : p.a) Nv += am;
      auto dom = class_w(p.n, p.L, p.k, p.a);
      std::optional<Freqs> left_cls, right_cls;
      long long shift = 0;
      if (!reduce) {
        std::vector<long long> merged(static_cast<std::size_t>(p.n), 0);
        merged[1] = p.L;
        for (int m = 0; m < p.n - 2; ++m)
          merged[static_cast<std::size_t>(m) + 2] =
              p.a[static_cast<std::size_t>(m)];
        left_cls = Freqs(std::move(merged));
        right_cls = gt ? make_class({{1, p.L - p.k - 1}, {2, p.k}})
                       : make_class({{1, p.L - p.k}, {2, p.k - 1}});
        shift = gt ? p.k : 0;
      } else {
        left_cls = gt ? make_class({{1, p.L - p.k - 1},
                                    {2, Nv - p.L - pos + 1},
                                    {3, p.k}})
                      : make_class({{1, p.L - p.k},
                                    {2, Nv - p.L - pos + 1},
                                    {3, p.k - 1}});
        right_cls = class_middle(p.n, p.a);
        shift = gt ? p.k + static_cast<long long>(p.L) * (pos - 1)
                   : static_cast<long long>(p.L) * (pos - 1);
      }
      std::set<std::pair<Word, Word>> image;
      unsigned long long domain_size = 0;
      std::vector<QPoly::Coeff> acc;
      if (dom)
        for_each_word(
            *dom,
            [&](const Word& w) {
              WordClass want = gt ? WordClass::greater : WordClass::less_eq;
              if (classify(w, p.n) != want) return;
              if (reduce) {
                Position at = Position::at(pos);
                if ((gt ? p_one(w, p.n) : p_top(w, p.n)) != at) return;
              }
              ++domain_size;
              auto c = static_cast<std::size_t>(coinv(w));
              if (acc.size() <= c) acc.resize(c + 1, 0);
              ++acc[c];
              pipe::PipelineResult out =
                  reduce
                      ? (gt ? pipe::general_reduce_gt(w, p.n, pos)
                            : pipe::general_reduce_le(w, p.n, pos))
                      : (gt ? pipe::general_factor_gt(w, p.n)
                            : pipe::general_factor_le(w, p.n));
              if (out.target.shift != shift || !left_cls ||
                  !left_cls->matches(out.target.left) || !right_cls ||
                  !right_cls->matches(out.target.right))
                ctx.mismatch(w, "pair in the declared shifted product",
                             out.target.str());
              if (out.target.weight() != coinv(w))
                ctx.mismatch(w, "weight " + std::to_string(coinv(w)),
                             std::to_string(out.target.weight()));
              Word back =
                  reduce
                      ? (gt ? pipe::general_reduce_gt_inv(out.target, p.n,
                                                          p.k, pos)
                            : pipe::general_reduce_le_inv(out.target, p.n,
                                                          p.k, pos))
                      : (gt ? pipe::general_factor_gt_inv(out.target, p.n,
                                                          p.k)
                            : pipe::general_factor_le_inv(out.target, p.n,
                                                          p.k));
              if (back != w) ctx.mismatch(w, w.str(), back.str());
              image.insert({out.target.left, out.target.right});
            },
            cap);
      r.lhs = QPoly(std::move(acc));
      r.rhs = (detail::gf_opt(left_cls, cap) * detail::gf_opt(right_cls, cap))
                  .shifted(shift);
      unsigned long long codomain =
          detail::size_opt(left_cls, cap) * detail::size_opt(right_cls, cap);
      if (image.size() != domain_size || codomain != domain_size)
        r.note = "not a bijection onto the product";
    });
  }

  if (which == "shift_up") {
    int n = p.n >= 3 ? p.n : 3;
    std::vector<int> a = p.a;
    if (n == 3 && a.empty()) {
      need(p.N >= 1 && p.L >= 1 && p.L <= p.N, who + " needs N and L");
      a = {p.N - p.L};
    }
    need(static_cast<int>(a.size()) == n - 2, who + " needs a_2..a_{n-1}");
    need(p.L >= 1 && p.k >= 0 && p.k < p.L, who + " needs 0 <= k < L");
    return run([&](detail::BijContext& ctx, Report& r) {
      auto dom = class_w(n, p.L, p.k, a);
      auto up_cls = class_w(n, p.L, p.k + 1, a);
      std::set<Word> image;
      std::vector<QPoly::Coeff> acc;
      if (dom)
        for_each_word(
            *dom,
            [&](const Word& w) {
              if (classify(w, n) != WordClass::greater) return;
              auto c = static_cast<std::size_t>(coinv(w));
              if (acc.size() <= c) acc.resize(c + 1, 0);
              ++acc[c];
              pipe::ShiftResult out = pipe::shift_up(w, n);
              if (out.k != p.k || classify(out.word, n) != WordClass::less_eq)
                ctx.mismatch(w, "image in the less-or-equal class one level up",
                             out.word.str());
              if (coinv(w) - coinv(out.word) != p.k)
                ctx.mismatch(w, "weight drop " + std::to_string(p.k),
                             std::to_string(coinv(w) - coinv(out.word)));
              pipe::ShiftResult back = pipe::shift_down(out.word, n);
              if (back.word != w) ctx.mismatch(w, w.str(), back.word.str());
              pipe::ShiftResult composed = pipe::shift_up_composed(w, n);
              if (composed.word != out.word)
                ctx.mismatch(w, out.word.str(), composed.word.str());
              image.insert(out.word);
            },
            cap);
      r.lhs = QPoly(std::move(acc));
      std::set<Word> codomain;
      std::vector<QPoly::Coeff> up_acc;
      if (up_cls)
        for_each_word(
            *up_cls,
            [&](const Word& w) {
              if (classify(w, n) != WordClass::less_eq) return;
              codomain.insert(w);
              auto c = static_cast<std::size_t>(coinv(w));
              if (up_acc.size() <= c) up_acc.resize(c + 1, 0);
              ++up_acc[c];
            },
            cap);
      r.rhs = QPoly(std::move(up_acc)).shifted(p.k);
      if (image != codomain)
        r.note = "image differs from the less-or-equal class one level up";
    });
  }

  throw std::invalid_argument("check_bijection: unknown map '" + who + "'");
}

// ---------------------------------------------------------------------------
// Sweep: every identity and bijection check over every valid parameter tuple
// within the bounds, in a fixed deterministic order.
// ---------------------------------------------------------------------------

struct SweepBounds {
  int max_n = 3;        // alphabet bound for the general identities
  int max_N = 6;        // word-length bound for identities
  int max_len = 8;      // word-length bound for bijection checks
  int max_a_sum = 3;    // bound on the middle-letter total for n >= 4
  unsigned long long cap = default_cap;
};

namespace detail {

template <class Fn>
void compositions(int parts, int total_max, Fn&& fn) {
  std::vector<int> a(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int idx, int remaining) {
    if (idx == parts) {
      fn(a);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      a[static_cast<std::size_t>(idx)] = v;
      rec(idx + 1, remaining - v);
    }
  };
  rec(0, total_max);
}

}  // namespace detail

inline std::vector<Report> sweep_identities(const SweepBounds& b) {
  std::vector<Report> out;
  auto add = [&](IdentityId id, const Params& p) {
    out.push_back(check_identity(id, p));
  };

  // letter-frequency identities over three letters
  detail::compositions(3, b.max_N, [&](const std::vector<int>& f) {
    if (f[0] + f[1] + f[2] == 0) return;
    Params p;
    p.freqs = {0, f[0], f[1], f[2]};
    p.cap = b.cap;
    add(IdentityId::EQ1, p);
    add(IdentityId::MULTINOM_SYM, p);
  });

  for (int A = 0; A <= b.max_N - 1; ++A)
    for (int B = 1; B <= A + 1; ++B) {
      Params p;
      p.A = A;
      p.B = B;
      p.cap = b.cap;
      add(IdentityId::PROP_FG_SUM, p);
    }

  detail::compositions(3, b.max_N, [&](const std::vector<int>& f) {
    if (f[0] + f[1] + f[2] == 0) return;
    Params p;
    p.A = f[0];
    p.B = f[1];
    p.C = f[2];
    p.cap = b.cap;
    add(IdentityId::PROP_H_FACTOR, p);
    add(IdentityId::PROP_K_SYM, p);
  });

  for (int N = 1; N <= b.max_N; ++N)
    for (int L = 1; L <= N; ++L) {
      for (int i = 1; i <= N - L + 1; ++i) {
        Params p;
        p.N = N;
        p.L = L;
        p.i = i;
        p.cap = b.cap;
        add(IdentityId::T2B, p);
      }
      for (int j = 1; j <= N - L + 1; ++j) {
        Params p;
        p.N = N;
        p.L = L;
        p.j = j;
        p.cap = b.cap;
        add(IdentityId::T2C, p);
      }
      for (int k = 1; k < L; ++k)
        for (int i = 1; i <= N - L + 1; ++i)
          for (int j = 1; j <= N - k + 1; ++j) {
            Params p;
            p.N = N;
            p.L = L;
            p.k = k;
            p.i = i;
            p.j = j;
            p.cap = b.cap;
            add(IdentityId::T2A, p);
          }
      for (int k = 0; k <= L; ++k) {
        Params p;
        p.N = N;
        p.L = L;
        p.k = k;
        p.cap = b.cap;
        add(IdentityId::E91P, p);
        add(IdentityId::E92P, p);
        for (int i = 1; i <= N - L + 1; ++i) {
          Params pi = p;
          pi.i = i;
          add(IdentityId::E93P, pi);
        }
        for (int j = 1; j <= N - k + 1; ++j) {
          Params pj = p;
          pj.j = j;
          add(IdentityId::E94P, pj);
        }
        if (k < L) add(IdentityId::TRUE_GOAL, p);
      }
    }

  for (int n = 4; n <= b.max_n; ++n)
    detail::compositions(n - 2, b.max_a_sum, [&](const std::vector<int>& a) {
      int asum = 0;
      for (int v : a) asum += v;
      for (int L = 1; L + asum <= b.max_N; ++L) {
        int N = L + asum;
        for (int k = 0; k <= L; ++k) {
          Params p;
          p.n = n;
          p.N = N;
          p.L = L;
          p.k = k;
          p.a = a;
          p.cap = b.cap;
          add(IdentityId::E91, p);
          add(IdentityId::E92, p);
          for (int i = 1; i <= N - L + 1; ++i) {
            Params pi = p;
            pi.i = i;
            add(IdentityId::E93, pi);
          }
          for (int j = 1; j <= N - k + 1; ++j) {
            Params pj = p;
            pj.j = j;
            add(IdentityId::E94, pj);
          }
          if (k < L) add(IdentityId::TRUE_GOAL, p);
        }
      }
    });

  return out;
}

inline std::vector<Report> sweep_bijections(const SweepBounds& b) {
  std::vector<Report> out;
  const int len = std::min(b.max_len, b.max_N);
  auto add = [&](std::string_view which, const Params& p) {
    out.push_back(check_bijection(which, p));
  };

  for (int A = 0; A <= len - 1; ++A)
    for (int B = 1; B <= A + 1; ++B) {
      Params p;
      p.A = A;
      p.B = B;
      p.cap = b.cap;
      add("strip_head", p);
      add("strip_tail", p);
    }

  detail::compositions(3, len, [&](const std::vector<int>& f) {
    if (f[0] + f[1] + f[2] == 0) return;
    Params p;
    p.A = f[0];
    p.B = f[1];
    p.C = f[2];
    p.cap = b.cap;
    add("split_threes", p);
    add("swap_adjacent", p);
  });

  for (int N = 1; N <= len; ++N)
    for (int L = 1; L <= N; ++L) {
      for (int i = 1; i <= N - L + 1; ++i) {
        Params p;
        p.N = N;
        p.L = L;
        p.i = i;
        p.cap = b.cap;
        add("assemble_no3", p);
      }
      for (int j = 1; j <= N - L + 1; ++j) {
        Params p;
        p.N = N;
        p.L = L;
        p.j = j;
        p.cap = b.cap;
        add("assemble_no1", p);
      }
      for (int k = 1; k < L; ++k)
        for (int i = 1; i <= N - L + 1; ++i)
          for (int j = 1; j <= N - k + 1; ++j) {
            Params p;
            p.N = N;
            p.L = L;
            p.k = k;
            p.i = i;
            p.j = j;
            p.cap = b.cap;
            add("assemble", p);
          }
      for (int k = 0; k <= L; ++k) {
        Params p;
        p.N = N;
        p.L = L;
        p.k = k;
        p.a = {N - L};
        p.n = 3;
        p.cap = b.cap;
        add("collapse_middle", p);
        if (k < L) {
          for (int i = 1; i <= N - L + 1; ++i) {
            Params pi = p;
            pi.i = i;
            add("reduce_gt", pi);
          }
          add("factor_gt", p);
          add("shift_up", p);
        }
        if (k > 0) {
          for (int j = 1; j <= N - k + 1; ++j) {
            Params pj = p;
            pj.j = j;
            add("reduce_le", pj);
          }
          add("factor_le", p);
        }
      }
      {
        Params p;
        p.N = N;
        p.L = L;
        p.a = {N - L};
        p.n = 3;
        p.cap = b.cap;
        add("merge_middle", p);
      }
    }

  for (int n = 4; n <= b.max_n; ++n)
    detail::compositions(n - 2, b.max_a_sum, [&](const std::vector<int>& a) {
      int asum = 0;
      for (int v : a) asum += v;
      for (int L = 1; L + asum <= len; ++L) {
        int N = L + asum;
        for (int k = 0; k <= L; ++k) {
          Params p;
          p.n = n;
          p.N = N;
          p.L = L;
          p.k = k;
          p.a = a;
          p.cap = b.cap;
          add("collapse_middle", p);
          if (k < L) {
            add("general_factor_gt", p);
            add("shift_up", p);
            for (int i = 1; i <= N - L + 1; ++i) {
              Params pi = p;
              pi.i = i;
              add("general_reduce_gt", pi);
            }
          }
          if (k > 0) {
            add("general_factor_le", p);
            for (int j = 1; j <= N - k + 1; ++j) {
              Params pj = p;
              pj.j = j;
              add("general_reduce_le", pj);
            }
          }
        }
        Params p;
        p.n = n;
        p.N = N;
        p.L = L;
        p.a = a;
        p.cap = b.cap;
        add("merge_middle", p);
      }
    });

  return out;
}

inline std::vector<Report> sweep(const SweepBounds& b) {
  std::vector<Report> out = sweep_identities(b);
  std::vector<Report> bij = sweep_bijections(b);
  out.insert(out.end(), std::make_move_iterator(bij.begin()),
             std::make_move_iterator(bij.end()));
  return out;
}

inline bool all_pass(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace qcoinv::verify
