#include <doctest.h>

#include <stdexcept>
#include <string>

#include "qcoinv/verify.hpp"

using namespace qcoinv;
using namespace qcoinv::verify;

TEST_CASE("identity names round trip") {
  for (const auto& [id, n] : identity_names()) {
    auto back = identity_from(n);
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK(!identity_from("NOPE").has_value());
}

TEST_CASE("check_identity E91P at the smallest size") {
  Params p;
  p.N = 2;
  p.L = 1;
  p.k = 0;
  Report r = check_identity(IdentityId::E91P, p);
  CHECK(r.pass);
  CHECK(r.lhs == QPoly(std::vector<QPoly::Coeff>{1, 1}));
  CHECK(r.rhs == r.lhs);
}

TEST_CASE("check_identity E92P degenerate zero case") {
  Params p;
  p.N = 2;
  p.L = 1;
  p.k = 0;
  Report r = check_identity(IdentityId::E92P, p);
  CHECK(r.pass);
  CHECK(r.lhs.is_zero());
  CHECK(r.rhs.is_zero());
}

TEST_CASE("check_identity T2A on the published instance") {
  Params p;
  p.N = 13;
  p.L = 6;
  p.k = 4;
  p.i = 5;
  p.j = 3;
  Report r = check_identity(IdentityId::T2A, p);
  CHECK(r.pass);
  CHECK(r.lhs.at(31) > 0);  // the worked example word weighs in at q^31
  CHECK(r.counterexamples.empty());
}

TEST_CASE("check_identity validates parameters") {
  Params p;
  p.N = 4;
  p.L = 2;
  p.k = 3;
  CHECK_THROWS_AS(check_identity(IdentityId::E91P, p), std::invalid_argument);
  CHECK_THROWS_AS(check_identity(IdentityId::EQ1, Params{}),
                  std::invalid_argument);
}

TEST_CASE("cap errors become failed reports with a reason") {
  Params p;
  p.freqs = {0, 9, 9, 9};
  p.cap = 10;
  Report r = check_identity(IdentityId::EQ1, p);
  CHECK(!r.pass);
  CHECK(r.note.find("cap") != std::string::npos);
}

TEST_CASE("check_bijection swap_adjacent on six words") {
  Params p;
  p.A = 1;
  p.B = 1;
  p.C = 1;
  Report r = check_bijection("swap_adjacent", p);
  CHECK(r.pass);
  CHECK(r.lhs.value_at_one() == 6);
}

TEST_CASE("check_bijection shift_up across every k") {
  for (int k = 0; k < 3; ++k) {
    Params p;
    p.N = 5;
    p.L = 3;
    p.k = k;
    Report r = check_bijection("shift_up", p);
    CHECK(r.pass);
  }
}

TEST_CASE("check_bijection assemble passes vacuously beyond the j range") {
  Params p;
  p.N = 5;
  p.L = 3;
  p.k = 1;
  p.i = 1;
  p.j = 6;  // mask class has a negative count: empty domain
  Report r = check_bijection("assemble", p);
  CHECK(r.pass);
  CHECK(r.lhs.is_zero());
}

TEST_CASE("sweep reports are deterministic") {
  SweepBounds b;
  b.max_n = 3;
  b.max_N = 4;
  b.max_len = 4;
  auto first = sweep(b);
  auto second = sweep(b);
  REQUIRE(first.size() == second.size());
  for (std::size_t t = 0; t < first.size(); ++t)
    CHECK(first[t].to_json(false).dump() == second[t].to_json(false).dump());
  CHECK(all_pass(first));
}

TEST_CASE("sweep with no room yields no reports") {
  SweepBounds b;
  b.max_n = 3;
  b.max_N = 0;
  CHECK(sweep(b).empty());
}

TEST_CASE("sweep covers the advertised identities") {
  SweepBounds b;
  b.max_n = 4;
  b.max_N = 4;
  b.max_len = 4;
  b.max_a_sum = 2;
  auto reports = sweep(b);
  CHECK(all_pass(reports));
  for (const char* want :
       {"EQ1", "MULTINOM_SYM", "PROP_FG_SUM", "PROP_H_FACTOR", "PROP_K_SYM",
        "T2A", "T2B", "T2C", "E91P", "E92P", "E93P", "E94P", "E91", "E92",
        "E93", "E94", "TRUE_GOAL", "strip_head", "assemble", "shift_up",
        "general_factor_gt"}) {
    bool found = false;
    for (const auto& r : reports) found = found || r.identity == want;
    CHECK_MESSAGE(found, "missing ", want);
  }
}

TEST_CASE("fault injection makes the sweep fail") {
  SweepBounds b;
  b.max_n = 3;
  b.max_N = 4;
  b.max_len = 4;
  fault::active() = fault::Step::swap_adjacent;
  auto reports = sweep(b);
  fault::active() = fault::Step::none;
  CHECK(!all_pass(reports));
  bool with_counterexample = false;
  for (const auto& r : reports)
    with_counterexample = with_counterexample || !r.counterexamples.empty();
  CHECK(with_counterexample);
}

TEST_CASE("report json follows the documented schema") {
  Params p;
  p.N = 3;
  p.L = 2;
  p.k = 1;
  Report r = check_identity(IdentityId::E91P, p);
  auto j = r.to_json();
  for (const char* key :
       {"identity", "params", "lhs", "rhs", "verdict", "counterexamples"})
    CHECK(j.contains(key));
  CHECK(j["verdict"] == "pass");
  CHECK(j["params"]["N"] == 3);
  auto no_elapsed = r.to_json(false);
  CHECK(!no_elapsed.contains("elapsed_seconds"));
}
