#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcoinv/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = qcoinv::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("coinv subcommand") {
  auto r = run({"coinv", "231132"});
  CHECK(r.status == 0);
  CHECK(r.out == "6\n");
}

TEST_CASE("stats subcommand") {
  auto r = run({"stats", "3112443214243", "--n", "4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("coinv: 39") != std::string::npos);
  CHECK(r.out.find("p_1: 3") != std::string::npos);
  CHECK(r.out.find("p_4: 5") != std::string::npos);
  CHECK(r.out.find("k: 4") != std::string::npos);
  CHECK(r.out.find("L: 7") != std::string::npos);
  CHECK(r.out.find("N: 13") != std::string::npos);
  CHECK(r.out.find("class: >") != std::string::npos);

  auto d = run({"stats", "3112443214243"});  // top letter defaults to 4
  CHECK(d.out == r.out);
}

TEST_CASE("qbin and qmulti subcommands") {
  CHECK(run({"qbin", "4", "0"}).out == "1\n");
  CHECK(run({"qbin", "4", "2"}).out == "1 + q + 2*q^2 + q^3 + q^4\n");
  CHECK(run({"qbin", "5", "-1"}).out == "0\n");
  CHECK(run({"qmulti", "3", "1,1,1"}).out == "1 + 2*q + 2*q^2 + q^3\n");
  CHECK(run({"qmulti", "4", "2,-1,3"}).out == "0\n");
  auto bad = run({"qmulti", "4", "1,1,1"});
  CHECK(bad.status == 2);
}

TEST_CASE("enumerate subcommand") {
  auto r = run({"enumerate", "--freqs", "0,2,1"});
  CHECK(r.status == 0);
  CHECK(r.out == "112\n121\n211\ngf: 1 + q + q^2\n");

  auto filtered = run({"enumerate", "--freqs", "0,1,1,1", "--pred", "pn=1"});
  CHECK(filtered.status == 0);
  CHECK(filtered.out == "312\n321\ngf: 1 + q\n");

  auto classed =
      run({"enumerate", "--freqs", "0,1,1,1", "--pred", "class=le"});
  CHECK(classed.status == 0);
  CHECK(classed.out.find("gf: ") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  auto r = run({"verify", "--identity", "E91P", "--N", "2", "--L", "1",
                "--k", "0"});
  CHECK(r.status == 0);
  CHECK(r.out.find("pass") != std::string::npos);

  auto j = run({"verify", "--identity", "E91P", "--N", "2", "--L", "1",
                "--k", "0", "--json"});
  CHECK(j.status == 0);
  json doc = json::parse(j.out);
  CHECK(doc["verdict"] == "pass");
  CHECK(doc["lhs"] == json::array({1, 1}));

  auto unknown = run({"verify", "--identity", "BOGUS"});
  CHECK(unknown.status == 2);

  auto general = run({"verify", "--identity", "E91", "--n", "4", "--L", "2",
                      "--k", "1", "--a", "1,1"});
  CHECK(general.status == 0);
}

TEST_CASE("sweep subcommand") {
  auto r = run({"sweep", "--max-n", "3", "--max-N", "3"});
  CHECK(r.status == 0);
  CHECK(r.out.find("checks passed") != std::string::npos);

  auto j = run({"sweep", "--max-n", "3", "--max-N", "2", "--json"});
  CHECK(j.status == 0);
  json doc = json::parse(j.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["total"] == doc["reports"].size());
}

TEST_CASE("trace subcommand forward and back") {
  auto r = run({"trace", "--word", "3112443214243", "--n", "4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("final: 3141442324243·q^4  (coinv 35, k = 4)") !=
        std::string::npos);

  auto j = run({"trace", "--word", "3112443214243", "--n", "4", "--json"});
  json doc = json::parse(j.out);
  CHECK(doc["output"] == "3141442324243");
  CHECK(doc["k"] == 4);
  CHECK(doc["output_coinv"] == 35);
  CHECK(doc["initial_weight"] == 39);
  CHECK(doc["final_weight"] == 39);

  auto back = run({"trace", "--word", doc["output"].get<std::string>(),
                   "--n", "4", "--inverse", "--json"});
  CHECK(back.status == 0);
  json bdoc = json::parse(back.out);
  CHECK(bdoc["output"] == "3112443214243");

  // round trip across every word of a small class
  for (const auto& w : qcoinv::enumerate(*qcoinv::class_x(5, 3, 1))) {
    if (qcoinv::classify(w, 3) != qcoinv::WordClass::greater) continue;
    auto fwd = run({"trace", "--word", w.str(), "--n", "3", "--json"});
    REQUIRE(fwd.status == 0);
    json f = json::parse(fwd.out);
    auto inv = run({"trace", "--word", f["output"].get<std::string>(), "--n",
                    "3", "--inverse", "--json"});
    REQUIRE(inv.status == 0);
    CHECK(json::parse(inv.out)["output"] == w.str());
  }
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({"bogus"}).status == 2);
  CHECK(run({"coinv"}).status == 2);
  CHECK(run({"coinv", "12a"}).status == 2);
  CHECK(run({"trace", "--word", "1212", "--n", "3", "--inverse"}).status ==
        2);  // greater-class word cannot be shifted down
  CHECK(run({}).status == 2);
}

TEST_CASE("help exits cleanly") {
  auto r = run({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}
