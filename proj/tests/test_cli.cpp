#include <sstream>

#include "cyclicp/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cyclicp;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclicp");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

const std::string kI0 = "[3,2,3,2,0,1,1,1,1,1]";
const std::string kI0u2 = "[3,2,3,2,0,1,1,1,2,1]";
const std::string kHeis = "[3,1,1,1,0,0,0,0,1,1]";

}  // namespace

TEST_CASE("validate") {
  Run r = run({"validate", "--vector", kI0});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(0)["valid"] == true);

  r = run({"validate", "--vector", "[3,2,3,2,0,1,1,1,3,1]"});
  CHECK(r.code == 1);
  const json j = lines(r.out).at(0);
  CHECK(j["valid"] == false);
  CHECK(std::find(j["violated"].begin(), j["violated"].end(), "2") != j["violated"].end());

  r = run({"validate", "--vector",
           R"({"p":3,"m":2,"n1":3,"n2":2,"o1":0,"o2":1,"o1p":1,"o2p":1,"u1":1,"u2":1})"});
  CHECK(r.code == 0);

  CHECK(run({"validate", "--vector", "[3,2,3"}).code == 2);
  CHECK(run({"validate", "--vector", "[3,2,3]"}).code == 2);
  CHECK(run({"validate", "--vector", R"({"p":3})"}).code == 2);
  CHECK(run({"validate"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("describe") {
  Run r = run({"describe", "--vector", kI0});
  REQUIRE(r.code == 0);
  const json j = lines(r.out).at(0);
  CHECK(j["big_o"] == json::array({1, 3, -81, -27}));
  CHECK(j["type_invariants"] == json::array({4, 2, 1}));
  CHECK(j["centralizer_presentation"]["verified"] == true);
  CHECK(j["quotient_chain"].size() == 2);
  CHECK(j["version"] == kToolVersion);
  CHECK(j.contains("config"));

  r = run({"describe", "--vector", kHeis});
  REQUIRE(r.code == 0);
  const json h = lines(r.out).at(0)["fingerprint"]["report"];
  CHECK(h["class"] == 2);
  CHECK(h["exponent"] == 3);

  CHECK(run({"describe", "--vector", "[3,2,3,2,0,1,1,1,3,1]"}).code == 1);
  CHECK(run({"describe", "--vector", "[3,3,5,2,2,1,1,2,1,1]"}).code == 3);
  CHECK(run({"--group-cap", "729", "describe", "--vector", kI0}).code == 3);
}

TEST_CASE("enumerate") {
  Run r = run({"enumerate", "--p", "3", "--max-order", "27"});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() >= 2);
  CHECK(ls.back()["count"] == ls.size() - 1);
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    const json& v = ls[i]["vector"];
    CHECK(v[1] == 1);
    CHECK(v[2] == 1);
    CHECK(v[3] == 1);
  }

  r = run({"enumerate", "--p", "3", "--max-order", "2187"});
  REQUIRE(r.code == 0);
  ls = lines(r.out);
  ls.pop_back();
  bool u1 = false, u2 = false;
  for (const json& l : ls) {
    if (l["vector"] == json::parse(kI0)) u1 = true;
    if (l["vector"] == json::parse(kI0u2)) u2 = true;
    CHECK(run({"validate", "--vector", l["vector"].dump()}).code == 0);
  }
  CHECK(u1);
  CHECK(u2);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    CHECK(ls[i - 1]["vector"].get<std::vector<i64>>() < ls[i]["vector"].get<std::vector<i64>>());
  }

  CHECK(run({"enumerate", "--p", "4", "--max-order", "27"}).code == 2);
  CHECK(run({"enumerate", "--p", "2", "--max-order", "27"}).code == 2);
}

TEST_CASE("verify") {
  const std::vector<std::string> args = {"--identity-samples", "200", "--collector-samples", "500",
                                         "verify", "--p", "3", "--max-order", "243"};
  const Run a = run(args);
  CHECK(a.code == 0);
  const json summary = lines(a.out).back();
  CHECK(summary["pass"] == true);
  CHECK(summary["failures"].empty());
  CHECK(summary["suites"].size() == kSuiteNames.size());

  const Run b = run(args);
  CHECK(a.out == b.out);

  const Run f = run({"verify", "--p", "3", "--max-order", "81", "--suites", "invariants", "--inject-fault"});
  CHECK(f.code == 1);
  const json fs = lines(f.out).back();
  CHECK(fs["pass"] == false);
  REQUIRE_FALSE(fs["failures"].empty());
  CHECK(fs["failures"][0]["check"] == "delta");
  CHECK_FALSE(fs["failures"][0]["locus"].get<std::string>().empty());

  CHECK(run({"verify", "--p", "3", "--max-order", "81", "--suites", "bogus"}).code == 2);
}

TEST_CASE("compare") {
  Run r = run({"compare", "--vector", kI0, "--vector", kI0u2});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).at(0)["verdict"] == "indistinguishable by computed invariants");

  r = run({"compare", "--vector", kI0, "--vector", kI0});
  CHECK(lines(r.out).at(0)["verdict"] == "identical");

  const std::string sibling = "[3,2,3,2,1,0,1,1,1,1]";
  REQUIRE(run({"validate", "--vector", sibling}).code == 0);
  r = run({"compare", "--vector", kI0, "--vector", sibling});
  const json j = lines(r.out).at(0);
  CHECK(j["verdict"] == "distinguished");
  CHECK_FALSE(j["first_difference"].get<std::string>().empty());

  CHECK(run({"compare", "--vector", kI0}).code == 2);
}
