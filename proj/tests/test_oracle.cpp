#include "cyclicp/errors.hpp"
#include "cyclicp/oracle.hpp"
#include "doctest.h"

using namespace cyclicp;

namespace {

const ParamVector kI0{3, 2, 3, 2, 0, 1, 1, 1, 1, 1};

void require_all_pass(const std::vector<IdentityCheck>& checks, const std::string& where) {
  for (const auto& c : checks) {
    INFO(where << " " << c.name << " " << c.counterexample);
    REQUIRE(c.pass);
    REQUIRE(c.checks > 0);
  }
}

}  // namespace

TEST_CASE("single rewriting steps") {
  auto g = make_group(kI0);
  CHECK(collect(*g, {{Gen::b2, 1}, {Gen::b1, 1}}) == Element{1, 1, 1});
  CHECK(collect(*g, {{Gen::a, 1}, {Gen::b1, 1}}) == Element{1, 0, g->r1() % 9});
  CHECK(collect(*g, {{Gen::a, 1}, {Gen::b2, 1}}) == Element{0, 1, 4});
  CHECK(collect(*g, {{Gen::b2, 9}}) == Element{0, 0, 3});
  CHECK(collect(*g, {{Gen::b1, 27}}) == Element{0, 0, 3});
  CHECK(collect(*g, {{Gen::a, 9}}) == g->identity());
  CHECK(collect(*g, {{Gen::b1, -1}, {Gen::b1, 1}}) == g->identity());
  CHECK(collect(*g, {{Gen::b2, 1}, {Gen::b1, 1}}, Strategy::right_to_left) == Element{1, 1, 1});
  Word long_word(kMaxWordLength + 1, Letter{Gen::a, 1});
  CHECK_THROWS_AS(collect(*g, long_word), CapExceeded);
}

TEST_CASE("collector agrees with el_mul on small groups") {
  OracleOptions opt;
  opt.samples = 2000;
  for (i64 p : {3, 5}) {
    for (const auto& v : enumerate_vectors(p, p == 3 ? 729 : 625)) {
      require_all_pass(verify_collector(*make_group(v), opt), to_string(v));
    }
  }
}

TEST_CASE("closed forms on small groups") {
  OracleOptions opt;
  opt.exhaustive_order = 81;
  opt.samples = 1000;
  for (const auto& v : enumerate_vectors(3, 729)) {
    require_all_pass(verify_closed_forms(*make_group(v), opt), to_string(v));
  }
  for (const auto& v : enumerate_vectors(5, 625)) {
    require_all_pass(verify_closed_forms(*make_group(v), opt), to_string(v));
  }
}

TEST_CASE("closed forms and collector on raw quotients") {
  OracleOptions opt;
  opt.samples = 500;
  auto g = make_group(kI0);
  RawPresentation raw = g->raw();
  raw.m = 1;
  raw.r1 %= 3;
  raw.r2 %= 3;
  raw.w1 %= 3;
  raw.w2 %= 3;
  auto q = make_group(raw);
  require_all_pass(verify_collector(*q, opt), "quotient");
  require_all_pass(verify_closed_forms(*q, opt), "quotient");
}

TEST_CASE("a tampered presentation is caught") {
  // Same data but el_mul's tables are not involved in collect; breaking a
  // relation on the raw side must show up as a disagreement.
  auto good = make_group(kI0);
  RawPresentation raw = good->raw();
  raw.w1 = 0;  // b1^27 = 1 instead of a^3; still a consistent group
  auto other = make_group(raw);
  bool differs = false;
  for (i64 x = 0; x < 27 && !differs; ++x) {
    const Element g{x, 1, 0};
    differs = el_mul(*good, g, good->b1()) != collect(*other, word_of(g) + Word{{Gen::b1, 1}});
  }
  CHECK(differs);
}
